"""Software z-buffer renderer.

Pure-numpy rasterizer: perspective projection, near-plane clipping,
per-triangle edge-function fill with an inverse-depth buffer, flat Lambert
shading, and the seeded 2D overlays (rain, snow) used for weather effects.
Everything is deterministic — same inputs, bit-identical output arrays.

Camera convention: world is y-up right-handed, camera space looks along -z
with x right and y up. Inverse depth (1 / -z_cam) is linear in screen space,
so depth interpolation across a triangle is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

WORLD_UP = np.array([0.0, 1.0, 0.0])


@dataclass(frozen=True)
class Camera:
    """Pinhole camera: rotation rows map world axes into camera axes."""

    rotation: np.ndarray  # (3, 3) world -> camera
    eye: np.ndarray       # (3,) world position
    width: int
    height: int
    fov_deg: float = 40.0
    near: float = 0.05

    @property
    def focal_px(self) -> float:
        return 0.5 * self.height / np.tan(np.deg2rad(self.fov_deg) / 2.0)

    def to_camera(self, points: np.ndarray) -> np.ndarray:
        return (points - self.eye) @ self.rotation.T

    def project(self, cam_points: np.ndarray) -> np.ndarray:
        """(N, 3) cam-space -> (N, 3) of (px, py, invz). Caller must ensure
        points are in front of the near plane."""
        invz = 1.0 / (-cam_points[:, 2])
        px = 0.5 * self.width + self.focal_px * cam_points[:, 0] * invz
        py = 0.5 * self.height - self.focal_px * cam_points[:, 1] * invz
        return np.stack([px, py, invz], axis=1)


def look_at_camera(eye: Sequence[float], target: Sequence[float],
                   width: int, height: int, fov_deg: float = 40.0,
                   roll_deg: float = 0.0, near: float = 0.05) -> Camera:
    eye = np.asarray(eye, dtype=np.float64)
    target = np.asarray(target, dtype=np.float64)
    fwd = target - eye
    norm = np.linalg.norm(fwd)
    if norm < 1e-9:
        raise ValueError("camera eye coincides with target")
    fwd = fwd / norm
    up_hint = WORLD_UP
    if abs(float(fwd @ up_hint)) > 0.999:
        up_hint = np.array([0.0, 0.0, -1.0])  # straight-down views
    right = np.cross(fwd, up_hint)
    right /= np.linalg.norm(right)
    up = np.cross(right, fwd)
    if abs(roll_deg) > 1e-12:
        t = np.deg2rad(roll_deg)
        c, s = np.cos(t), np.sin(t)
        right, up = c * right + s * up, -s * right + c * up
    rotation = np.stack([right, up, -fwd])
    return Camera(rotation=rotation, eye=eye, width=width, height=height,
                  fov_deg=fov_deg, near=near)


def orbit_camera(target: Sequence[float], distance: float, yaw_deg: float,
                 pitch_deg: float, roll_deg: float, width: int, height: int,
                 fov_deg: float = 40.0, near: float = 0.05) -> Camera:
    """Camera on a sphere around ``target``. Yaw 0 puts the camera on +z
    looking back at the object's front; yaw 90 on +x (the object's left).
    Pitch is the elevation of the viewing direction: -90 looks straight down.
    """
    yaw = np.deg2rad(yaw_deg)
    pitch = np.deg2rad(pitch_deg)
    target = np.asarray(target, dtype=np.float64)
    offset = np.array([np.sin(yaw) * np.cos(pitch), -np.sin(pitch),
                       np.cos(yaw) * np.cos(pitch)])
    return look_at_camera(target + distance * offset, target, width, height,
                          fov_deg=fov_deg, roll_deg=roll_deg, near=near)


@dataclass(frozen=True)
class RasterResult:
    """invz: inverse depth per pixel (0 where empty, larger = closer);
    tri_index: index of the winning input face (-1 where empty)."""

    invz: np.ndarray
    tri_index: np.ndarray

    def coverage(self) -> np.ndarray:
        return self.tri_index >= 0


def _clip_near(tri: np.ndarray, near: float) -> list[np.ndarray]:
    """Clip one cam-space triangle (3, 3) against the near plane -z >= near.
    Returns 0-2 triangles."""
    depth = -tri[:, 2]
    inside = depth >= near
    n_in = int(inside.sum())
    if n_in == 0:
        return []
    if n_in == 3:
        return [tri]

    def cut(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        t = (-near - a[2]) / (b[2] - a[2])
        return a + t * (b - a)

    idx = np.arange(3)
    if n_in == 1:
        (a,) = idx[inside]
        b, c = idx[~inside]
        return [np.stack([tri[a], cut(tri[a], tri[b]), cut(tri[a], tri[c])])]
    (c,) = idx[~inside]
    a, b = idx[inside]
    pb = cut(tri[b], tri[c])
    pa = cut(tri[a], tri[c])
    return [np.stack([tri[a], tri[b], pb]), np.stack([tri[a], pb, pa])]


def rasterize(camera: Camera, vertices: np.ndarray,
              faces: np.ndarray) -> RasterResult:
    """Fill triangles into an inverse-depth buffer. Triangles are two-sided
    (no backface culling); ties go to the earlier face."""
    h, w = camera.height, camera.width
    invz_buf = np.zeros((h, w), dtype=np.float64)
    idx_buf = np.full((h, w), -1, dtype=np.int32)
    if len(faces) == 0:
        return RasterResult(invz_buf, idx_buf)

    cam = camera.to_camera(np.asarray(vertices, dtype=np.float64))
    tris_cam = cam[faces]  # (M, 3, 3)
    depth = -tris_cam[:, :, 2]
    inside = depth >= camera.near
    n_in = inside.sum(axis=1)

    keep = n_in == 3
    screen_list = [camera.project(tris_cam[keep].reshape(-1, 3)).reshape(-1, 3, 3)]
    ids_list = [np.nonzero(keep)[0].astype(np.int32)]
    for fi in np.nonzero((n_in > 0) & (n_in < 3))[0]:
        for piece in _clip_near(tris_cam[fi], camera.near):
            screen_list.append(camera.project(piece)[None])
            ids_list.append(np.array([fi], dtype=np.int32))
    screen = np.concatenate(screen_list, axis=0)
    ids = np.concatenate(ids_list)

    xs, ys, izs = screen[:, :, 0], screen[:, :, 1], screen[:, :, 2]
    # pixel centers sit at integer + 0.5
    x0 = np.clip(np.ceil(xs.min(axis=1) - 0.5).astype(np.int64), 0, w - 1)
    x1 = np.clip(np.floor(xs.max(axis=1) - 0.5).astype(np.int64), 0, w - 1)
    y0 = np.clip(np.ceil(ys.min(axis=1) - 0.5).astype(np.int64), 0, h - 1)
    y1 = np.clip(np.floor(ys.max(axis=1) - 0.5).astype(np.int64), 0, h - 1)
    nonempty = (xs.max(axis=1) >= 0) & (xs.min(axis=1) <= w) & \
               (ys.max(axis=1) >= 0) & (ys.min(axis=1) <= h) & \
               (x1 >= x0) & (y1 >= y0)

    for k in np.nonzero(nonempty)[0]:
        ax, ay = xs[k, 0], ys[k, 0]
        bx, by = xs[k, 1], ys[k, 1]
        cx, cy = xs[k, 2], ys[k, 2]
        area = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        if area == 0.0:
            continue
        px = np.arange(x0[k], x1[k] + 1, dtype=np.float64) + 0.5
        py = (np.arange(y0[k], y1[k] + 1, dtype=np.float64) + 0.5)[:, None]
        w0 = (cx - bx) * (py - by) - (cy - by) * (px - bx)
        w1 = (ax - cx) * (py - cy) - (ay - cy) * (px - cx)
        w2 = area - w0 - w1
        if area > 0:
            hit = (w0 >= 0) & (w1 >= 0) & (w2 >= 0)
        else:
            hit = (w0 <= 0) & (w1 <= 0) & (w2 <= 0)
        if not hit.any():
            continue
        iz = (w0 * izs[k, 0] + w1 * izs[k, 1] + w2 * izs[k, 2]) / area
        zview = invz_buf[y0[k]:y1[k] + 1, x0[k]:x1[k] + 1]
        iview = idx_buf[y0[k]:y1[k] + 1, x0[k]:x1[k] + 1]
        upd = hit & (iz > zview)
        zview[upd] = iz[upd]
        iview[upd] = ids[k]
    return RasterResult(invz_buf, idx_buf)


# -- shading and compositing --------------------------------------------------


def face_normals(vertices: np.ndarray, faces: np.ndarray) -> np.ndarray:
    tri = np.asarray(vertices, dtype=np.float64)[faces]
    n = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0])
    length = np.linalg.norm(n, axis=1, keepdims=True)
    length[length < 1e-12] = 1.0
    return n / length


def shade_flat(vertices: np.ndarray, faces: np.ndarray, albedo: np.ndarray,
               light_dir: Sequence[float], light_color: Sequence[float],
               ambient: float = 0.35, diffuse: float = 0.75) -> np.ndarray:
    """Per-face RGB under a single directional light. Normals are treated as
    two-sided (abs of the cosine) to match the cull-free rasterizer."""
    light = np.asarray(light_dir, dtype=np.float64)
    light = light / np.linalg.norm(light)
    lambert = np.abs(face_normals(vertices, faces) @ light)
    intensity = ambient + diffuse * lambert[:, None]
    shaded = np.asarray(albedo, dtype=np.float64) * intensity \
        * np.asarray(light_color, dtype=np.float64)
    return np.clip(shaded, 0.0, 1.0)


def compose(raster: RasterResult, face_colors: np.ndarray,
            background: np.ndarray) -> np.ndarray:
    """Spread per-face colors over the covered pixels of a background image.
    ``background`` is (H, W, 3) float in [0, 1]."""
    img = background.copy()
    cov = raster.coverage()
    # a guard row lets the -1 indices resolve without branching
    table = np.vstack([np.asarray(face_colors, dtype=np.float64),
                       np.zeros((1, 3))])
    img[cov] = table[raster.tri_index[cov]]
    return img


def apply_fog(img: np.ndarray, raster: RasterResult, density: float,
              tint: Sequence[float]) -> np.ndarray:
    """Exponential distance fog over covered pixels only; the caller chooses
    a matching sky for the uncovered ones."""
    if density <= 0.0:
        return img
    cov = raster.coverage()
    depth = np.zeros_like(raster.invz)
    depth[cov] = 1.0 / raster.invz[cov]
    factor = (1.0 - np.exp(-density * depth))[:, :, None]
    tint_arr = np.asarray(tint, dtype=np.float64)
    out = img.copy()
    out[cov] = img[cov] * (1.0 - factor[cov]) + tint_arr * factor[cov]
    return out


def vertical_gradient(width: int, height: int, top: Sequence[float],
                      bottom: Sequence[float]) -> np.ndarray:
    t = np.linspace(0.0, 1.0, height)[:, None, None]
    top_arr = np.asarray(top, dtype=np.float64)
    bot_arr = np.asarray(bottom, dtype=np.float64)
    return np.broadcast_to((1 - t) * top_arr + t * bot_arr,
                           (height, width, 3)).copy()


def add_rain(img: np.ndarray, rng: np.random.Generator, count: int,
             color: Sequence[float] = (0.78, 0.80, 0.84),
             alpha: float = 0.35) -> np.ndarray:
    """Seeded diagonal rain streaks blended over the image."""
    h, w = img.shape[:2]
    out = img.copy()
    xs = rng.integers(0, w, size=count)
    ys = rng.integers(0, h, size=count)
    lengths = rng.integers(8, 15, size=count)
    col = np.asarray(color, dtype=np.float64)
    for step in range(int(lengths.max())):
        alive = step < lengths
        x = xs[alive] + step // 3   # slight diagonal drift
        y = ys[alive] + step
        ok = (x < w) & (y < h)
        out[y[ok], x[ok]] = out[y[ok], x[ok]] * (1 - alpha) + col * alpha
    return out


def add_snow(img: np.ndarray, rng: np.random.Generator, count: int,
             color: Sequence[float] = (0.96, 0.96, 0.97)) -> np.ndarray:
    """Seeded snowflake dots: a bright center pixel with softer neighbors."""
    h, w = img.shape[:2]
    out = img.copy()
    xs = rng.integers(1, w - 1, size=count)
    ys = rng.integers(1, h - 1, size=count)
    col = np.asarray(color, dtype=np.float64)
    for dx, dy, a in ((0, 0, 0.9), (1, 0, 0.4), (-1, 0, 0.4),
                      (0, 1, 0.4), (0, -1, 0.4)):
        x, y = xs + dx, ys + dy
        out[y, x] = out[y, x] * (1 - a) + col * a
    return out


def quantize(img: np.ndarray) -> np.ndarray:
    """Float [0, 1] image to uint8 with round-half-up (no banker's rounding,
    so quantization is platform-stable)."""
    return np.clip(np.floor(img * 255.0 + 0.5), 0, 255).astype(np.uint8)
