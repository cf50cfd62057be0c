"""Procedural triangle meshes for the benchmark's object categories.

Every category is assembled from three primitives (box, cylinder/cone,
ellipsoid) so the whole corpus is generated from code — no asset downloads.
Variant meshes differ in seeded proportions and colors, never in topology
rules, so any (category, variant_index) pair rebuilds bit-identically.

Conventions: y is up, objects face +z, sizes are in arbitrary scene units
(cameras scale by mesh extent). Colors are flat per-face RGB in [0, 1].
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np


class MeshFormatError(ValueError):
    """A mesh text file that does not follow the v/f/c line format."""


@dataclass(frozen=True)
class Mesh:
    """Indexed triangle soup with flat per-face colors.

    vertices: (N, 3) float64, faces: (M, 3) int32 indices into vertices,
    face_colors: (M, 3) float32 RGB.
    """

    vertices: np.ndarray
    faces: np.ndarray
    face_colors: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=np.float64).reshape(-1, 3)
        f = np.asarray(self.faces, dtype=np.int32).reshape(-1, 3)
        c = np.asarray(self.face_colors, dtype=np.float32).reshape(-1, 3)
        if len(c) != len(f):
            raise ValueError("face_colors must align with faces")
        if len(f) and (f.min() < 0 or f.max() >= len(v)):
            raise ValueError("face index out of range")
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", f)
        object.__setattr__(self, "face_colors", c)

    # -- measurements ------------------------------------------------------

    def aabb(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def extent(self) -> float:
        lo, hi = self.aabb()
        return float((hi - lo).max())

    def triangle_count(self) -> int:
        return int(len(self.faces))

    # -- transforms (all return new meshes) --------------------------------

    def transformed(self, matrix: np.ndarray) -> "Mesh":
        m = np.asarray(matrix, dtype=np.float64)
        v = self.vertices @ m[:3, :3].T + m[:3, 3]
        return Mesh(v, self.faces, self.face_colors)

    def translated(self, offset: Sequence[float]) -> "Mesh":
        return Mesh(self.vertices + np.asarray(offset, dtype=np.float64),
                    self.faces, self.face_colors)

    def scaled(self, factors: float | Sequence[float]) -> "Mesh":
        return Mesh(self.vertices * np.asarray(factors, dtype=np.float64),
                    self.faces, self.face_colors)

    def rotated(self, axis: str, degrees: float) -> "Mesh":
        return Mesh(self.vertices @ rotation(axis, degrees).T,
                    self.faces, self.face_colors)

    def recolored(self, color: Sequence[float]) -> "Mesh":
        colors = np.tile(np.asarray(color, dtype=np.float32), (len(self.faces), 1))
        return Mesh(self.vertices, self.faces, colors)

    def grounded(self) -> "Mesh":
        """Centered on x/z with the lowest vertex resting at y = 0."""
        lo, hi = self.aabb()
        mid = (lo + hi) / 2.0
        return self.translated([-mid[0], -lo[1], -mid[2]])


def rotation(axis: str, degrees: float) -> np.ndarray:
    t = np.deg2rad(degrees)
    c, s = np.cos(t), np.sin(t)
    if axis == "x":
        return np.array([[1, 0, 0], [0, c, -s], [0, s, c]], dtype=np.float64)
    if axis == "y":
        return np.array([[c, 0, s], [0, 1, 0], [-s, 0, c]], dtype=np.float64)
    if axis == "z":
        return np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]], dtype=np.float64)
    raise ValueError(f"unknown axis '{axis}'")


def merge(meshes: Iterable[Mesh]) -> Mesh:
    parts = list(meshes)
    if not parts:
        return Mesh(np.zeros((0, 3)), np.zeros((0, 3), np.int32),
                    np.zeros((0, 3), np.float32))
    verts, faces, colors, base = [], [], [], 0
    for m in parts:
        verts.append(m.vertices)
        faces.append(m.faces + base)
        colors.append(m.face_colors)
        base += len(m.vertices)
    return Mesh(np.vstack(verts), np.vstack(faces), np.vstack(colors))


# -- primitives --------------------------------------------------------------


def box(size: Sequence[float] = (1, 1, 1),
        color: Sequence[float] = (0.7, 0.7, 0.7)) -> Mesh:
    sx, sy, sz = (s / 2.0 for s in size)
    v = np.array(
        [[-sx, -sy, -sz], [sx, -sy, -sz], [sx, sy, -sz], [-sx, sy, -sz],
         [-sx, -sy, sz], [sx, -sy, sz], [sx, sy, sz], [-sx, sy, sz]],
        dtype=np.float64)
    f = np.array(
        [[0, 2, 1], [0, 3, 2], [4, 5, 6], [4, 6, 7],
         [0, 1, 5], [0, 5, 4], [2, 3, 7], [2, 7, 6],
         [1, 2, 6], [1, 6, 5], [0, 4, 7], [0, 7, 3]],
        dtype=np.int32)
    colors = np.tile(np.asarray(color, dtype=np.float32), (len(f), 1))
    return Mesh(v, f, colors)


def cylinder(radius: float = 0.5, height: float = 1.0, segments: int = 10,
             color: Sequence[float] = (0.7, 0.7, 0.7), axis: str = "y",
             top_radius: float | None = None) -> Mesh:
    """Capped cylinder centered at the origin; ``top_radius`` tapers it
    (0 gives a cone)."""
    if segments < 3:
        raise ValueError("cylinder needs >=3 segments")
    rt = radius if top_radius is None else top_radius
    ang = np.linspace(0.0, 2 * np.pi, segments, endpoint=False)
    ring_b = np.stack([radius * np.cos(ang), np.full(segments, -height / 2),
                       radius * np.sin(ang)], axis=1)
    ring_t = np.stack([rt * np.cos(ang), np.full(segments, height / 2),
                       rt * np.sin(ang)], axis=1)
    centers = np.array([[0, -height / 2, 0], [0, height / 2, 0]])
    v = np.vstack([ring_b, ring_t, centers])
    cb, ct = 2 * segments, 2 * segments + 1
    faces: list[list[int]] = []
    for i in range(segments):
        j = (i + 1) % segments
        faces.append([i, segments + i, segments + j])
        faces.append([i, segments + j, j])
        faces.append([cb, j, i])            # bottom cap
        if rt > 1e-9:
            faces.append([ct, segments + i, segments + j])  # top cap
    f = np.array(faces, dtype=np.int32)
    colors = np.tile(np.asarray(color, dtype=np.float32), (len(f), 1))
    mesh = Mesh(v, f, colors)
    if axis == "x":
        mesh = mesh.rotated("z", -90)
    elif axis == "z":
        mesh = mesh.rotated("x", 90)
    elif axis != "y":
        raise ValueError(f"unknown axis '{axis}'")
    return mesh


def cone(radius: float = 0.5, height: float = 1.0, segments: int = 8,
         color: Sequence[float] = (0.7, 0.7, 0.7), axis: str = "y") -> Mesh:
    return cylinder(radius, height, segments, color, axis, top_radius=0.0)


def ellipsoid(radii: Sequence[float] = (0.5, 0.5, 0.5),
              color: Sequence[float] = (0.7, 0.7, 0.7),
              rings: int = 7, segments: int = 10) -> Mesh:
    """Lat-long ellipsoid: ``rings`` latitude bands between the poles."""
    if rings < 2 or segments < 3:
        raise ValueError("ellipsoid needs rings >=2 and segments >=3")
    rx, ry, rz = radii
    lat = np.linspace(0.0, np.pi, rings + 2)[1:-1]
    ang = np.linspace(0.0, 2 * np.pi, segments, endpoint=False)
    verts = [np.array([0.0, ry, 0.0]), np.array([0.0, -ry, 0.0])]
    for t in lat:
        y = np.cos(t) * ry
        r = np.sin(t)
        for a in ang:
            verts.append(np.array([rx * r * np.cos(a), y, rz * r * np.sin(a)]))
    v = np.array(verts)
    faces: list[list[int]] = []
    ring0 = 2
    for i in range(segments):                      # top fan
        j = (i + 1) % segments
        faces.append([0, ring0 + j, ring0 + i])
    for k in range(rings - 1):                     # bands
        a0, b0 = ring0 + k * segments, ring0 + (k + 1) * segments
        for i in range(segments):
            j = (i + 1) % segments
            faces.append([a0 + i, a0 + j, b0 + j])
            faces.append([a0 + i, b0 + j, b0 + i])
    last = ring0 + (rings - 1) * segments          # bottom fan
    for i in range(segments):
        j = (i + 1) % segments
        faces.append([1, last + i, last + j])
    f = np.array(faces, dtype=np.int32)
    colors = np.tile(np.asarray(color, dtype=np.float32), (len(f), 1))
    return Mesh(v, f, colors)


def tube(p0: Sequence[float], p1: Sequence[float], radius: float,
         color: Sequence[float], segments: int = 6) -> Mesh:
    """Capped cylinder spanning two points — limbs, frames, poles."""
    a = np.asarray(p0, dtype=np.float64)
    b = np.asarray(p1, dtype=np.float64)
    d = b - a
    length = float(np.linalg.norm(d))
    if length < 1e-9:
        raise ValueError("tube endpoints coincide")
    m = cylinder(radius, length, segments, color)
    y = np.array([0.0, 1.0, 0.0])
    dn = d / length
    axis = np.cross(y, dn)
    s = float(np.linalg.norm(axis))
    c = float(np.dot(y, dn))
    if s < 1e-9:
        rot = np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    else:
        k = axis / s
        kx = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
        rot = np.eye(3) + s * kx + (1 - c) * (kx @ kx)
    v = m.vertices @ rot.T + (a + b) / 2.0
    return Mesh(v, m.faces, m.face_colors)


# -- seeded variation helpers -------------------------------------------------


def _variant_rng(category: str, index: int) -> np.random.Generator:
    h = hashlib.blake2b(f"mesh|{category}|{index}".encode("utf-8"), digest_size=8)
    return np.random.default_rng(int.from_bytes(h.digest(), "big"))


def _jitter(rng: np.random.Generator, base: float, rel: float = 0.12) -> float:
    return float(base * (1.0 + rng.uniform(-rel, rel)))


def _pick_color(rng: np.random.Generator,
                palette: Sequence[Sequence[float]]) -> np.ndarray:
    base = np.asarray(palette[int(rng.integers(len(palette)))], dtype=np.float64)
    shade = base * (1.0 + rng.uniform(-0.08, 0.08, size=3))
    return np.clip(shade, 0.0, 1.0)


_VEHICLE_PAINT = [
    (0.75, 0.12, 0.10), (0.12, 0.30, 0.65), (0.85, 0.78, 0.75),
    (0.15, 0.15, 0.17), (0.75, 0.60, 0.12), (0.15, 0.45, 0.25),
]
_GLASS = (0.55, 0.68, 0.75)
_TIRE = (0.10, 0.10, 0.11)
_SKIN = [(0.85, 0.66, 0.55), (0.62, 0.44, 0.32), (0.45, 0.31, 0.22)]


def _wheel(rng: np.random.Generator, radius: float, width: float,
           at: Sequence[float]) -> Mesh:
    w = cylinder(radius, width, segments=10, color=_TIRE, axis="x")
    return w.translated(at)


# -- category archetypes ------------------------------------------------------


def _build_car(rng: np.random.Generator) -> Mesh:
    length = _jitter(rng, 4.2)
    width = _jitter(rng, 1.8)
    body_h = _jitter(rng, 0.85)
    paint = _pick_color(rng, _VEHICLE_PAINT)
    wheel_r = 0.36 * body_h / 0.85
    body = box((width, body_h, length), paint).translated(
        (0, wheel_r + body_h / 2, 0))
    cabin = box((width * 0.88, body_h * 0.78, length * 0.45), _GLASS).translated(
        (0, wheel_r + body_h + body_h * 0.36, -length * 0.05))
    zoff = length * 0.32
    xoff = width / 2
    wheels = [_wheel(rng, wheel_r, 0.22, (sx * xoff, wheel_r, sz * zoff))
              for sx in (-1, 1) for sz in (-1, 1)]
    return merge([body, cabin, *wheels]).grounded()


def _build_truck(rng: np.random.Generator) -> Mesh:
    length = _jitter(rng, 6.5)
    width = _jitter(rng, 2.3)
    paint = _pick_color(rng, _VEHICLE_PAINT)
    cargo_color = _pick_color(rng, [(0.82, 0.82, 0.80), (0.55, 0.57, 0.60),
                                    (0.70, 0.45, 0.20)])
    wheel_r = 0.52
    cab_len = length * 0.28
    cab = box((width, 1.9, cab_len), paint).translated(
        (0, wheel_r + 0.95, length / 2 - cab_len / 2))
    cargo = box((width, 2.4, length * 0.66), cargo_color).translated(
        (0, wheel_r + 1.2, -length * 0.14))
    xoff = width / 2
    zs = [length * 0.36, -length * 0.18, -length * 0.40]
    wheels = [_wheel(rng, wheel_r, 0.3, (sx * xoff, wheel_r, z))
              for sx in (-1, 1) for z in zs]
    return merge([cab, cargo, *wheels]).grounded()


def _build_bus(rng: np.random.Generator) -> Mesh:
    length = _jitter(rng, 9.0)
    width = _jitter(rng, 2.5)
    height = _jitter(rng, 2.6)
    paint = _pick_color(rng, [(0.80, 0.62, 0.10), (0.70, 0.12, 0.10),
                              (0.15, 0.35, 0.60), (0.85, 0.83, 0.80)])
    wheel_r = 0.5
    body = box((width, height, length), paint).translated(
        (0, wheel_r + height / 2, 0))
    stripe = box((width * 1.02, height * 0.28, length * 0.96), _GLASS).translated(
        (0, wheel_r + height * 0.68, 0))
    xoff = width / 2
    zs = [length * 0.36, -length * 0.36]
    wheels = [_wheel(rng, wheel_r, 0.3, (sx * xoff, wheel_r, z))
              for sx in (-1, 1) for z in zs]
    return merge([body, stripe, *wheels]).grounded()


def _build_airplane(rng: np.random.Generator) -> Mesh:
    length = _jitter(rng, 8.0)
    span = _jitter(rng, 8.5)
    hull = _pick_color(rng, [(0.85, 0.86, 0.88), (0.75, 0.78, 0.82),
                             (0.80, 0.30, 0.25)])
    accent = _pick_color(rng, _VEHICLE_PAINT)
    fuselage = ellipsoid((0.55, 0.55, length / 2), hull, rings=6, segments=10)
    wing = box((span, 0.12, length * 0.18), accent).translated((0, 0, length * 0.02))
    hstab = box((span * 0.35, 0.09, length * 0.10), accent).translated(
        (0, 0.1, -length * 0.42))
    fin = box((0.09, 1.3, length * 0.12), accent).translated(
        (0, 0.75, -length * 0.42))
    nose = cone(0.35, 0.9, 8, accent, axis="z").rotated("y", 180).translated(
        (0, 0, length / 2 + 0.3))
    body = merge([fuselage, wing, hstab, fin, nose])
    return body.translated((0, 1.4 - body.aabb()[0][1], 0)).grounded()


def _build_bike(rng: np.random.Generator) -> Mesh:
    wheel_r = _jitter(rng, 0.55)
    frame = _pick_color(rng, _VEHICLE_PAINT)
    base = 1.45 * wheel_r
    front = np.array([base, wheel_r, 0.0])
    rear = np.array([-base, wheel_r, 0.0])
    # wheels are thin cylinders with their axle across x
    wheels = [cylinder(wheel_r, 0.08, 12, _TIRE, axis="x").translated(p)
              for p in ((front[0], wheel_r, 0), (rear[0], wheel_r, 0))]
    seat_post = np.array([-0.4 * base, 2.15 * wheel_r, 0.0])
    head = np.array([0.75 * base, 2.0 * wheel_r, 0.0])
    crank = np.array([-0.1 * base, wheel_r * 0.85, 0.0])
    r = 0.05
    tubes = [
        tube(rear, seat_post, r, frame), tube(rear, crank, r, frame),
        tube(crank, seat_post, r, frame), tube(crank, head, r, frame),
        tube(seat_post, head, r, frame), tube(head, front, r, frame),
        tube(seat_post, seat_post + [0, 0.3 * wheel_r, 0], r, (0.15, 0.14, 0.13)),
        tube(head + [0, 0.25 * wheel_r, -0.45 * wheel_r],
             head + [0, 0.25 * wheel_r, 0.45 * wheel_r], r, (0.15, 0.14, 0.13)),
    ]
    seat = box((0.28, 0.07, 0.13), (0.12, 0.11, 0.11)).translated(
        seat_post + [0, 0.35 * wheel_r, 0])
    m = merge([*wheels, *tubes, seat]).rotated("y", 90)
    return m.grounded()


def _build_motorcycle(rng: np.random.Generator) -> Mesh:
    wheel_r = _jitter(rng, 0.5)
    paint = _pick_color(rng, _VEHICLE_PAINT)
    base = 1.35 * wheel_r
    wheels = [cylinder(wheel_r, 0.2, 12, _TIRE, axis="x").translated((sx * base, wheel_r, 0))
              for sx in (1, -1)]
    tank = ellipsoid((0.55 * wheel_r, 0.42 * wheel_r, 0.9 * wheel_r),
                     paint, rings=5, segments=8).translated(
        (0.15 * base, 1.75 * wheel_r, 0)).rotated("y", 0)
    engine = box((0.5 * wheel_r, 0.7 * wheel_r, 1.1 * wheel_r),
                 (0.25, 0.25, 0.27)).translated((0, 1.05 * wheel_r, 0))
    seat = box((0.5 * wheel_r, 0.22 * wheel_r, 1.0 * wheel_r),
               (0.12, 0.11, 0.11)).translated((-0.55 * base, 1.85 * wheel_r, 0))
    fork = tube((base, wheel_r, 0), (0.62 * base, 2.3 * wheel_r, 0), 0.05, (0.6, 0.6, 0.62))
    bar = tube((0.62 * base, 2.3 * wheel_r, -0.5 * wheel_r),
               (0.62 * base, 2.3 * wheel_r, 0.5 * wheel_r), 0.045, (0.15, 0.14, 0.13))
    rear = tube((-base, wheel_r, 0), (-0.3 * base, 1.5 * wheel_r, 0), 0.06, paint)
    m = merge([*wheels, tank, engine, seat, fork, bar, rear])
    # rotate so the object faces +z like the other vehicles
    return m.rotated("y", 90).grounded()


_QUADRUPED_PROPORTIONS = {
    # body_len, body_r, leg_len, leg_r, head_r, neck, tail, ear
    "cat":   (1.00, 0.26, 0.42, 0.060, 0.22, 0.16, 0.55, 0.10),
    "dog":   (1.15, 0.30, 0.55, 0.070, 0.25, 0.20, 0.45, 0.11),
    "bear":  (1.60, 0.55, 0.70, 0.140, 0.38, 0.18, 0.12, 0.12),
    "horse": (1.80, 0.48, 1.15, 0.085, 0.34, 0.55, 0.60, 0.11),
    "cow":   (1.85, 0.58, 0.90, 0.100, 0.35, 0.30, 0.55, 0.12),
    "sheep": (1.20, 0.42, 0.55, 0.065, 0.25, 0.16, 0.18, 0.09),
}

_COAT = {
    "cat": [(0.55, 0.42, 0.30), (0.45, 0.45, 0.47), (0.15, 0.14, 0.13),
            (0.82, 0.55, 0.25)],
    "dog": [(0.55, 0.38, 0.22), (0.80, 0.70, 0.55), (0.20, 0.17, 0.14),
            (0.88, 0.86, 0.82)],
    "bear": [(0.32, 0.22, 0.15), (0.15, 0.13, 0.12), (0.88, 0.88, 0.86)],
    "horse": [(0.45, 0.28, 0.16), (0.25, 0.18, 0.13), (0.75, 0.73, 0.70),
              (0.12, 0.11, 0.10)],
    "cow": [(0.90, 0.89, 0.86), (0.45, 0.30, 0.20)],
    "sheep": [(0.90, 0.88, 0.82), (0.80, 0.76, 0.68)],
}


def _build_quadruped(kind: str, rng: np.random.Generator) -> Mesh:
    body_len, body_r, leg_len, leg_r, head_r, neck_len, tail_len, ear = (
        _QUADRUPED_PROPORTIONS[kind])
    body_len = _jitter(rng, body_len)
    body_r = _jitter(rng, body_r)
    leg_len = _jitter(rng, leg_len)
    coat = _pick_color(rng, _COAT[kind])
    body_y = leg_len + body_r * 0.8
    body = ellipsoid((body_r, body_r * 0.9, body_len / 2), coat,
                     rings=7, segments=10).translated((0, body_y, 0))
    if kind == "cow":
        # speckled coat: random faces flip to the opposite palette entry
        alt = np.asarray(_COAT["cow"][1] if tuple(np.round(coat, 2)) ==
                         tuple(np.round(_COAT["cow"][0], 2)) else _COAT["cow"][0],
                         dtype=np.float32)
        mask = rng.random(len(body.faces)) < 0.3
        colors = body.face_colors.copy()
        colors[mask] = alt
        body = Mesh(body.vertices, body.faces, colors)
    neck_base = np.array([0.0, body_y + body_r * 0.35, body_len * 0.42])
    head_c = neck_base + np.array([0.0, neck_len, body_r * 0.35])
    neck = tube(neck_base, head_c, body_r * 0.38, coat, segments=6)
    head = ellipsoid((head_r * 0.8, head_r * 0.8, head_r * 1.15), coat,
                     rings=5, segments=8).translated(head_c + [0, head_r * 0.2, head_r * 0.4])
    ears = [box((ear, ear * 1.4, ear * 0.4), coat).translated(
        head_c + [sx * head_r * 0.55, head_r * 0.95, head_r * 0.1])
        for sx in (-1, 1)]
    zoff = body_len * 0.34
    xoff = body_r * 0.55
    legs = [tube((sx * xoff, leg_len + body_r * 0.3, sz * zoff),
                 (sx * xoff, 0.0, sz * zoff), leg_r, coat, segments=6)
            for sx in (-1, 1) for sz in (-1, 1)]
    parts = [body, neck, head, *ears, *legs]
    if tail_len > 0.15:
        tail_a = np.array([0.0, body_y + body_r * 0.3, -body_len * 0.46])
        tail_b = tail_a + np.array([0.0, tail_len * 0.4, -tail_len * 0.8])
        parts.append(tube(tail_a, tail_b, leg_r * 0.6, coat, segments=5))
    return merge(parts).grounded()


def _build_bird(rng: np.random.Generator) -> Mesh:
    size = _jitter(rng, 0.5)
    plume = _pick_color(rng, [(0.60, 0.20, 0.15), (0.20, 0.35, 0.60),
                              (0.45, 0.38, 0.28), (0.25, 0.25, 0.28)])
    body = ellipsoid((0.45 * size, 0.45 * size, 0.75 * size), plume,
                     rings=6, segments=10)
    head = ellipsoid((0.28 * size, 0.28 * size, 0.28 * size), plume,
                     rings=5, segments=8).translated((0, 0.45 * size, 0.55 * size))
    beak = cone(0.10 * size, 0.35 * size, 6, (0.85, 0.65, 0.15),
                axis="z").translated((0, 0.45 * size, 0.95 * size))
    wings = [ellipsoid((0.85 * size, 0.08 * size, 0.4 * size), plume,
                       rings=4, segments=8)
             .rotated("z", sx * 12).translated((sx * 0.75 * size, 0.12 * size, 0))
             for sx in (-1, 1)]
    tail = box((0.3 * size, 0.06 * size, 0.55 * size), plume).translated(
        (0, 0.05 * size, -0.85 * size))
    legs = [tube((sx * 0.12 * size, -0.35 * size, 0.05 * size),
                 (sx * 0.12 * size, -0.85 * size, 0.0), 0.03 * size,
                 (0.75, 0.55, 0.15), segments=5) for sx in (-1, 1)]
    return merge([body, head, beak, *wings, tail, *legs]).grounded()


def _build_human(rng: np.random.Generator) -> Mesh:
    height = _jitter(rng, 1.75, 0.08)
    skin = _pick_color(rng, _SKIN)
    shirt = _pick_color(rng, _VEHICLE_PAINT + [(0.85, 0.85, 0.85)])
    pants = _pick_color(rng, [(0.18, 0.22, 0.35), (0.15, 0.15, 0.16),
                              (0.35, 0.28, 0.22)])
    u = height / 1.75
    leg_len, torso_h, head_r = 0.85 * u, 0.55 * u, 0.115 * u
    hip_y = leg_len
    shoulder_y = hip_y + torso_h
    torso = box((0.38 * u, torso_h, 0.20 * u), shirt).translated(
        (0, hip_y + torso_h / 2, 0))
    head = ellipsoid((head_r, head_r * 1.15, head_r), skin,
                     rings=5, segments=8).translated(
        (0, shoulder_y + head_r * 1.5, 0))
    legs = [tube((sx * 0.10 * u, hip_y, 0), (sx * 0.10 * u, 0.03 * u, 0),
                 0.065 * u, pants, segments=6) for sx in (-1, 1)]
    feet = [box((0.10 * u, 0.06 * u, 0.24 * u), (0.15, 0.13, 0.12)).translated(
        (sx * 0.10 * u, 0.03 * u, 0.05 * u)) for sx in (-1, 1)]
    arms = [tube((sx * 0.22 * u, shoulder_y - 0.02 * u, 0),
                 (sx * 0.26 * u, hip_y + 0.05 * u, 0), 0.05 * u, shirt,
                 segments=6) for sx in (-1, 1)]
    return merge([torso, head, *legs, *feet, *arms]).grounded()


_CATEGORY_BUILDERS: dict[str, Callable[[np.random.Generator], Mesh]] = {
    "car": _build_car,
    "airplane": _build_airplane,
    "bike": _build_bike,
    "motorcycle": _build_motorcycle,
    "cat": lambda r: _build_quadruped("cat", r),
    "dog": lambda r: _build_quadruped("dog", r),
    "bear": lambda r: _build_quadruped("bear", r),
    "horse": lambda r: _build_quadruped("horse", r),
    "cow": lambda r: _build_quadruped("cow", r),
    "sheep": lambda r: _build_quadruped("sheep", r),
    "bird": _build_bird,
    "human": _build_human,
    "bus": _build_bus,
    "truck": _build_truck,
}

DEFAULT_CATEGORIES: tuple[str, ...] = tuple(_CATEGORY_BUILDERS)


def build_variant(category: str, index: int) -> Mesh:
    """Deterministic mesh for (category, variant index)."""
    try:
        builder = _CATEGORY_BUILDERS[category]
    except KeyError:
        raise KeyError(f"no mesh builder for category '{category}'") from None
    return builder(_variant_rng(category, index))


@dataclass(frozen=True)
class CategoryRegistry:
    """Ordered category names with a fixed number of mesh variants each."""

    categories: tuple[str, ...]
    variants_per_category: int = 4

    def __post_init__(self) -> None:
        if self.variants_per_category < 1:
            raise ValueError("variants_per_category must be >=1")
        unknown = [c for c in self.categories if c not in _CATEGORY_BUILDERS]
        if unknown:
            raise KeyError(f"no mesh builder for categories: {unknown}")

    def variants(self, category: str) -> list[Mesh]:
        if category not in self.categories:
            raise KeyError(f"category '{category}' not in registry")
        return [build_variant(category, i)
                for i in range(self.variants_per_category)]

    def variant(self, category: str, index: int) -> Mesh:
        if category not in self.categories:
            raise KeyError(f"category '{category}' not in registry")
        return build_variant(category, index % self.variants_per_category)


def default_registry(variants_per_category: int = 4) -> CategoryRegistry:
    return CategoryRegistry(DEFAULT_CATEGORIES, variants_per_category)


# -- text mesh format ---------------------------------------------------------
#
#   c R G B    set the current face color (floats in [0, 1])
#   v X Y Z    add a vertex
#   f A B C    add a triangle of 1-based vertex indices using the current color
#
# Blank lines and '#' comments are ignored.


def load_mesh_text(path: str | Path) -> Mesh:
    verts: list[list[float]] = []
    faces: list[list[int]] = []
    colors: list[list[float]] = []
    current = [0.7, 0.7, 0.7]
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            if tag == "v" and len(rest) == 3:
                verts.append([float(x) for x in rest])
            elif tag == "f" and len(rest) == 3:
                idx = [int(x) - 1 for x in rest]
                if any(i < 0 or i >= len(verts) for i in idx):
                    raise ValueError("vertex index out of range")
                faces.append(idx)
                colors.append(list(current))
            elif tag == "c" and len(rest) == 3:
                current = [min(1.0, max(0.0, float(x))) for x in rest]
            else:
                raise ValueError(f"unrecognized directive '{tag}'")
        except ValueError as exc:
            raise MeshFormatError(f"{path}:{lineno}: {exc}") from None
    if not faces:
        raise MeshFormatError(f"{path}: no triangles")
    return Mesh(np.array(verts), np.array(faces, np.int32),
                np.array(colors, np.float32))


def dump_mesh_text(mesh: Mesh, path: str | Path) -> None:
    lines = ["# triangle mesh: c=color v=vertex f=face(1-based)"]
    for v in mesh.vertices:
        lines.append(f"v {v[0]:.6g} {v[1]:.6g} {v[2]:.6g}")
    last: tuple[float, ...] | None = None
    for face, color in zip(mesh.faces, mesh.face_colors):
        c = tuple(round(float(x), 4) for x in color)
        if c != last:
            lines.append(f"c {c[0]:.4g} {c[1]:.4g} {c[2]:.4g}")
            last = c
        lines.append(f"f {face[0] + 1} {face[1] + 1} {face[2] + 1}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
