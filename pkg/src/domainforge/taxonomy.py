"""Domain-shift taxonomy: shifts, domains, exclusion constraints, and the
enumeration/validation of fine-grained domain combinations.

A taxonomy is a fixed, ordered list of shifts (axes of variation such as
``weathers`` or ``views``), each holding an ordered list of mutually
exclusive domains. Cross-shift incompatibilities are expressed as pairwise
exclusion constraints. Taxonomies are immutable after load and safe to share
across threads.
"""

from __future__ import annotations

import functools
import hashlib
import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import yaml


class TaxonomyError(ValueError):
    """Malformed taxonomy config, or a reference to an unknown shift/domain."""


class InvalidCombinationError(ValueError):
    """A domain combination that fails validation was used where a valid one
    is required."""


def slugify(name: str) -> str:
    """Identifier form of a human-readable name: lowercased, spaces to ``-``."""
    slug = "-".join(str(name).strip().lower().split())
    if not slug:
        raise TaxonomyError("empty name")
    return slug


@dataclass(frozen=True)
class Domain:
    """One discrete value along a shift axis (e.g. ``foggy`` under ``weathers``)."""

    id: str
    shift_id: str
    name: str
    description: str = ""


@dataclass(frozen=True)
class DomainShift:
    """An axis of distribution variation holding >=2 mutually exclusive domains."""

    id: str
    name: str
    domains: tuple[Domain, ...]

    def domain(self, domain_id: str) -> Domain:
        for d in self.domains:
            if d.id == domain_id:
                return d
        raise TaxonomyError(f"unknown domain '{self.id}.{domain_id}'")

    def domain_ids(self) -> tuple[str, ...]:
        return tuple(d.id for d in self.domains)


@dataclass(frozen=True)
class ExclusionConstraint:
    """An unordered pair of (shift_id, domain_id) endpoints declared mutually
    incompatible. The two endpoints must belong to different shifts."""

    a: tuple[str, str]
    b: tuple[str, str]

    def endpoints(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.a, self.b))

    def describe(self) -> str:
        return f"{self.a[0]}.{self.a[1]} x {self.b[0]}.{self.b[1]}"


@dataclass(frozen=True)
class DomainCombination:
    """An assignment of at most one domain per shift.

    ``assignment`` is stored canonically sorted by shift id, so equality and
    hashing are independent of construction order. Completeness (one domain
    for *every* shift) is a property checked against a taxonomy, not enforced
    here: imported datasets legitimately carry partial assignments.
    """

    assignment: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((str(s), str(d)) for s, d in self.assignment))
        shifts = [s for s, _ in pairs]
        if len(set(shifts)) != len(shifts):
            raise InvalidCombinationError("combination assigns a shift twice")
        object.__setattr__(self, "assignment", pairs)

    @classmethod
    def of(cls, mapping: Mapping[str, str]) -> "DomainCombination":
        return cls(tuple(mapping.items()))

    def get(self, shift_id: str) -> str | None:
        for s, d in self.assignment:
            if s == shift_id:
                return d
        return None

    def as_dict(self) -> dict[str, str]:
        return dict(self.assignment)

    def shift_ids(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.assignment)

    def __contains__(self, shift_id: str) -> bool:
        return self.get(shift_id) is not None


@dataclass(frozen=True)
class CombinationVerdict:
    """Outcome of validating a combination against a taxonomy."""

    valid: bool
    reason: str = ""
    violated: ExclusionConstraint | None = None

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class DomainTaxonomy:
    """An immutable hierarchy of shifts and domains plus exclusion constraints."""

    shifts: tuple[DomainShift, ...]
    exclusions: tuple[ExclusionConstraint, ...]

    def shift(self, shift_id: str) -> DomainShift:
        for s in self.shifts:
            if s.id == shift_id:
                return s
        raise TaxonomyError(f"unknown shift '{shift_id}'")

    def domain(self, shift_id: str, domain_id: str) -> Domain:
        return self.shift(shift_id).domain(domain_id)

    def shift_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.shifts)

    def coarse_domains(self) -> tuple[Domain, ...]:
        """All domains across all shifts, in declaration order."""
        return tuple(d for s in self.shifts for d in s.domains)

    # -- combinations ------------------------------------------------------

    def combination(self, mapping: Mapping[str, str]) -> DomainCombination:
        """Build a combination from ``shift id -> domain id or name``,
        resolving names to ids and rejecting unknown references."""
        resolved: dict[str, str] = {}
        for shift_id, dom in mapping.items():
            shift = self.shift(shift_id)
            dom_id = slugify(dom)
            shift.domain(dom_id)
            resolved[shift_id] = dom_id
        return DomainCombination.of(resolved)

    def enumerate_combinations(self) -> list[DomainCombination]:
        """All and only the combinations satisfying every constraint, in
        deterministic lexicographic order of (shift order, domain order)."""
        out: list[DomainCombination] = []
        axes = [[(s.id, d.id) for d in s.domains] for s in self.shifts]
        for picks in itertools.product(*axes):
            combo = DomainCombination(tuple(picks))
            if self._violated_constraint(combo) is None:
                out.append(combo)
        return out

    def validate_combination(self, combo: DomainCombination) -> CombinationVerdict:
        """Valid iff the combination assigns one known domain per shift and
        violates no exclusion constraint. Unknown ids raise TaxonomyError."""
        for shift_id, domain_id in combo.assignment:
            self.domain(shift_id, domain_id)
        missing = [s.id for s in self.shifts if s.id not in combo]
        if missing:
            return CombinationVerdict(
                False, f"incomplete assignment: missing {', '.join(missing)}"
            )
        violated = self._violated_constraint(combo)
        if violated is not None:
            return CombinationVerdict(
                False, f"excluded by constraint {violated.describe()}", violated
            )
        return CombinationVerdict(True)

    def coarse_domain_membership(
        self, combo: DomainCombination
    ) -> list[tuple[str, str]]:
        """The coarse-domain labels under which this combination's samples
        are counted: one (shift_id, domain_id) pair per shift."""
        verdict = self.validate_combination(combo)
        if not verdict:
            raise InvalidCombinationError(verdict.reason)
        return [(s.id, combo.get(s.id)) for s in self.shifts]  # type: ignore[misc]

    def slug(self, combo: DomainCombination) -> str:
        """Filesystem-safe label listing domain ids in taxonomy shift order;
        shifts absent from the combination are skipped."""
        parts = [combo.get(s.id) for s in self.shifts if s.id in combo]
        extras = [d for s, d in combo.assignment if s not in self.shift_ids()]
        return "_".join([p for p in parts if p is not None] + sorted(extras))

    def _violated_constraint(
        self, combo: DomainCombination
    ) -> ExclusionConstraint | None:
        for c in self.exclusions:
            if combo.get(c.a[0]) == c.a[1] and combo.get(c.b[0]) == c.b[1]:
                return c
        return None

    # -- identity ----------------------------------------------------------

    def structural_hash(self) -> str:
        """Stable hash of the shift/domain structure and exclusions.

        Descriptions are deliberately excluded: they affect prompt text, not
        sample labels, and may be overridden at evaluation time.
        """
        payload = {
            "shifts": [[s.id, list(s.domain_ids())] for s in self.shifts],
            "exclusions": sorted(
                sorted([f"{a}.{b}", f"{c}.{d}"])
                for (a, b), (c, d) in ((e.a, e.b) for e in self.exclusions)
            ),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.blake2b(blob.encode("utf-8"), digest_size=16).hexdigest()


# -- loading ---------------------------------------------------------------


def _parse_endpoint(path: str) -> tuple[str, str]:
    parts = str(path).split(".", 1)
    if len(parts) != 2 or not parts[0] or not parts[1]:
        raise TaxonomyError(f"exclusion endpoint '{path}' is not 'shift.domain'")
    return parts[0], parts[1]


def taxonomy_from_dict(doc: Mapping) -> DomainTaxonomy:
    """Validate and build a taxonomy from a parsed config document."""
    if not isinstance(doc, Mapping):
        raise TaxonomyError("taxonomy config must be a mapping")
    raw_shifts = doc.get("shifts")
    if not raw_shifts:
        raise TaxonomyError("taxonomy config has no shifts")

    shifts: list[DomainShift] = []
    seen_shift_ids: set[str] = set()
    for raw in raw_shifts:
        name = raw.get("name") if isinstance(raw, Mapping) else None
        if not name:
            raise TaxonomyError("shift entry missing 'name'")
        shift_id = slugify(name)
        if shift_id in seen_shift_ids:
            raise TaxonomyError(f"duplicate shift id '{shift_id}'")
        seen_shift_ids.add(shift_id)

        raw_domains = raw.get("domains") or []
        if len(raw_domains) < 2:
            raise TaxonomyError(f"shift '{shift_id}' needs >=2 domains")
        domains: list[Domain] = []
        seen_dom_ids: set[str] = set()
        for rd in raw_domains:
            if isinstance(rd, str):
                dom_name, desc = rd, ""
            elif isinstance(rd, Mapping):
                dom_name = rd.get("name")
                desc = str(rd.get("description", "") or "")
            else:
                raise TaxonomyError(f"bad domain entry under shift '{shift_id}'")
            if not dom_name:
                raise TaxonomyError(f"domain under shift '{shift_id}' missing 'name'")
            dom_id = slugify(dom_name)
            if dom_id in seen_dom_ids:
                raise TaxonomyError(f"duplicate domain id '{shift_id}.{dom_id}'")
            seen_dom_ids.add(dom_id)
            domains.append(
                Domain(
                    id=dom_id,
                    shift_id=shift_id,
                    name=str(dom_name).strip().lower(),
                    description=desc,
                )
            )
        shifts.append(DomainShift(id=shift_id, name=str(name), domains=tuple(domains)))

    taxonomy = DomainTaxonomy(shifts=tuple(shifts), exclusions=())

    exclusions: list[ExclusionConstraint] = []
    for raw in doc.get("exclusions") or []:
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise TaxonomyError(f"exclusion entry {raw!r} must be a pair")
        a, b = _parse_endpoint(raw[0]), _parse_endpoint(raw[1])
        for shift_id, dom_id in (a, b):
            try:
                taxonomy.domain(shift_id, dom_id)
            except TaxonomyError:
                raise TaxonomyError(
                    f"exclusion references unknown domain '{shift_id}.{dom_id}'"
                ) from None
        if a[0] == b[0]:
            raise TaxonomyError(
                f"exclusion endpoints must belong to different shifts: {raw!r}"
            )
        exclusions.append(ExclusionConstraint(a=a, b=b))

    return DomainTaxonomy(shifts=tuple(shifts), exclusions=tuple(exclusions))


def load_taxonomy(source: str | Path | Mapping) -> DomainTaxonomy:
    """Load a taxonomy from a YAML/JSON file path, a YAML string, or an
    already-parsed mapping."""
    if isinstance(source, Mapping):
        return taxonomy_from_dict(source)
    if isinstance(source, Path) or (
        isinstance(source, str) and "\n" not in source and Path(source).exists()
    ):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = str(source)
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise TaxonomyError(f"taxonomy config does not parse: {exc}") from exc
    if doc is None:
        raise TaxonomyError("taxonomy config is empty")
    return taxonomy_from_dict(doc)


@functools.lru_cache(maxsize=1)
def default_taxonomy() -> DomainTaxonomy:
    """The built-in five-shift taxonomy (18 coarse domains), available with
    no configuration."""
    text = (
        resources.files("domainforge.data")
        .joinpath("default_taxonomy.yaml")
        .read_text(encoding="utf-8")
    )
    return load_taxonomy(text)
