"""Divisor arithmetic on ACM surfaces in P^4 and the mH - K curve classifier.

Divisor classes on a blown-up plane are written ``(a; b_1, ..., b_k)`` with
intersection form ``diag(1, -1, ..., -1)``.  Complete-intersection surfaces
carry no such class; curves ``mH - K`` on them are multiples of ``H``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .charcalc import (
    Character,
    CharacterError,
    as_character,
    complete_intersection_character,
    curve_invariants,
    degree_genus_p3,
    enumerate_acm_p3,
    gamma_from_delta,
    is_positive,
    require_ag,
)

CATALOG_SCHEMA = 1


class GeometryError(ValueError):
    pass


class CatalogError(GeometryError):
    """The surface catalog failed validation at load time."""


# ------------------------------------------------------------ divisor classes


@dataclass(frozen=True)
class DivisorClass:
    a: int
    b: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", int(self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        """Parse ``"(11;3^10)"`` or ``"(4;2,1^7)"``."""
        m = re.fullmatch(r"\s*\(?\s*(-?\d+)\s*(?:;\s*(.*?))?\s*\)?\s*", text)
        if not m:
            raise GeometryError(f"cannot parse divisor class {text!r}")
        b = []
        if m.group(2):
            for tok in m.group(2).split(","):
                tok = tok.strip()
                if "^" in tok:
                    val, rep = tok.split("^")
                    b.extend([int(val)] * int(rep))
                elif tok:
                    b.append(int(tok))
        return cls(int(m.group(1)), tuple(b))

    def _padded(self, other):
        k = max(len(self.b), len(other.b))
        return self.b + (0,) * (k - len(self.b)), other.b + (0,) * (k - len(other.b))

    def dot(self, other: "DivisorClass") -> int:
        b1, b2 = self._padded(other)
        return self.a * other.a - sum(x * y for x, y in zip(b1, b2))

    def __add__(self, other):
        b1, b2 = self._padded(other)
        return DivisorClass(self.a + other.a, tuple(x + y for x, y in zip(b1, b2)))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DivisorClass(-self.a, tuple(-x for x in self.b))

    def __mul__(self, k: int):
        return DivisorClass(k * self.a, tuple(k * x for x in self.b))

    __rmul__ = __mul__

    def __str__(self):
        if not self.b:
            return f"({self.a})"
        parts, i = [], 0
        while i < len(self.b):
            j = i
            while j < len(self.b) and self.b[j] == self.b[i]:
                j += 1
            parts.append(str(self.b[i]) if j - i == 1 else f"{self.b[i]}^{j - i}")
            i = j
        return f"({self.a};{','.join(parts)})"

    def to_json(self):
        return [self.a, list(self.b)]


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    return d1.dot(d2)


def class_add(d1: DivisorClass, d2: DivisorClass) -> DivisorClass:
    return d1 + d2


def class_scale(d: DivisorClass, k: int) -> DivisorClass:
    return d * k


def adjunction_genus(d: DivisorClass, k: DivisorClass) -> int:
    """Arithmetic genus ``(D.D + D.K)/2 + 1``."""
    twice = d.dot(d) + d.dot(k)
    if twice % 2:
        raise GeometryError(f"D^2 + D.K is odd for D = {d}")
    return twice // 2 + 1


# ----------------------------------------------------------------- catalog


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    label: str
    kind: str
    gamma_X: Character
    degree: int
    sectional_genus: int
    H: DivisorClass | None = None
    K: DivisorClass | None = None
    family_dim: int | None = None
    ci_degrees: tuple[int, int] | None = None

    @property
    def r(self) -> int:
        return self.gamma_X.q

    @property
    def canonical_twist(self) -> int | None:
        """``t`` with ``K = tH`` on a complete intersection, else None."""
        if self.ci_degrees is None:
            return None
        return sum(self.ci_degrees) - 5

    def to_dict(self):
        return {
            "name": self.name,
            "label": self.label,
            "kind": self.kind,
            "H": str(self.H) if self.H else None,
            "K": str(self.K) if self.K else None,
            "gamma": list(self.gamma_X.values),
            "degree": self.degree,
            "sectional_genus": self.sectional_genus,
            "r": self.r,
            "family_dim": self.family_dim,
            "ci_degrees": list(self.ci_degrees) if self.ci_degrees else None,
        }


def _surface_from_json(entry) -> SurfaceModel:
    try:
        kind = entry["kind"]
        ci = entry.get("ci_degrees")
        H = DivisorClass(entry["H"][0], entry["H"][1]) if entry.get("H") else None
        K = DivisorClass(entry["K"][0], entry["K"][1]) if entry.get("K") else None
        return SurfaceModel(
            name=entry["name"],
            label=entry.get("label", entry["name"]),
            kind=kind,
            gamma_X=Character(tuple(entry["gamma"]), 3),
            degree=int(entry["degree"]),
            sectional_genus=int(entry["sectional_genus"]),
            H=H,
            K=K,
            family_dim=entry.get("family_dim"),
            ci_degrees=tuple(ci) if ci else None,
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise CatalogError(f"malformed catalog entry {entry!r}: {exc}") from exc


def check_surface(surf: SurfaceModel) -> None:
    """Recompute degree and sectional genus from the character and the classes."""
    try:
        ok = is_positive(surf.gamma_X)
    except CharacterError as exc:
        raise CatalogError(f"{surf.name}: character {surf.gamma_X} is not admissible") from exc
    if not ok:
        raise CatalogError(f"{surf.name}: character {surf.gamma_X} is not positive")
    dg = degree_genus_p3(surf.gamma_X)
    if dg != (surf.degree, surf.sectional_genus):
        raise CatalogError(f"{surf.name}: character gives {dg}, catalog says {(surf.degree, surf.sectional_genus)}")
    if surf.kind == "blowup":
        if surf.H is None or surf.K is None:
            raise CatalogError(f"{surf.name}: blowup surface needs H and K")
        if surf.H.dot(surf.H) != surf.degree:
            raise CatalogError(f"{surf.name}: H^2 = {surf.H.dot(surf.H)} != {surf.degree}")
        if adjunction_genus(surf.H, surf.K) != surf.sectional_genus:
            raise CatalogError(f"{surf.name}: adjunction genus of H disagrees")
    elif surf.kind == "complete_intersection":
        if surf.ci_degrees is None:
            raise CatalogError(f"{surf.name}: complete intersection needs ci_degrees")
    else:
        raise CatalogError(f"{surf.name}: unknown kind {surf.kind!r}")
    if surf.ci_degrees is not None:
        a, b = surf.ci_degrees
        if a * b != surf.degree:
            raise CatalogError(f"{surf.name}: CI degrees {surf.ci_degrees} give degree {a * b}")


def load_catalog(path=None) -> list[SurfaceModel]:
    """Load and validate the surface catalog (the bundled one by default)."""
    try:
        if path is None:
            text = resources.files("agchar").joinpath("data/catalog.json").read_text()
        else:
            text = Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"cannot read catalog: {exc}") from exc
    if not isinstance(data, dict) or data.get("schema") != CATALOG_SCHEMA:
        raise CatalogError(f"catalog schema must be {CATALOG_SCHEMA}")
    surfaces = [_surface_from_json(e) for e in data.get("surfaces", [])]
    for surf in surfaces:
        check_surface(surf)
    return surfaces


@lru_cache(maxsize=1)
def _default_catalog() -> tuple[SurfaceModel, ...]:
    return tuple(load_catalog())


def catalog(path=None) -> list[SurfaceModel]:
    if path is None:
        return list(_default_catalog())
    return load_catalog(path)


def get_surface(name: str, surfaces=None) -> SurfaceModel:
    for surf in surfaces if surfaces is not None else catalog():
        if surf.name == name:
            return surf
    raise GeometryError(f"no surface named {name!r} in the catalog")


# ------------------------------------------------------------ mH - K curves


def mhk_degree(m: int, degree: int, sectional_genus: int) -> int:
    """Degree ``(m + 1) delta - 2 pi + 2`` of ``mH - K`` on a surface of degree delta."""
    return (m + 1) * degree - 2 * sectional_genus + 2


@dataclass(frozen=True)
class MhkCurve:
    surface: str
    m: int
    divisor: DivisorClass | None
    h_multiple: int | None
    degree: int
    genus: int
    gamma_Y: Character | None
    gamma_source: str | None

    def to_dict(self):
        return {
            "surface": self.surface,
            "m": self.m,
            "class": str(self.divisor) if self.divisor is not None else None,
            "h_multiple": self.h_multiple,
            "degree": self.degree,
            "genus": self.genus,
            "gamma": list(self.gamma_Y.values) if self.gamma_Y is not None else None,
            "gamma_source": self.gamma_source,
        }


def mhk_curve(surface: SurfaceModel, m: int) -> MhkCurve:
    """Degree, genus and (when determined) character of ``Y ~ mH - K``.

    The character is the symmetric extension of ``gamma_X`` once
    ``m >= 2r - 4``; below that it is only known when the surface is a
    complete intersection, where ``Y`` is itself a complete intersection.
    """
    d = mhk_degree(m, surface.degree, surface.sectional_genus)
    divisor = h_mult = None
    if surface.kind == "blowup":
        divisor = m * surface.H - surface.K
        if divisor.dot(surface.H) != d:
            raise GeometryError(f"class {divisor} has degree {divisor.dot(surface.H)}, formula gives {d}")
        g = adjunction_genus(divisor, surface.K)
    elif surface.ci_degrees is not None:
        t = surface.canonical_twist
        h_mult = m - t
        # Y = h_mult * H and K = t * H with H^2 = degree
        twice = (h_mult * h_mult + h_mult * t) * surface.degree
        g = twice // 2 + 1
    else:
        raise GeometryError(f"{surface.name} has no class representation for mH - K")
    if surface.ci_degrees is not None and h_mult is None:
        h_mult = m - surface.canonical_twist
    if d < 1:
        raise GeometryError(f"mH - K with m = {m} on {surface.name} has degree {d} < 1")
    gamma_Y = source = None
    if m >= 2 * surface.r - 4:
        gamma_Y = gamma_from_delta(surface.gamma_X.with_ambient(4), m + 4)
        source = "first_half"
    elif h_mult is not None and h_mult >= 1:
        gamma_Y = complete_intersection_character((*surface.ci_degrees, h_mult))
        source = "complete_intersection"
    if gamma_Y is not None:
        inv = curve_invariants(gamma_Y)
        if (inv.degree, inv.genus) != (d, g):
            raise GeometryError(
                f"character route gives {(inv.degree, inv.genus)}, divisor route gives {(d, g)}"
            )
    return MhkCurve(surface.name, m, divisor, h_mult, d, g, gamma_Y, source)


@dataclass(frozen=True)
class MhkClassification:
    """Sufficient conditions for ``Y ~ mH - K``; a False flag asserts nothing."""

    m: int
    r: int
    base_point_free: bool
    very_ample_delta_match: bool
    unique_surface: bool
    open_in_hilbert: bool

    def to_dict(self):
        return {
            "m": self.m,
            "r": self.r,
            "thresholds": {
                "base_point_free": 2 * self.r - 5,
                "very_ample_delta_match": 2 * self.r - 4,
                "unique_surface": 2 * self.r - 3,
                "open_in_hilbert": 2 * self.r - 2,
            },
            "base_point_free": self.base_point_free,
            "very_ample_delta_match": self.very_ample_delta_match,
            "unique_surface": self.unique_surface,
            "open_in_hilbert": self.open_in_hilbert,
        }


def classify_mhk(gamma) -> MhkClassification:
    rep = require_ag(as_character(gamma).with_ambient(4))
    m, r = rep.m, rep.delta.q
    return MhkClassification(
        m=m,
        r=r,
        base_point_free=m >= 2 * r - 5,
        very_ample_delta_match=m >= 2 * r - 4,
        unique_surface=m >= 2 * r - 3,
        open_in_hilbert=m >= 2 * r - 2,
    )


@dataclass(frozen=True)
class SurfaceCandidate:
    degree: int
    sectional_genus: int
    witness: Character

    def to_dict(self):
        return {"degree": self.degree, "sectional_genus": self.sectional_genus, "witness": list(self.witness.values)}


@lru_cache(maxsize=8)
def _nondegenerate_pairs(d_max: int) -> tuple[tuple[int, int, Character], ...]:
    """(degree, genus, first witness) for nondegenerate ACM curves in P^3."""
    seen = {}
    for ch, d, g in enumerate_acm_p3(d_max):
        if ch.q >= 0 and ch.values[:2] == (-1, -1) and (d, g) not in seen:
            seen[(d, g)] = ch
    return tuple((d, g, ch) for (d, g), ch in sorted(seen.items()))


def nondegenerate_pairs(d_max: int = 30) -> list[tuple[int, int, Character]]:
    return list(_nondegenerate_pairs(d_max))


def mhk_surface_candidates(gamma, d_max: int = 30) -> list[SurfaceCandidate]:
    """(degree, sectional genus) pairs of ACM surfaces on which ``gamma`` could be ``mH - K``."""
    inv = curve_invariants(gamma)
    return [
        SurfaceCandidate(d, g, ch)
        for d, g, ch in _nondegenerate_pairs(d_max)
        if mhk_degree(inv.m, d, g) == inv.degree
    ]


def max_mhk_degree(m: int, d_max: int = 30) -> tuple[int, list[tuple[int, int]]]:
    """Largest ``(m + 1) delta - 2 pi + 2`` over nondegenerate pairs, with its maximizers."""
    values = {(d, g): mhk_degree(m, d, g) for d, g, _ in _nondegenerate_pairs(d_max)}
    best = max(values.values())
    return best, sorted(p for p, v in values.items() if v == best)


# --------------------------------------------------------- dimension counts


def hilbert_lower_bound(d: int, g: int) -> int:
    """Lower bound ``5d + 1 - g`` on components of the Hilbert scheme of curves in P^4."""
    return 5 * d + 1 - g


@dataclass(frozen=True)
class DimensionCount:
    self_intersection: int
    dim_linsys: int
    dim_family: int
    total: int
    hilbert_lower_bound: int
    verdict: str

    def to_dict(self):
        return {
            "Y2": self.self_intersection,
            "dim_linsys": self.dim_linsys,
            "dim_family": self.dim_family,
            "total": self.total,
            "hilbert_lower_bound": self.hilbert_lower_bound,
            "verdict": self.verdict,
        }


def dimension_count(gamma, surface: SurfaceModel) -> DimensionCount:
    """Compare the family of ``mH - K`` curves on ``surface`` with the Hilbert scheme bound."""
    inv = curve_invariants(gamma)
    if surface.kind != "blowup":
        raise GeometryError(f"{surface.name} has no divisor class for mH - K")
    if surface.family_dim is None:
        raise GeometryError(f"family dimension of {surface.name} is not catalogued")
    curve = mhk_curve(surface, inv.m)
    if (curve.degree, curve.genus) != (inv.degree, inv.genus):
        raise GeometryError(
            f"mH - K on {surface.name} has (d, g) = {(curve.degree, curve.genus)}, "
            f"character has {(inv.degree, inv.genus)}"
        )
    y2 = curve.divisor.dot(curve.divisor)
    if y2 <= 2 * inv.genus - 2:
        raise GeometryError(f"Y^2 = {y2} <= 2g - 2 = {2 * inv.genus - 2}: O_Y(Y) may be special")
    linsys = y2 + 1 - inv.genus
    total = linsys + surface.family_dim
    bound = hilbert_lower_bound(inv.degree, inv.genus)
    verdict = "not general" if total < bound else "inconclusive"
    return DimensionCount(y2, linsys, surface.family_dim, total, bound, verdict)


@dataclass(frozen=True)
class Linkage:
    alpha: int
    beta: int
    m: int
    surface: str | None = None
    linked_degree: int | None = None
    gamma_Y: Character | None = None

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "m": self.m,
            "surface": self.surface,
            "linked_degree": self.linked_degree,
            "gamma": list(self.gamma_Y.values) if self.gamma_Y is not None else None,
        }


def ci_linkage(alpha: int, beta: int, surface: SurfaceModel | None = None) -> Linkage:
    """Twist ``m = alpha + beta - 5`` of ``Y = X ∩ X'`` for ``X ∪ X'`` a (alpha, beta) complete intersection."""
    if alpha < 1 or beta < 1:
        raise GeometryError("hypersurface degrees must be positive")
    m = alpha + beta - 5
    if surface is None:
        return Linkage(alpha, beta, m)
    linked = alpha * beta - surface.degree
    if linked < 1:
        raise GeometryError(f"{surface.name} (degree {surface.degree}) does not fit in a ({alpha},{beta}) CI")
    gamma_Y = None
    if 2 * surface.r <= m + 4:
        gamma_Y = gamma_from_delta(surface.gamma_X.with_ambient(4), m + 4)
    return Linkage(alpha, beta, m, surface.name, linked, gamma_Y)
