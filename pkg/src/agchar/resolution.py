"""Degree data of minimal free resolutions, checked against characters.

For an AG codimension-3 ideal the resolution is self-dual,
``0 -> S(-c) -> ⊕ S(-b_i) -> ⊕ S(-a_i) -> I -> 0`` with ``b_i = c - a_i``;
codimension-2 ACM ideals have a Hilbert-Burch resolution
``0 -> ⊕ S(-b_j) -> ⊕ S(-a_i) -> I -> 0``.  Betti numbers are not
determined by the character, so this module only validates and searches.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from .charcalc import (
    Character,
    CharacterError,
    Failure,
    as_character,
    binom4,
    is_positive,
    nth_difference,
    postulation_from_gamma,
    require_ag,
)


@dataclass(frozen=True)
class BettiDataAG:
    c: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", int(self.c))
        object.__setattr__(self, "a", tuple(sorted(int(x) for x in self.a)))

    @property
    def b(self) -> tuple[int, ...]:
        return tuple(self.c - x for x in self.a)

    @property
    def gen_rank(self) -> int:
        """``r`` in ``2r + 1`` generators."""
        return (len(self.a) - 1) // 2

    @classmethod
    def from_json(cls, obj) -> "BettiDataAG":
        out = cls(obj["c"], obj["a"])
        if "b" in obj and sorted(obj["b"], reverse=True) != list(out.b):
            raise CharacterError(f"b = {obj['b']} is not c - a for c = {out.c}, a = {list(out.a)}")
        return out

    def to_json(self):
        return {"c": self.c, "a": list(self.a), "b": list(self.b)}


@dataclass(frozen=True)
class BettiDataCodim2:
    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(sorted(int(x) for x in self.a)))
        object.__setattr__(self, "b", tuple(sorted(int(x) for x in self.b)))

    @classmethod
    def from_json(cls, obj) -> "BettiDataCodim2":
        return cls(obj["a"], obj["b"])

    def to_json(self):
        return {"a": list(self.a), "b": list(self.b)}


@dataclass(frozen=True)
class BettiReport:
    ok: bool
    failures: tuple[Failure, ...] = ()

    def to_dict(self):
        return {"ok": self.ok, "failures": [f.to_dict() for f in self.failures]}


def _as_curve(gamma) -> Character:
    return as_character(gamma).with_ambient(4)


@lru_cache(maxsize=1024)
def _phi(gamma: Character, n_max: int) -> tuple[int, ...]:
    return postulation_from_gamma(gamma, n_max).phi


@lru_cache(maxsize=4096)
def _ag_sq(gamma: Character) -> tuple[int, int]:
    rep = require_ag(gamma)
    return rep.s, rep.q


def gamma_from_betti_ag(betti: BettiDataAG) -> list[int]:
    """Character of the Betti postulation: running sum of signed masses at the degrees."""
    mass = [0] * (betti.c + 1)
    mass[0] -= 1
    for x in betti.a:
        if 0 <= x <= betti.c:
            mass[x] += 1
    for x in betti.b:
        if 0 <= x <= betti.c:
            mass[x] -= 1
    mass[betti.c] += 1
    out, acc = [], 0
    for v in mass:
        acc += v
        out.append(acc)
    return out


def phi_from_betti_ag(betti: BettiDataAG, n_max: int) -> list[int]:
    """Postulation function from the alternating binomial sum of the resolution."""
    return [
        binom4(n)
        - (sum(binom4(n - x) for x in betti.a) - sum(binom4(n - x) for x in betti.b) + binom4(n - betti.c))
        for n in range(n_max + 1)
    ]


def phi_from_betti_codim2(betti: BettiDataCodim2, n_max: int) -> list[int]:
    return [
        binom4(n) - sum(binom4(n - x) for x in betti.a) + sum(binom4(n - x) for x in betti.b)
        for n in range(n_max + 1)
    ]


def gamma_from_phi(phi, ambient_dim: int = 4) -> Character:
    return Character(tuple(-v for v in nth_difference(phi, ambient_dim)), ambient_dim)


def validate_betti_ag(gamma, betti: BettiDataAG) -> BettiReport:
    """Check ``betti`` against the constraints an AG curve with character ``gamma`` imposes."""
    gamma = _as_curve(gamma)
    s, q = _ag_sq(gamma)
    a, b, c = betti.a, betti.b, betti.c
    fails = []
    k = len(a)
    if k % 2 == 0:
        fails.append(Failure("odd_generators", k, f"{k} generators; an AG ideal needs an odd number"))
    elif k < 3:
        fails.append(Failure("codimension", k, "fewer than three generators"))
    if a and a[0] != s:
        fails.append(Failure("least_generator", 0, f"a_1 = {a[0]} but s = {s}"))
    if c != q + 1:
        fails.append(Failure("socle_degree", None, f"c = {c} but q + 1 = {q + 1}"))
    if a and a[-1] > q - s:
        fails.append(Failure("generator_bound", k - 1, f"max a_i = {a[-1]} exceeds q - s = {q - s}"))
    if any(x <= 0 for x in a):
        fails.append(Failure("positive_degrees", None, "generator degrees must be positive"))
    if k >= 3 and b[1] - a[-1] <= 0:
        fails.append(Failure("degree_matrix", None, f"u(2,{k}) = b_2 - a_{k} = {b[1] - a[-1]} <= 0"))
    # phi agrees everywhere iff its character does
    if min(a, default=0) >= 0 and c >= 0 and max(a, default=0) <= c:
        gb = gamma_from_betti_ag(betti)
        top = max(len(gb), gamma.q + 1)
        n = next((n for n in range(top) if (gb[n] if n < len(gb) else 0) != gamma[n]), None)
    else:
        n_max = q + 6
        phi_b, phi_g = phi_from_betti_ag(betti, n_max), _phi(gamma, n_max)
        n = next((n for n in range(n_max + 1) if phi_b[n] != phi_g[n]), None)
    if n is not None:
        pb = phi_from_betti_ag(betti, n)[n]
        pg = _phi(gamma, n)[n]
        fails.append(Failure("hilbert_function", n, f"phi({n}) = {pb} from Betti data, {pg} from gamma"))
    return BettiReport(not fails, tuple(fails))


def candidate_betti_ag(gamma, count: int) -> list[BettiDataAG]:
    """All degree vectors of length ``count`` with ``a_1 = s``, ``a_i <= q - s``, ``c = q + 1``."""
    rep = require_ag(_as_curve(gamma))
    s, q = rep.s, rep.q
    if count < 1:
        return []
    out = []
    for rest in combinations_with_replacement(range(s, q - s + 1), count - 1):
        out.append(BettiDataAG(q + 1, (s, *rest)))
    return out


def enumerate_betti_ag(gamma, max_gens: int) -> list[BettiDataAG]:
    """Every degree vector with at most ``max_gens`` generators passing :func:`validate_betti_ag`."""
    out = []
    for count in range(3, max_gens + 1, 2):
        out.extend(B for B in candidate_betti_ag(gamma, count) if validate_betti_ag(gamma, B).ok)
    out.sort(key=lambda B: (len(B.a), B.a))
    return out


def validate_betti_codim2(gamma_surface, betti: BettiDataCodim2) -> BettiReport:
    """Check Hilbert-Burch degree data for a codimension-2 ACM scheme."""
    gamma = as_character(gamma_surface).with_ambient(4)
    if not is_positive(gamma):
        raise CharacterError(f"{gamma} is not a positive character")
    r = gamma.q
    a, b = betti.a, betti.b
    fails = []
    if len(b) != len(a) - 1:
        fails.append(Failure("rank", None, f"{len(a)} generators need {len(a) - 1} relations, got {len(b)}"))
    if a and b and max(b) <= max(a):
        fails.append(Failure("minimality", None, f"max b = {max(b)} <= max a = {max(a)}"))
    if b and max(b) != r + 1:
        fails.append(Failure("max_relation", None, f"max b_j = {max(b)} but r + 1 = {r + 1}"))
    n_max = r + 6
    phi_b = phi_from_betti_codim2(betti, n_max)
    phi_g = _phi(gamma, n_max)
    mism = [n for n in range(n_max + 1) if phi_b[n] != phi_g[n]]
    if mism:
        n = mism[0]
        fails.append(Failure("hilbert_function", n, f"phi({n}) = {phi_b[n]} from Betti data, {phi_g[n]} from gamma"))
    return BettiReport(not fails, tuple(fails))
