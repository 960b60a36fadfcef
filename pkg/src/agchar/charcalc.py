"""Difference/integration calculus on postulation characters.

A character is stored as its values at ``0, 1, 2, ...`` with trailing zeros
trimmed; values at negative indices are zero by construction.  The ambient
dimension ``N`` records which difference the character is: ``gamma = -d^N phi``
where ``phi`` is the postulation function.

All arithmetic is exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Iterator, Sequence

from .kernels import iterated_partial_sums


class CharacterError(ValueError):
    """Raised when a character fails a validity check.

    ``failures`` holds the individual :class:`Failure` records.
    """

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)


@dataclass(frozen=True)
class Failure:
    clause: str
    index: int | None
    message: str

    def to_dict(self):
        return {"clause": self.clause, "index": self.index, "message": self.message}


@dataclass(frozen=True)
class Character:
    """Finitely supported integer function on the nonnegative integers."""

    values: tuple[int, ...]
    ambient_dim: int = 4

    def __post_init__(self):
        vals = [int(v) for v in self.values]
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(vals))
        if self.ambient_dim not in (3, 4):
            raise ValueError(f"ambient dimension must be 3 or 4, got {self.ambient_dim}")

    @classmethod
    def parse(cls, text: str, ambient_dim: int = 4) -> "Character":
        """Parse ``"-1,-1,2"`` or ``"-1 -1 2"``."""
        tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
        try:
            return cls(tuple(int(t) for t in tokens), ambient_dim)
        except ValueError as exc:
            raise CharacterError(f"cannot parse character {text!r}") from exc

    @classmethod
    def from_json(cls, obj, ambient_dim: int = 4) -> "Character":
        if isinstance(obj, dict):
            key = "gamma" if "gamma" in obj else "delta" if "delta" in obj else None
            if key is None:
                raise CharacterError("JSON character needs a 'gamma' key")
            return cls(tuple(obj[key]), int(obj.get("N", ambient_dim)))
        return cls(tuple(obj), ambient_dim)

    def to_json(self):
        return {"gamma": list(self.values)}

    def with_ambient(self, ambient_dim: int) -> "Character":
        if ambient_dim == self.ambient_dim:
            return self
        return Character(self.values, ambient_dim)

    def __getitem__(self, n: int) -> int:
        # gamma(n) = 0 outside the stored window, including n < 0
        if 0 <= n < len(self.values):
            return self.values[n]
        return 0

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return " ".join(str(v) for v in self.values)

    @property
    def q(self) -> int:
        """Largest index with a nonzero value (-1 for the empty character)."""
        return len(self.values) - 1

    @property
    def is_empty(self) -> bool:
        return not self.values

    def moment(self, k: int) -> int:
        return sum(n**k * v for n, v in enumerate(self.values))


def as_character(obj, ambient_dim: int = 4) -> Character:
    if isinstance(obj, Character):
        return obj
    if isinstance(obj, str):
        return Character.parse(obj, ambient_dim)
    return Character(tuple(obj), ambient_dim)


# ---------------------------------------------------------------- differences


def nth_difference(f: Sequence[int], k: int) -> list[int]:
    """``k``-fold backward difference with ``f(n) = 0`` for ``n < 0``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = [int(v) for v in f]
    for _ in range(k):
        out = [out[i] - (out[i - 1] if i else 0) for i in range(len(out))]
    return out


def partial_sums(f: Sequence[int], k: int, length: int | None = None) -> list[int]:
    """``k``-fold running sum, the inverse of :func:`nth_difference`."""
    if length is None:
        length = len(f)
    return iterated_partial_sums([int(v) for v in f], k, length)


@dataclass(frozen=True)
class PostulationTable:
    """Postulation function ``phi(0..n_max)`` and its Hilbert polynomial.

    ``hilbert_poly`` lists coefficients in descending powers of ``n`` with
    leading zeros stripped; for a curve this is ``(d, 1 - g)``.
    """

    phi: tuple[int, ...]
    n_max: int
    hilbert_poly: tuple[Fraction, ...]
    stable_from: int

    def degree_genus(self) -> tuple[int, int]:
        hp = list(self.hilbert_poly)
        if len(hp) > 2:
            raise CharacterError("Hilbert polynomial is not linear; not a curve")
        while len(hp) < 2:
            hp.insert(0, Fraction(0))
        d, c0 = hp
        if d.denominator != 1 or c0.denominator != 1:
            raise CharacterError("Hilbert polynomial has non-integer coefficients")
        return int(d), int(1 - c0)

    def to_dict(self):
        return {
            "phi": list(self.phi),
            "n_max": self.n_max,
            "hilbert_poly": [_frac_json(c) for c in self.hilbert_poly],
        }


def _frac_json(x: Fraction):
    return int(x) if x.denominator == 1 else str(x)


def _interpolate_tail(values: Sequence[int], start: int, degree: int) -> tuple[Fraction, ...]:
    """Coefficients (descending) of the polynomial through ``values[start:start+degree+1]``."""
    pts = [values[start + i] for i in range(degree + 1)]
    # forward differences at ``start`` give the Newton form in C(n - start, k)
    diffs = []
    cur = list(pts)
    while cur:
        diffs.append(cur[0])
        cur = [cur[i + 1] - cur[i] for i in range(len(cur) - 1)]
    coeffs = [Fraction(0)] * (degree + 1)  # ascending
    for k, dk in enumerate(diffs):
        if dk == 0:
            continue
        # C(n - start, k) = prod_{i<k} (n - start - i) / k!
        basis = [Fraction(1)]
        for i in range(k):
            shift = -(start + i)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for j, c in enumerate(basis):
                nxt[j] += c * shift
                nxt[j + 1] += c
            basis = nxt
        fk = Fraction(dk, factorial(k))
        for j, c in enumerate(basis):
            coeffs[j] += fk * c
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(reversed(coeffs))


def postulation_from_gamma(gamma, n_max: int | None = None) -> PostulationTable:
    """Recover ``phi`` from ``gamma`` by ``N``-fold numerical integration."""
    gamma = as_character(gamma)
    report = validate_admissible(gamma)
    if not report.ok:
        raise CharacterError(f"character {gamma} is not admissible", report.failures)
    N = gamma.ambient_dim
    q = gamma.q
    stable_from = max(q + 1 - N, 0)
    needed = stable_from + N + 1
    if n_max is None:
        n_max = max(q + N + 1, needed)
    length = max(n_max, needed) + 1
    phi = partial_sums([-v for v in gamma.values], N, length)
    hp = _interpolate_tail(phi, stable_from, N - 1)
    return PostulationTable(tuple(phi[: n_max + 1]), n_max, hp, stable_from)


# ------------------------------------------------------------------ validity


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    s: int | None
    failures: tuple[Failure, ...] = ()

    def to_dict(self):
        return {"ok": self.ok, "s": self.s, "failures": [f.to_dict() for f in self.failures]}


def validate_admissible(gamma) -> AdmissibilityReport:
    """Check the four admissibility clauses and locate ``s``.

    ``s`` is the first index with ``gamma(s) >= 0``; every earlier value must
    be exactly ``-1``.
    """
    gamma = as_character(gamma)
    failures = []
    if gamma.is_empty:
        return AdmissibilityReport(False, None, (Failure("nonempty", None, "empty character"),))
    s = None
    for n, v in enumerate(gamma.values):
        if v >= 0:
            s = n
            break
        if v != -1:
            failures.append(Failure("minus_one_before_s", n, f"gamma({n}) = {v}, expected -1 before s"))
            break
    if s is None and not failures:
        failures.append(Failure("nonnegative_at_s", len(gamma.values), "no index with gamma(n) >= 0"))
    if s == 0:
        failures.append(Failure("s_positive", 0, "gamma(0) >= 0, so s = 0 is not positive"))
    total = sum(gamma.values)
    if total != 0:
        failures.append(Failure("sum_zero", None, f"sum of gamma is {total}, expected 0"))
    if failures:
        return AdmissibilityReport(False, s, tuple(failures))
    return AdmissibilityReport(True, s)


def require_admissible(gamma) -> int:
    report = validate_admissible(gamma)
    if not report.ok:
        raise CharacterError(f"character {as_character(gamma)} is not admissible", report.failures)
    return report.s


def is_positive(gamma) -> bool:
    gamma = as_character(gamma)
    s = require_admissible(gamma)
    return all(v >= 0 for v in gamma.values[s:])


def is_connected(gamma) -> bool:
    gamma = as_character(gamma)
    require_admissible(gamma)
    pos = [n for n, v in enumerate(gamma.values) if v > 0]
    return not pos or pos[-1] - pos[0] + 1 == len(pos)


def is_symmetric(gamma, q: int | None = None) -> bool:
    gamma = as_character(gamma)
    if q is None:
        q = gamma.q
    return all(gamma[n] == gamma[q - n] for n in range(0, max(q, gamma.q) + 1))


# ----------------------------------------------------------- AG characters


def delta_split(gamma, q: int | None = None) -> Character:
    """First half of a character symmetric about ``q``."""
    gamma = as_character(gamma)
    if q is None:
        q = gamma.q
    if not is_symmetric(gamma, q):
        raise CharacterError(f"character {gamma} is not symmetric about {q}")
    vals = []
    for n in range(q // 2 + 1):
        if 2 * n < q:
            vals.append(gamma[n])
        else:
            mid = gamma[n]
            if mid % 2:
                raise CharacterError(
                    f"middle value gamma({n}) = {mid} is odd",
                    [Failure("middle_parity", n, "odd middle value")],
                )
            vals.append(mid // 2)
    return Character(tuple(vals), gamma.ambient_dim)


def gamma_from_delta(delta, q: int) -> Character:
    """Symmetric character ``gamma(n) = delta(n) + delta(q - n)``."""
    delta = as_character(delta)
    if not is_positive(delta):
        raise CharacterError(f"delta {delta} is not positive")
    if 2 * delta.q > q:
        raise CharacterError(
            f"delta support {delta.q} exceeds q/2 = {q / 2}",
            [Failure("delta_support", delta.q, "support beyond q/2")],
        )
    return Character(tuple(delta[n] + delta[q - n] for n in range(q + 1)), delta.ambient_dim)


@dataclass(frozen=True)
class AGReport:
    ok: bool
    s: int | None
    q: int | None
    m: int | None
    delta: Character | None
    delta_connected: bool | None
    failures: tuple[Failure, ...] = ()

    def to_dict(self):
        return {
            "ok": self.ok,
            "s": self.s,
            "q": self.q,
            "m": self.m,
            "delta": list(self.delta.values) if self.delta is not None else None,
            "delta_connected": self.delta_connected,
            "failures": [f.to_dict() for f in self.failures],
        }


def validate_ag(gamma) -> AGReport:
    """Check that ``gamma`` is the character of an AG codimension-3 scheme."""
    gamma = as_character(gamma)
    adm = validate_admissible(gamma)
    if not adm.ok:
        return AGReport(False, adm.s, None, None, None, None, adm.failures)
    q = gamma.q
    m = q - 4
    for n in range(q + 1):
        if gamma[n] != gamma[q - n]:
            fail = Failure("symmetry", n, f"gamma({n}) = {gamma[n]} != gamma({q - n}) = {gamma[q - n]}")
            return AGReport(False, adm.s, q, m, None, None, (fail,))
    if q % 2 == 0 and gamma[q // 2] % 2:
        fail = Failure("middle_parity", q // 2, f"gamma({q // 2}) = {gamma[q // 2]} is odd")
        return AGReport(False, adm.s, q, m, None, None, (fail,))
    delta = delta_split(gamma, q)
    dadm = validate_admissible(delta)
    if not dadm.ok:
        fails = tuple(Failure("delta_" + f.clause, f.index, f.message) for f in dadm.failures)
        return AGReport(False, adm.s, q, m, delta, None, fails)
    negative = [n for n in range(dadm.s, len(delta)) if delta[n] < 0]
    if negative:
        n = negative[0]
        fail = Failure("delta_positive", n, f"delta({n}) = {delta[n]} < 0")
        return AGReport(False, adm.s, q, m, delta, None, (fail,))
    return AGReport(True, adm.s, q, m, delta, is_connected(delta))


def require_ag(gamma) -> AGReport:
    report = validate_ag(gamma)
    if not report.ok:
        raise CharacterError(f"character {as_character(gamma)} is not an AG character", report.failures)
    return report


# ---------------------------------------------------------------- invariants


@dataclass(frozen=True)
class CurveInvariants:
    s: int
    q: int
    m: int
    r: int
    degree: int
    genus: int
    delta: Character

    def to_dict(self):
        return {
            "s": self.s,
            "q": self.q,
            "m": self.m,
            "r": self.r,
            "degree": self.degree,
            "genus": self.genus,
            "delta": list(self.delta.values),
        }


def curve_invariants(gamma) -> CurveInvariants:
    """Invariants of an AG curve in P^4; degree and genus come from integration."""
    gamma = as_character(gamma).with_ambient(4)
    rep = require_ag(gamma)
    d, g = postulation_from_gamma(gamma).degree_genus()
    return CurveInvariants(rep.s, rep.q, rep.m, rep.delta.q, d, g, rep.delta)


def degree_genus_p3(gamma) -> tuple[int, int]:
    """Degree and arithmetic genus of an ACM curve in P^3 with character ``gamma``."""
    gamma = as_character(gamma, 3).with_ambient(3)
    if not is_positive(gamma):
        raise CharacterError(f"character {gamma} is not positive")
    return postulation_from_gamma(gamma).degree_genus()


def degree_genus_closed_form(gamma) -> tuple[int, int]:
    """Moment formulas for (d, g); a shortcut checked against the integration route."""
    gamma = as_character(gamma)
    m1, m2, m3 = gamma.moment(1), gamma.moment(2), gamma.moment(3)
    if gamma.ambient_dim == 3:
        num = m2 - 3 * m1
        return m1, 1 + num // 2
    return -m2 // 2, 1 - m3 // 6 + m2


def hvector_from_gamma(gamma, codim: int) -> list[int]:
    """h-vector by partial summation of ``-gamma`` (codimension 2 or 3)."""
    if codim not in (2, 3):
        raise ValueError("codim must be 2 or 3")
    gamma = as_character(gamma)
    require_admissible(gamma)
    length = gamma.q + 3
    h = partial_sums([-v for v in gamma.values], codim - 1, length)
    if h[-1] != 0 or h[-2] != 0:
        raise CharacterError(f"h-vector of {gamma} does not terminate in codimension {codim}")
    while h and h[-1] == 0:
        h.pop()
    neg = [i for i, v in enumerate(h) if v < 0]
    if neg:
        raise CharacterError(
            f"h-vector of {gamma} has a negative entry at {neg[0]}",
            [Failure("h_nonnegative", neg[0], f"h({neg[0]}) = {h[neg[0]]}")],
        )
    return h


# --------------------------------------------------------------- enumeration


def positive_admissible(max_index: int, ambient_dim: int = 4) -> Iterator[Character]:
    """All positive admissible characters supported in ``[0, max_index]``.

    Yields in ``(q, s, values)`` order.
    """
    found = []
    for s in range(1, max_index + 1):
        # s units of positive mass placed at positions >= s
        for positions in combinations_with_replacement(range(s, max_index + 1), s):
            vals = [-1] * s + [0] * (positions[-1] - s + 1)
            for p in positions:
                vals[p] += 1
            found.append(Character(tuple(vals), ambient_dim))
    found.sort(key=_order_key)
    return iter(found)


def _order_key(ch: Character):
    return (ch.q, require_admissible(ch), ch.values)


def enumerate_ag(q_max: int) -> list[Character]:
    """Every AG character in P^4 with ``q <= q_max``, in ``(q, s, values)`` order."""
    if q_max < 1:
        raise ValueError("q_max must be >= 1")
    deltas = list(positive_admissible(q_max // 2))
    out = []
    for q in range(2, q_max + 1):
        for delta in deltas:
            if 2 * delta.q <= q:
                out.append(gamma_from_delta(delta, q))
    out.sort(key=_order_key)
    return out


def enumerate_acm_p3(d_max: int, connected_only: bool = False) -> list[tuple[Character, int, int]]:
    """Positive admissible P^3 characters of degree ``<= d_max`` with (d, g)."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    out = []
    s = 1
    while s * (s + 1) // 2 <= d_max:
        # degree = sum(positions) - s(s-1)/2
        budget = d_max + s * (s - 1) // 2
        for positions in _bounded_multisets(s, s, budget):
            vals = [-1] * s + [0] * (positions[-1] - s + 1)
            for p in positions:
                vals[p] += 1
            ch = Character(tuple(vals), 3)
            if connected_only and not is_connected(ch):
                continue
            d, g = degree_genus_closed_form(ch)
            out.append((ch, d, g))
        s += 1
    out.sort(key=lambda t: _order_key(t[0]))
    return out


def _bounded_multisets(count: int, lo: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Nondecreasing ``count``-tuples with entries ``>= lo`` and sum ``<= budget``."""
    if count == 0:
        yield ()
        return
    p = lo
    while p * count <= budget:
        for rest in _bounded_multisets(count - 1, p, budget - p):
            yield (p, *rest)
        p += 1


def binom4(k: int) -> int:
    """``C(k + 4, 4)`` with the value 0 for ``k < 0``."""
    return comb(k + 4, 4) if k >= 0 else 0


def complete_intersection_character(degrees: Sequence[int], ambient_dim: int = 4) -> Character:
    """Character of the complete intersection of hypersurfaces of the given degrees.

    Read off the Koszul resolution: ``gamma(n) = -sum (-1)^|S|`` over subsets
    ``S`` of the degrees with ``sum(S) <= n``.
    """
    degrees = [int(a) for a in degrees]
    if any(a < 1 for a in degrees):
        raise ValueError("degrees must be positive")
    total = sum(degrees)
    shifts = [0] * (total + 1)
    for mask in range(1 << len(degrees)):
        size = bin(mask).count("1")
        shifts[sum(a for i, a in enumerate(degrees) if mask >> i & 1)] += (-1) ** size
    vals, acc = [], 0
    for n in range(total + 1):
        acc += shifts[n]
        vals.append(-acc)
    return Character(tuple(vals), ambient_dim)
