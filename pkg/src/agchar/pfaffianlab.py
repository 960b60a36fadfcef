"""Submaximal Pfaffians of skew-symmetric matrices of forms in five variables.

Builds random skew matrices with a prescribed degree matrix, extracts the
ideal generated by the ``(n-1) x (n-1)`` Pfaffians, and measures its
Hilbert function by exact rank computations so it can be compared with a
postulation character.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, lcm
from typing import Sequence

from .charcalc import Character, as_character
from .kernels import bareiss_rank
from .resolution import BettiDataAG, gamma_from_phi, phi_from_betti_ag

NVARS = 5
COEFF_RANGE = [c for c in range(-9, 10) if c]
DEFAULT_MAX_CELLS = 250_000


class ResourceError(RuntimeError):
    """A rank computation would exceed the configured matrix-size budget."""


class GenericityError(RuntimeError):
    def __init__(self, message, attempts):
        super().__init__(message)
        self.attempts = attempts


# ------------------------------------------------------------- polynomials


class Poly:
    """Sparse polynomial in ``x0..x4`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for exps, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                exps = tuple(int(e) for e in exps)
                if len(exps) != NVARS or min(exps) < 0:
                    raise ValueError(f"bad exponent vector {exps}")
                clean[exps] = c
        self.terms = clean

    @classmethod
    def var(cls, i: int, coeff=1) -> "Poly":
        e = [0] * NVARS
        e[i] = 1
        return cls({tuple(e): coeff})

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0,) * NVARS: c})

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else Poly.const(-other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Fraction(other)
            return Poly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    @property
    def degree(self) -> int | None:
        """Total degree of a homogeneous polynomial; None for zero."""
        if not self.terms:
            return None
        degs = {sum(e) for e in self.terms}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def to_json(self):
        return [
            {"exps": list(e), "num": c.numerator, "den": c.denominator}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls({tuple(t["exps"]): Fraction(t["num"], t.get("den", 1)) for t in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def monomials(degree: int, nvars: int = NVARS) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``degree``, in a fixed order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def random_form(degree: int, rng: random.Random) -> Poly:
    """Dense homogeneous form with coefficients drawn from ``[-9, 9] \\ {0}``."""
    return Poly({e: rng.choice(COEFF_RANGE) for e in monomials(degree)})


# ----------------------------------------------------------------- Pfaffians


def pfaffian(M: Sequence[Sequence], one=1):
    """Pfaffian of an even skew-symmetric matrix by expansion along the first row.

    Entries may be ints, Fractions or :class:`Poly`; ``one`` is the unit of
    the coefficient ring.
    """
    n = len(M)
    if n % 2:
        raise ValueError(f"Pfaffian needs an even-size matrix, got {n}")
    return _pf(M, tuple(range(n)), one)


def _pf(M, idx, one):
    if not idx:
        return one
    i = idx[0]
    total = one - one
    for k in range(1, len(idx)):
        e = M[i][idx[k]]
        if not e:
            continue
        term = e * _pf(M, idx[1:k] + idx[k + 1:], one)
        total = total - term if k % 2 == 0 else total + term
    return total


@dataclass(eq=False)
class SkewMatrix:
    """Odd skew-symmetric matrix of forms, stored by its strict upper triangle."""

    n: int
    upper: dict[tuple[int, int], Poly] = field(default_factory=dict)
    degree_matrix: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.n % 2 == 0 or self.n < 1:
            raise ValueError(f"skew matrix size must be odd, got {self.n}")
        for (i, j), p in self.upper.items():
            if not 0 <= i < j < self.n:
                raise ValueError(f"entry ({i}, {j}) is not strictly upper triangular")
            if not p.is_homogeneous():
                raise ValueError(f"entry ({i}, {j}) is not homogeneous")
            if self.degree_matrix is not None and p:
                d = self.degree_matrix[i][j]
                if d <= 0 or p.degree != d:
                    raise ValueError(f"entry ({i}, {j}) has degree {p.degree}, degree matrix says {d}")

    @classmethod
    def from_betti(cls, betti: BettiDataAG, upper) -> "SkewMatrix":
        return cls(len(betti.a), dict(upper), degree_matrix_of(betti))

    def entry(self, i: int, j: int) -> Poly:
        if i == j:
            return Poly()
        if i < j:
            return self.upper.get((i, j), Poly())
        return -self.upper.get((j, i), Poly())

    def full(self) -> list[list[Poly]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def to_json(self):
        return {
            "schema": 1,
            "n": self.n,
            "degree_matrix": [list(r) for r in self.degree_matrix] if self.degree_matrix else None,
            "entries": [
                {"i": i, "j": j, "poly": p.to_json()} for (i, j), p in sorted(self.upper.items()) if p
            ],
        }

    @classmethod
    def from_json(cls, data) -> "SkewMatrix":
        upper = {(e["i"], e["j"]): Poly.from_json(e["poly"]) for e in data["entries"]}
        dm = data.get("degree_matrix")
        return cls(int(data["n"]), upper, tuple(tuple(r) for r in dm) if dm else None)


def degree_matrix_of(betti: BettiDataAG) -> tuple[tuple[int, ...], ...]:
    a, c = betti.a, betti.c
    return tuple(tuple(c - a[i] - a[j] for j in range(len(a))) for i in range(len(a)))


def submaximal_pfaffians(M: SkewMatrix) -> list[Poly]:
    """The ``n`` Pfaffians of ``M`` with row and column ``i`` deleted (signed ``(-1)^i``)."""
    full = M.full()
    one = Poly.const(1)
    gens = []
    for i in range(M.n):
        keep = [k for k in range(M.n) if k != i]
        sub = [[full[r][c] for c in keep] for r in keep]
        pf = pfaffian(sub, one)
        if i % 2:
            pf = -pf
        if not pf.is_homogeneous():
            raise ValueError(f"Pfaffian {i} is not homogeneous")
        if M.degree_matrix is not None and pf:
            expected = sum(M.degree_matrix[keep[k]][keep[k + 1]] for k in range(0, len(keep), 2))
            if pf.degree != expected:
                raise ValueError(f"Pfaffian {i} has degree {pf.degree}, degree matrix predicts {expected}")
        gens.append(pf)
    return gens


# ----------------------------------------------------------- Hilbert function


def _integer_row(p: Poly, scale: int, shift: tuple[int, ...], columns: dict) -> list[int]:
    row = [0] * len(columns)
    for e, c in p.terms.items():
        key = tuple(a + b for a, b in zip(e, shift))
        row[columns[key]] = int(c * scale)
    return row


def ideal_hilbert_function(gens: Sequence[Poly], n_max: int, max_cells: int = DEFAULT_MAX_CELLS) -> list[int]:
    """``dim I_n`` for ``n = 0..n_max`` where ``I`` is generated by ``gens``."""
    gens = [g for g in gens if g]
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    scaled = [(g, lcm(*(c.denominator for c in g.terms.values())), g.degree) for g in gens]
    out = []
    for n in range(n_max + 1):
        cols = monomials(n)
        n_rows = sum(comb(n - d + NVARS - 1, NVARS - 1) for _, _, d in scaled if d <= n)
        if n_rows * len(cols) > max_cells:
            raise ResourceError(
                f"degree {n} needs a {n_rows} x {len(cols)} matrix, over the budget of {max_cells} cells"
            )
        index = {e: k for k, e in enumerate(cols)}
        rows = []
        for g, scale, d in scaled:
            if d > n:
                continue
            for shift in monomials(n - d):
                rows.append(_integer_row(g, scale, shift, index))
        out.append(bareiss_rank(rows) if rows else 0)
    return out


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    n_max: int
    ideal_dims: tuple[int, ...]
    phi: tuple[int, ...]
    gamma_computed: tuple[int, ...]
    gamma_expected: tuple[int, ...]
    first_mismatch: int | None

    def to_dict(self):
        return {
            "ok": self.ok,
            "n_max": self.n_max,
            "ideal_dims": list(self.ideal_dims),
            "phi": list(self.phi),
            "gamma_computed": list(self.gamma_computed),
            "gamma_expected": list(self.gamma_expected),
            "first_mismatch": self.first_mismatch,
        }


def verify_character(M: SkewMatrix, expected, n_max: int = 5, max_cells: int = DEFAULT_MAX_CELLS) -> VerificationReport:
    """Compare the Pfaffian ideal's Hilbert function with ``expected`` on ``0..n_max``."""
    expected = as_character(expected).with_ambient(4)
    gens = submaximal_pfaffians(M)
    dims = ideal_hilbert_function(gens, n_max, max_cells)
    phi = [comb(n + 4, 4) - dims[n] for n in range(n_max + 1)]
    computed = gamma_from_phi(phi)
    got = tuple(computed[n] for n in range(n_max + 1))
    want = tuple(expected[n] for n in range(n_max + 1))
    mism = next((n for n in range(n_max + 1) if got[n] != want[n]), None)
    return VerificationReport(mism is None, n_max, tuple(dims), tuple(phi), got, want, mism)


def draw_skew(betti: BettiDataAG, rng: random.Random) -> SkewMatrix:
    dm = degree_matrix_of(betti)
    n = len(betti.a)
    upper = {}
    for i in range(n):
        for j in range(i + 1, n):
            if dm[i][j] > 0:
                upper[(i, j)] = random_form(dm[i][j], rng)
    return SkewMatrix(n, upper, dm)


@dataclass(frozen=True)
class Realization:
    matrix: SkewMatrix
    report: VerificationReport
    attempts: int
    expected: Character


def realize_betti(betti: BettiDataAG, seed: int = 0, attempts: int = 5, n_max: int = 5,
                  max_cells: int = DEFAULT_MAX_CELLS) -> Realization:
    """Draw seeded skew matrices until one realizes the character predicted by ``betti``."""
    if len(betti.a) % 2 == 0:
        raise ValueError("a skew matrix of Pfaffians needs an odd number of generators")
    expected = gamma_from_phi(phi_from_betti_ag(betti, max(n_max, betti.c + 4)))
    rng = random.Random(seed)
    last = None
    for k in range(1, attempts + 1):
        M = draw_skew(betti, rng)
        last = verify_character(M, expected, n_max, max_cells)
        if last.ok:
            return Realization(M, last, k, expected)
    raise GenericityError(
        f"no generic matrix for a={list(betti.a)}, c={betti.c} in {attempts} attempts "
        f"(first mismatch at n={last.first_mismatch})",
        attempts,
    )


def random_skew(betti: BettiDataAG, seed: int = 0, attempts: int = 5, n_max: int = 5) -> SkewMatrix:
    return realize_betti(betti, seed, attempts, n_max).matrix
