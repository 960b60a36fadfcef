"""Independent reference computations used only by the tests.

None of these share code paths with the package: they use closed-form
binomial convolutions, Fraction Gaussian elimination and brute force.
"""

from fractions import Fraction
from itertools import product
from math import comb


def phi_convolution(gamma, N, n_max):
    """phi(n) = -sum_j gamma(j) C(n - j + N - 1, N - 1), the N-fold running sum in closed form."""
    return [-sum(g * comb(n - j + N - 1, N - 1) for j, g in enumerate(gamma) if j <= n) for n in range(n_max + 1)]


def degree_genus_from_phi(gamma, N):
    """Read (d, g) off two values of phi far past the support."""
    n = len(gamma) + N + 5
    p = phi_convolution(gamma, N, n + 1)
    d = p[n + 1] - p[n]
    return d, 1 - (p[n] - d * n)


def check_admissible(gamma):
    """Return s or None."""
    g = list(gamma)
    if not g:
        return None
    s = 0
    while s < len(g) and g[s] == -1:
        s += 1
    if s == 0 or s == len(g) or g[s] < 0 or sum(g) != 0:
        return None
    return s


def is_ag(gamma):
    g = list(gamma)
    s = check_admissible(g)
    if s is None or g != g[::-1]:
        return False
    q = len(g) - 1
    if q % 2 == 0 and g[q // 2] % 2:
        return False
    half = [g[n] if 2 * n < q else (g[n] // 2 if 2 * n == q else 0) for n in range(q + 1)]
    while half and half[-1] == 0:
        half.pop()
    t = check_admissible(half)
    return t is not None and all(v >= 0 for v in half[t:])


def brute_force_ag(q_max):
    """Every AG character with q <= q_max by scanning symmetric integer vectors."""
    out = []
    for q in range(2, q_max + 1):
        half_len = q // 2 + 1
        cap = q + 2
        for head in product(range(-1, cap * 2 + 1), repeat=half_len):
            g = [0] * (q + 1)
            for n, v in enumerate(head):
                g[n] = v
                g[q - n] = v
            if g[0] != -1:
                continue
            if is_ag(g):
                out.append(tuple(g))
    return sorted(set(out))


def descend_formula(gamma, s):
    """gamma'(n) = gamma(n+1) - [n = s-1] - [n = q-s-1] + [n = q-1]."""
    q = len(gamma) - 1

    def G(n):
        return gamma[n] if 0 <= n <= q else 0

    out = [G(n + 1) - (n == s - 1) - (n == q - s - 1) + (n == q - 1) for n in range(q)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def koszul_character(degrees):
    """-(prod (1 - t^d)) / (1 - t) as a coefficient list."""
    poly = [1]
    for d in degrees:
        nxt = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            nxt[i] += c
            nxt[i + d] -= c
        poly = nxt
    out, acc = [], 0
    for c in poly:
        acc += c
        out.append(-acc)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def fraction_det(M):
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        det *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                for c in range(col, n):
                    A[r][c] -= f * A[col][c]
    return det


def fraction_rank(rows):
    A = [[Fraction(x) for x in row] for row in rows]
    if not A:
        return 0
    rank, ncols = 0, len(A[0])
    for col in range(ncols):
        piv = next((r for r in range(rank, len(A)) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        for r in range(len(A)):
            if r != rank and A[r][col]:
                f = A[r][col] / A[rank][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def dot(a1, b1, a2, b2):
    k = max(len(b1), len(b2))
    b1 = list(b1) + [0] * (k - len(b1))
    b2 = list(b2) + [0] * (k - len(b2))
    return a1 * a2 - sum(x * y for x, y in zip(b1, b2))
