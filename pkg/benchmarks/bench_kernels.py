"""Compare the compiled and pure-Python exact kernels.

Times ``bareiss_rank`` on the graded pieces of Pfaffian ideals (the hot loop
of Hilbert-function verification) and ``bareiss_det`` on random integer
matrices.  Times are seconds per call.  Run with ``python3 benchmarks/bench_kernels.py``.
"""

import argparse
import random
import timeit
from math import lcm

from agchar import _kernels_py
from agchar.pfaffianlab import monomials, random_skew, submaximal_pfaffians
from agchar.resolution import BettiDataAG

try:
    from agchar import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def ideal_matrix(betti, n, seed=1):
    """Rows spanning the degree-``n`` piece of the Pfaffian ideal."""
    gens = submaximal_pfaffians(random_skew(betti, seed=seed))
    cols = {e: k for k, e in enumerate(monomials(n))}
    rows = []
    for g in gens:
        scale = lcm(*(c.denominator for c in g.terms.values()))
        for shift in monomials(n - g.degree):
            row = [0] * len(cols)
            for e, c in g.terms.items():
                row[cols[tuple(a + b for a, b in zip(e, shift))]] = int(c * scale)
            rows.append(row)
    return rows


def random_square(n, seed):
    rng = random.Random(seed)
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]


def bench(fn, arg, repeat, number):
    return min(timeit.repeat(lambda: fn(arg), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cases = [
        ("det   6 x 6 random", _kernels_py.bareiss_det, random_square(6, 0)),
        ("rank  8 x 10 random", _kernels_py.bareiss_rank, random_square(10, 1)[:8]),
        ("rank  5 quadrics, degree 5", _kernels_py.bareiss_rank, ideal_matrix(BettiDataAG(5, (2,) * 5), 5)),
        ("rank  7 cubics, degree 5", _kernels_py.bareiss_rank, ideal_matrix(BettiDataAG(7, (3,) * 7), 5)),
        ("rank  7 cubics, degree 6", _kernels_py.bareiss_rank, ideal_matrix(BettiDataAG(7, (3,) * 7), 6)),
        ("det   40 x 40 random", _kernels_py.bareiss_det, random_square(40, 0)),
    ]
    print(f"{'case':32} {'shape':>10} {'python s':>12} {'cython s':>12} {'speedup':>8}")
    for label, py_fn, mat in cases:
        shape = f"{len(mat)}x{len(mat[0])}"
        number = 2000 if len(mat) <= 10 else 1
        tp = bench(py_fn, mat, args.repeat, number)
        if _kernels_c is None:
            print(f"{label:32} {shape:>10} {tp:12.6f} {'n/a':>12} {'n/a':>8}")
            continue
        c_fn = getattr(_kernels_c, py_fn.__name__)
        assert c_fn(mat) == py_fn(mat)
        tc = bench(c_fn, mat, args.repeat, number)
        print(f"{label:32} {shape:>10} {tp:12.6f} {tc:12.6f} {tp / tc:7.2f}x")


if __name__ == "__main__":
    main()
