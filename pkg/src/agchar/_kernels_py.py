"""Pure-Python implementations of the exact linear-algebra kernels.

Mirrors ``_kernels.pyx`` function for function; used when the compiled
extension is unavailable or ``AGCHAR_PURE_PYTHON`` is set.
"""


def bareiss_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.

    ``rows`` is a list of equal-length lists of Python ints; it is copied,
    never mutated.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    prev = 1
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv_row = -1
        for i in range(rank, nrows):
            if m[i][col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != rank:
            m[rank], m[piv_row] = m[piv_row], m[rank]
        pr = m[rank]
        piv = pr[col]
        for i in range(rank + 1, nrows):
            ri = m[i]
            f = ri[col]
            if f == 0:
                for j in range(col + 1, ncols):
                    if ri[j]:
                        ri[j] = ri[j] * piv // prev
            else:
                for j in range(col + 1, ncols):
                    ri[j] = (ri[j] * piv - f * pr[j]) // prev
            ri[col] = 0
        prev = piv
        rank += 1
    return rank


def bareiss_det(rows):
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[k][k]
        pk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - f * pk[j]) // prev
            ri[k] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def iterated_partial_sums(values, k, length):
    """Apply the running-sum operator ``k`` times to ``values`` padded to ``length``."""
    out = [0] * length
    for i, v in enumerate(values[:length]):
        out[i] = v
    for _ in range(k):
        acc = 0
        for i in range(length):
            acc += out[i]
            out[i] = acc
    return out
