"""Row reduction and kernels over GF(3).

Matrices are numpy integer arrays with entries in {0, 1, 2}.
"""

import numpy as np

INV = (0, 1, 2)  # multiplicative inverse mod 3 (index 0 unused)


def as_gf3(a):
    return np.asarray(a, dtype=np.int64) % 3


def rref(a):
    """Reduced row echelon form mod 3.

    Returns ``(r, pivots)`` where ``r`` keeps only the nonzero rows.
    """
    m = as_gf3(a).copy()
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = (m[r] * INV[m[r, c]]) % 3
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % 3
        pivots.append(c)
        r += 1
    return m[:r].copy(), tuple(pivots)


def rank(a):
    return len(rref(a)[1])


def kernel(a, ncols=None):
    """Basis (as rows) of {x : a x^T = 0} over GF(3)."""
    a = as_gf3(a)
    if a.size == 0:
        n = a.shape[1] if a.ndim == 2 else ncols
        return np.eye(n, dtype=np.int64)
    r, pivots = rref(a)
    n = a.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = (-r[row, f]) % 3
    return basis


def in_span(rows, v):
    """True if ``v`` lies in the row space of ``rows``."""
    rows = as_gf3(rows)
    if rows.shape[0] == 0:
        return not np.any(as_gf3(v))
    return rank(np.vstack([rows, as_gf3(v)[None, :]])) == rank(rows)
