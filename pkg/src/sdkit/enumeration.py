"""Exact Fincke-Pohst enumeration of short lattice (coset) vectors.

Everything runs over the integers and Fractions: the quadratic form is
written as sum_i D_i (x_i - c_i)^2 with rational D_i and centers, and the
admissible range of each coordinate is found with integer square roots.
"""

from fractions import Fraction
from math import isqrt, lcm

from .exceptions import SearchBudgetExceeded
from .intmat import to_rows

DEFAULT_NODE_BUDGET = 50_000_000


def ldl(gram):
    """Return (D, U) with q(x) = sum_i D_i (x_i + sum_{j>i} U_ij x_j)^2."""
    g = to_rows(gram)
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        s = a[i][i] - sum(u[k][i] ** 2 * d[k] for k in range(i))
        if s <= 0:
            raise ValueError("Gram matrix is not positive definite")
        d[i] = s
        u[i][i] = Fraction(1)
        for j in range(i + 1, n):
            t = a[i][j] - sum(u[k][i] * u[k][j] * d[k] for k in range(i))
            u[i][j] = t / s
    return d, u


def enumerate_short(gram, bound, shift=None, node_budget=DEFAULT_NODE_BUDGET,
                    include_zero=False):
    """All integer x with q(x + shift) <= bound.

    ``shift`` is an optional rational vector; ``bound`` a rational number.
    Returns a list of (x, q) with q = q(x + shift) as a Fraction.
    """
    g = to_rows(gram)
    n = len(g)
    bound = Fraction(bound)
    if n == 0:
        return [((), Fraction(0))] if include_zero else []
    d, u = ldl(g)
    if shift is None:
        shift = [Fraction(0)] * n
    shift = [Fraction(s) for s in shift]
    tden = lcm(*(s.denominator for s in shift))
    tnum = [int(s * tden) for s in shift]

    # per row i: U_ij = num[i][j] / rden[i]
    rden = [lcm(*(u[i][j].denominator for j in range(i + 1, n))) if i + 1 < n else 1
            for i in range(n)]
    num = [[int(u[i][j] * rden[i]) if j > i else 0 for j in range(n)] for i in range(n)]
    den = [rden[i] * tden for i in range(n)]
    dp = [x.numerator for x in d]
    dq = [x.denominator for x in d]

    # scale the form by a common denominator so remainders stay integral
    scale = bound.denominator
    for i in range(n):
        scale = lcm(scale, dq[i] * den[i] * den[i])
    wt = [dp[i] * (scale // (dq[i] * den[i] * den[i])) for i in range(n)]

    x = [0] * n
    hi = [0] * n
    rem = [0] * (n + 1)
    anum = [0] * n
    rem[n] = int(bound * scale)
    out = []
    nodes = 0

    def setup(i):
        # center c_i = a / den[i]; need wt_i (x den - a)^2 <= rem
        a = -tnum[i] * rden[i]
        row = num[i]
        for j in range(i + 1, n):
            c = row[j]
            if c:
                a -= c * (x[j] * tden + tnum[j])
        anum[i] = a
        r = rem[i + 1]
        if r < 0:
            return False
        dd = den[i]
        m = isqrt(r // wt[i])
        lo = -((m - a) // dd)  # ceil((a - m) / dd)
        x[i] = lo
        hi[i] = (a + m) // dd
        return lo <= hi[i]

    i = n - 1
    if not setup(i):
        return out
    top = rem[n]
    while True:
        nodes += 1
        if nodes > node_budget:
            raise SearchBudgetExceeded("short vector enumeration exceeded %d nodes"
                                       % node_budget, progress=len(out))
        if x[i] > hi[i]:
            i += 1
            if i == n:
                break
            x[i] += 1
            continue
        t = x[i] * den[i] - anum[i]
        r = rem[i + 1] - wt[i] * t * t
        if r < 0:
            x[i] += 1
            continue
        if i == 0:
            out.append((tuple(x), Fraction(top - r, scale)))
            x[0] += 1
            continue
        rem[i] = r
        i -= 1
        if not setup(i):
            i += 1
            x[i] += 1
    if not include_zero and tnum == [0] * n:
        out = [(v, q) for v, q in out if any(v)]
    return out
