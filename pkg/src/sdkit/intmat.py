"""Exact integer matrix routines on lists of Python ints."""

from fractions import Fraction

import numpy as np


def to_rows(a):
    return [[int(x) for x in row] for row in np.asarray(a, dtype=object)]


def det(a):
    """Determinant by fraction-free Bareiss elimination."""
    m = to_rows(a)
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf(a):
    """Row-style Hermite normal form; returns the nonzero rows.

    The rows form a basis of the Z-span of the rows of ``a``.
    """
    m = to_rows(a)
    if not m:
        return []
    ncols = len(m[0])
    out = []
    row = 0
    for c in range(ncols):
        # gcd-combine column c over rows[row:]
        piv = None
        for i in range(row, len(m)):
            if m[i][c] == 0:
                continue
            if piv is None:
                piv = i
                continue
            a_, b_ = m[piv][c], m[i][c]
            g, x, y = _xgcd(a_, b_)
            ra, rb = m[piv], m[i]
            new_piv = [x * p + y * q for p, q in zip(ra, rb)]
            new_i = [(b_ // g) * p - (a_ // g) * q for p, q in zip(ra, rb)]
            m[piv], m[i] = new_piv, new_i
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        if m[row][c] < 0:
            m[row] = [-x for x in m[row]]
        p = m[row][c]
        for i in range(row):
            q = m[i][c] // p
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[row])]
        row += 1
    out = [r for r in m[:row]]
    return out


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def solve_rational(a, b):
    """Solve x a = b for the row vector x (a square, invertible) exactly."""
    n = len(a)
    # transpose system: a^T x^T = b^T
    m = [[Fraction(a[j][i]) for j in range(n)] + [Fraction(b[i])]
         for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def inverse_rational(a):
    n = len(a)
    m = [[Fraction(int(a[i][j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def solve_mod2(a, b):
    """Solve a x = b over GF(2) for square invertible ``a``."""
    n = len(a)
    m = [[int(a[i][j]) & 1 for j in range(n)] + [int(b[i]) & 1] for i in range(n)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c])
        m[c], m[p] = m[p], m[c]
        for i in range(n):
            if i != c and m[i][c]:
                m[i] = [x ^ y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def gram_lll(gram, delta=Fraction(3, 4)):
    """Integral LLL on a positive definite Gram matrix.

    Returns ``(reduced_gram, transform)`` with reduced = T G T^T and T
    unimodular.  Exact integer arithmetic throughout (Cohen, Alg. 2.6.7).
    """
    g = to_rows(gram)
    n = len(g)
    h = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return g, h
    lam = [[0] * n for _ in range(n)]
    d = [0] * (n + 1)  # d[i+1] is the i-th leading minor, d[0] = 1
    d[0] = 1
    d[1] = g[0][0]
    num, den = delta.numerator, delta.denominator
    k = 1
    kmax = 0

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            h[k] = [x - q * y for x, y in zip(h[k], h[l])]
            # Gram: row/col k -= q * row/col l
            g[k] = [x - q * y for x, y in zip(g[k], g[l])]
            for i in range(n):
                g[i][k] -= q * g[i][l]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        h[k], h[k - 1] = h[k - 1], h[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        b = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (b * t + lm * lam[i][k]) // d[k + 1]
        d[k] = b

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = g[k][j]
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise ValueError("Gram matrix is not positive definite")
                    d[k + 1] = u
        while True:
            red(k, k - 1)
            # Lovasz: d_k d_{k-2} * den >= num d_{k-1}^2 - den*lam^2  (scaled)
            if den * d[k + 1] * d[k - 1] < num * d[k] * d[k] - den * lam[k][k - 1] ** 2:
                swap(k)
                k = max(1, k - 1)
            else:
                for l in range(k - 2, -1, -1):
                    red(k, l)
                k += 1
                break
    return g, h


def _round_div(a, b):
    """Nearest integer to a/b for b > 0 (ties toward +inf)."""
    return (2 * a + b) // (2 * b)
