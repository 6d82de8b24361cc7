"""Named ternary codes used throughout the package."""

import numpy as np

from .codes import TernaryCode, direct_sum

G11_ROWS = [
    "10000201221",
    "01000210122",
    "00100221012",
    "00010222101",
    "00001212210",
]

P13_ROWS = [
    "1000002212001",
    "0100001012202",
    "0010002010221",
    "0001001022021",
    "0000101220201",
    "0000011210022",
]

EQ2_GLUE_ROW = "00000011111" + "1101000001000"


def e4():
    """The tetracode, the unique self-dual [4,2,3] code."""
    return TernaryCode.from_rows(["1021", "0122"])


def _legendre(a, q):
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def symmetry_code(q):
    """Pless symmetry code of length 2q+2: generator [I | S] with S the
    bordered Paley matrix of the prime q (q = 2 mod 3)."""
    s = np.zeros((q + 1, q + 1), dtype=np.int64)
    s[0, 1:] = 1
    s[1:, 0] = _legendre(-1, q)
    for i in range(q):
        for j in range(q):
            s[i + 1, j + 1] = _legendre(j - i, q)
    return TernaryCode(np.hstack([np.eye(q + 1, dtype=np.int64), s % 3]))


def g12():
    """Extended ternary Golay code [12,6,6] (the symmetry code for q=5)."""
    return symmetry_code(5)


def p24():
    """Pless symmetry code [24,12,9]."""
    return symmetry_code(11)


def _poly_mul_mod3(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % 3
    return out


def _quadratic_residue_generator(p):
    """Generator polynomial (low degree first) of the ternary QR code of length p.

    Built as prod (x - z^r) over quadratic residues r, with z a primitive
    p-th root of unity in GF(3^m); the product has coefficients in GF(3).
    """
    m = 1
    while pow(3, m, p) != 1:
        m += 1
    field = _GF3Ext(m)
    z = field.root_of_unity(p)
    residues = sorted({(i * i) % p for i in range(1, p)})
    poly = [field.one()]
    for r in residues:
        root = field.pow(z, r)
        # multiply poly by (x - root)
        new = [field.zero()] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] = field.add(new[i + 1], c)
            new[i] = field.add(new[i], field.neg(field.mul(c, root)))
        poly = new
    coeffs = []
    for c in poly:
        if any(c[1:]):
            raise ArithmeticError("QR generator polynomial not over GF(3)")
        coeffs.append(c[0])
    return coeffs


class _GF3Ext:
    """GF(3^m) as polynomials mod a fixed irreducible, elements as tuples."""

    def __init__(self, m):
        self.m = m
        self.modulus = self._find_irreducible(m)

    @staticmethod
    def _find_irreducible(m):
        from itertools import product
        for tail in product(range(3), repeat=m):
            f = list(tail) + [1]  # monic, low degree first
            if f[0] == 0:
                continue
            if _is_irreducible(f):
                return f
        raise ArithmeticError("no irreducible polynomial found")

    def zero(self):
        return (0,) * self.m

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def add(self, a, b):
        return tuple((x + y) % 3 for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % 3 for x in a)

    def mul(self, a, b):
        prod = _poly_mul_mod3(list(a), list(b))
        f = self.modulus
        for d in range(len(prod) - 1, self.m - 1, -1):
            c = prod[d]
            if c:
                for i in range(self.m + 1):
                    prod[d - self.m + i] = (prod[d - self.m + i] - c * f[i]) % 3
        return tuple(prod[:self.m]) + (0,) * max(0, self.m - len(prod))

    def pow(self, a, e):
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def root_of_unity(self, p):
        from itertools import product
        order = 3 ** self.m - 1
        for coeffs in product(range(3), repeat=self.m):
            a = tuple(coeffs)
            if a == self.zero():
                continue
            z = self.pow(a, order // p)
            if z != self.one():
                return z
        raise ArithmeticError("no primitive root of unity of order %d" % p)


def _is_irreducible(f):
    # trial division by all monic polynomials of degree <= deg/2
    from itertools import product
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for tail in product(range(3), repeat=d):
            g = list(tail) + [1]
            if _poly_rem(f, g) == [0] * d:
                return False
    return True


def _poly_rem(f, g):
    r = list(f)
    dg = len(g) - 1
    for d in range(len(r) - 1, dg - 1, -1):
        c = r[d]
        if c:
            for i in range(dg + 1):
                r[d - dg + i] = (r[d - dg + i] - c * g[i]) % 3
    return r[:dg]


def quadratic_residue_code(p):
    """Extended ternary quadratic residue code of length p+1 (p = +-1 mod 12).

    The cyclic code is extended by an overall coordinate chosen so that the
    result is self-dual.
    """
    g = _quadratic_residue_generator(p)
    k = p - (len(g) - 1)
    rows = np.zeros((k, p), dtype=np.int64)
    for i in range(k):
        rows[i, i:i + len(g)] = g
    for eps in (1, 2):
        ext = np.hstack([rows, (eps * rows.sum(axis=1, keepdims=True)) % 3])
        # the all-ones-like row keeps the dimension at (p+1)/2
        ones = np.ones((1, p + 1), dtype=np.int64)
        cand = TernaryCode(np.vstack([ext, ones]))
        if cand.dimension == (p + 1) // 2:
            from .codes import is_self_dual
            if is_self_dual(cand):
                return cand
    raise ArithmeticError("could not extend the QR code to a self-dual code")


def qr24():
    """Extended quadratic residue code [24,12,9]."""
    return quadratic_residue_code(23)


def eq2_code():
    """The [24,12,6] code with generator blocks G11, P13 and one glue row."""
    rows = []
    for r in G11_ROWS:
        rows.append(r + "0" * 13)
    for r in P13_ROWS:
        rows.append("0" * 11 + r)
    rows.append(EQ2_GLUE_ROW)
    return TernaryCode.from_rows(rows)


def e4_power(m):
    return direct_sum(*([e4()] * m))


def builtin_codes():
    return {
        "e4": e4(),
        "g12": g12(),
        "qr24": qr24(),
        "p24": p24(),
        "eq2_code": eq2_code(),
    }
