"""Integral lattices given by Gram matrices, and standard constructions."""

from fractions import Fraction
from functools import cached_property

import numpy as np

from . import intmat
from .enumeration import enumerate_short
from .exceptions import InvalidLatticeError


class LatticeGram:
    """An integral positive definite lattice presented by a basis Gram matrix.

    ``embedding`` optionally records integer coordinates ``B`` of the basis
    in an ambient space where inner products are ``B B^T / scale``.  It is
    used to compare lattices living in the same ambient space exactly.
    """

    def __init__(self, gram, name=None, embedding=None, check=True):
        g = np.array(gram, dtype=object)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise InvalidLatticeError("Gram matrix must be square")
        self.gram = np.array([[int(x) for x in row] for row in g], dtype=np.int64) \
            if g.size else np.zeros((0, 0), dtype=np.int64)
        self.gram.setflags(write=False)
        self.name = name
        self.embedding = embedding
        if check:
            if not np.array_equal(self.gram, self.gram.T):
                raise InvalidLatticeError("Gram matrix is not symmetric")
            if self.rank and not _is_positive_definite(self.gram):
                raise InvalidLatticeError("Gram matrix is not positive definite")

    def __repr__(self):
        label = " %s" % self.name if self.name else ""
        return "LatticeGram(rank=%d%s)" % (self.rank, label)

    @property
    def rank(self):
        return self.gram.shape[0]

    @cached_property
    def determinant(self):
        return intmat.det(self.gram)

    def is_unimodular(self):
        return self.determinant == 1

    def is_even(self):
        return bool(np.all(self.gram.diagonal() % 2 == 0))

    def is_odd(self):
        return not self.is_even()

    def norm(self, v):
        v = np.asarray(v, dtype=object)
        return v @ self.gram.astype(object) @ v

    def inner(self, v, w):
        return np.asarray(v, dtype=object) @ self.gram.astype(object) @ np.asarray(w, dtype=object)

    def transform(self, u, name=None):
        """Lattice with basis rows U B (same lattice if U is unimodular)."""
        u = np.array(u, dtype=object)
        g = u @ self.gram.astype(object) @ u.T
        emb = None
        if self.embedding is not None:
            basis, scale = self.embedding
            emb = (u @ np.array(basis, dtype=object), scale)
        return LatticeGram(g, name=name or self.name, embedding=emb)

    @cached_property
    def _reduced(self):
        g, h = intmat.gram_lll(self.gram, Fraction(99, 100))
        return np.array(g, dtype=object), np.array(h, dtype=object)

    def reduced(self):
        """LLL-reduced Gram and the transform T (reduced = T G T^T)."""
        return self._reduced

    def __eq__(self, other):
        if not isinstance(other, LatticeGram):
            return NotImplemented
        return np.array_equal(self.gram, other.gram)

    def __hash__(self):
        return hash(self.gram.tobytes())


def _is_positive_definite(g):
    # Sylvester: all leading principal minors positive
    n = g.shape[0]
    for k in range(1, n + 1):
        if intmat.det(g[:k, :k]) <= 0:
            return False
    return True


def from_basis(basis, scale=1, name=None):
    """Lattice spanned by integer rows ``basis`` with inner product x.y/scale."""
    b = np.array(basis, dtype=object)
    g = b @ b.T
    if np.any(g % scale != 0):
        raise InvalidLatticeError("basis is not integral at scale %d" % scale)
    return LatticeGram(g // scale, name=name, embedding=(b, scale))


def from_generators(gens, scale=1, name=None):
    """Lattice generated by integer rows (not necessarily independent)."""
    basis = intmat.hnf(gens)
    return from_basis(basis, scale=scale, name=name)


def same_lattice(l1, l2):
    """True if two embedded lattices are equal as point sets."""
    if l1.embedding is None or l2.embedding is None:
        raise ValueError("both lattices need an ambient embedding")
    (b1, s1), (b2, s2) = l1.embedding, l2.embedding
    if s1 != s2 or np.shape(b1) != np.shape(b2):
        return False
    return intmat.hnf(b1) == intmat.hnf(b2)


# -- short vectors ---------------------------------------------------------


def _canonical_sign(v):
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def short_vectors(lattice, max_norm, min_norm=1):
    """One vector per +-pair with min_norm <= norm <= max_norm.

    Vectors are integer coordinate tuples in the lattice basis, sorted by
    (norm, coordinates); the representative has first nonzero entry > 0.
    """
    key = (int(max_norm), int(min_norm))
    cache = lattice.__dict__.setdefault("_sv_cache", {})
    for (mx, mn), vecs in cache.items():
        if mx >= key[0] and mn <= key[1]:
            return [(v, q) for v, q in vecs if key[1] <= q <= key[0]]
    red, h = lattice.reduced()
    found = enumerate_short(red, max_norm)
    hm = [list(map(int, row)) for row in h]
    n = lattice.rank
    out = set()
    for x, q in found:
        if q < min_norm:
            continue
        v = tuple(sum(x[i] * hm[i][j] for i in range(n)) for j in range(n))
        out.add((_canonical_sign(v), int(q)))
    result = sorted(out, key=lambda vq: (vq[1], vq[0]))
    cache[key] = result
    return result


def vectors_of_norm(lattice, norm):
    return [v for v, q in short_vectors(lattice, norm, norm)]


def min_norm(lattice):
    bound = int(min(lattice.gram.diagonal()))
    vecs = short_vectors(lattice, bound)
    return min(q for _, q in vecs)


def kissing_number(lattice):
    m = min_norm(lattice)
    return 2 * len(vectors_of_norm(lattice, m))


def theta_prefix(lattice, upto):
    """Counts of vectors (both signs) of norms 1..upto."""
    counts = [0] * (upto + 1)
    for _, q in short_vectors(lattice, upto):
        counts[q] += 2
    return tuple(counts[1:])


# -- standard lattices -----------------------------------------------------


def integer_lattice(n):
    return from_basis(np.eye(n, dtype=np.int64), name="Z^%d" % n)


def d_lattice(n):
    """Root lattice D_n (coordinate sum even)."""
    basis = []
    for i in range(n - 1):
        r = [0] * n
        r[i], r[i + 1] = 1, -1
        basis.append(r)
    r = [0] * n
    r[n - 2], r[n - 1] = 1, 1
    basis.append(r)
    return from_basis(basis, name="D_%d" % n)


def d_plus(n):
    """D_n^+ = D_n together with the glue vector (1/2, ..., 1/2); n = 0 mod 4.

    Coordinates are doubled, so the ambient scale is 4.
    """
    if n % 4:
        raise ValueError("D_n^+ is integral only for n = 0 mod 4")
    gens = [[2 * x for x in row] for row in intmat.to_rows(d_lattice(n).embedding[0])]
    gens.append([1] * n)
    return from_generators(gens, scale=4, name="D_%d+" % n)


def e8():
    """E_8 as D_8^+ (even unimodular)."""
    lat = d_plus(8)
    lat.name = "E_8"
    return lat


def direct_sum(*lattices, name=None):
    n = sum(l.rank for l in lattices)
    g = np.zeros((n, n), dtype=object)
    off = 0
    for l in lattices:
        r = l.rank
        g[off:off + r, off:off + r] = l.gram
        off += r
    emb = None
    if all(l.embedding is not None for l in lattices):
        scales = {l.embedding[1] for l in lattices}
        scale = int(np.lcm.reduce(list(scales)))
        dims = [np.shape(l.embedding[0])[1] for l in lattices]
        b = np.zeros((n, sum(dims)), dtype=object)
        roff = coff = 0
        for l, dm in zip(lattices, dims):
            basis, s = l.embedding
            # rescale coordinates so that all pieces share one scale
            f = scale // s
            root = int(round(f ** 0.5))
            if root * root != f:
                b = None
                break
            b[roff:roff + l.rank, coff:coff + dm] = np.array(basis, dtype=object) * root
            roff += l.rank
            coff += dm
        if b is not None:
            emb = (b, scale)
    if name is None:
        names = [l.name for l in lattices]
        name = "+".join(names) if all(names) else None
    return LatticeGram(g, name=name, embedding=emb)


def builtin_lattices():
    return {
        "Z4": integer_lattice(4),
        "Z8": integer_lattice(8),
        "Z12": integer_lattice(12),
        "E8": e8(),
        "D12+": d_plus(12),
        "E8+Z4": direct_sum(e8(), integer_lattice(4)),
        "D12+ + D12+": direct_sum(d_plus(12), d_plus(12)),
        "Z24": integer_lattice(24),
    }


def parity_vector(lattice):
    """Coefficients w with (x, x) = sum_i w_i x_i (mod 2)."""
    return [int(x) % 2 for x in lattice.gram.diagonal()]


def characteristic_vector(lattice):
    """A vector u of a unimodular lattice with (x, u) = (x, x) mod 2 for all x."""
    if not lattice.is_unimodular():
        raise InvalidLatticeError("characteristic vectors need a unimodular lattice")
    rows = intmat.to_rows(lattice.gram)
    return intmat.solve_mod2(rows, parity_vector(lattice))


def to_fraction_vector(v):
    return [Fraction(x) for x in v]
