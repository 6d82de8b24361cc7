"""Ternary linear codes: duality, weights, monomial equivalence, decomposition, mass."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from . import gf3
from ._nauty import ColoredGraph, automorphisms, canonical
from .exceptions import DimensionTooLargeError, NotSelfDualError
from .permgroup import schreier_sims

MAX_ENUM_DIMENSION = 16


class TernaryCode:
    """Linear code over GF(3) stored by its reduced row echelon generator.

    Two codes compare equal iff they are the same subspace of GF(3)^n.
    """

    def __init__(self, generator, length=None):
        g = gf3.as_gf3(generator)
        if g.ndim == 1:
            g = g.reshape(1, -1) if g.size else g.reshape(0, length or 0)
        if g.shape[0] == 0 and length is not None:
            g = np.zeros((0, length), dtype=np.int64)
        r, pivots = gf3.rref(g) if g.shape[0] else (g, ())
        self.generator = r.astype(np.int8)
        self.generator.setflags(write=False)
        self.pivots = pivots
        self.length = g.shape[1]
        self.dimension = len(pivots)
        self._codewords = None
        self._wd = None

    n = property(lambda self: self.length)
    k = property(lambda self: self.dimension)

    @classmethod
    def from_rows(cls, rows):
        """Build from strings like ``"1021"`` (spaces ignored)."""
        mat = [[int(ch) for ch in row if not ch.isspace()] for row in rows]
        return cls(np.array(mat, dtype=np.int64))

    def __eq__(self, other):
        if not isinstance(other, TernaryCode):
            return NotImplemented
        return (self.length == other.length
                and np.array_equal(self.generator, other.generator))

    def __hash__(self):
        return hash((self.length, self.generator.tobytes()))

    def __repr__(self):
        return "TernaryCode([%d, %d])" % (self.length, self.dimension)

    def contains(self, word):
        word = gf3.as_gf3(word)
        if self.dimension == 0:
            return not word.any()
        # reduce against pivots
        coeffs = word[list(self.pivots)]
        return np.array_equal((coeffs @ self.generator) % 3, word)

    def codewords(self):
        """All 3^k codewords as an int8 array (cached)."""
        if self._codewords is None:
            blocks = list(iter_codeword_blocks(self))
            self._codewords = np.vstack(blocks)
            self._codewords.setflags(write=False)
        return self._codewords

    def rows_as_strings(self):
        return ["".join(str(int(x)) for x in row) for row in self.generator]


def iter_codeword_blocks(code, block_dim=11):
    """Yield codewords in blocks of at most 3**block_dim rows."""
    k, n = code.dimension, code.length
    if k > MAX_ENUM_DIMENSION:
        raise DimensionTooLargeError(
            "dimension %d exceeds the enumeration budget (%d)" % (k, MAX_ENUM_DIMENSION))
    g = code.generator.astype(np.int64)
    if k == 0:
        yield np.zeros((1, n), dtype=np.int8)
        return
    low = min(k, block_dim)
    idx = np.arange(3 ** low)
    low_msgs = np.stack([(idx // 3 ** j) % 3 for j in range(low)], axis=1)
    low_words = (low_msgs @ g[k - low:]) % 3
    for prefix in product(range(3), repeat=k - low):
        shift = (np.asarray(prefix, dtype=np.int64) @ g[:k - low]) % 3 if prefix else 0
        yield ((low_words + shift) % 3).astype(np.int8)


class WeightDistribution(tuple):
    """Counts of codewords per Hamming weight 0..n."""

    def __new__(cls, counts):
        return super().__new__(cls, (int(c) for c in counts))

    @property
    def length(self):
        return len(self) - 1

    @property
    def min_weight(self):
        for i, c in enumerate(self):
            if i and c:
                return i
        return None

    def total(self):
        return sum(self)

    def __getitem__(self, i):
        if isinstance(i, int) and i >= len(self):
            return 0
        return super().__getitem__(i)

    def nonzero(self):
        return {i: c for i, c in enumerate(self) if c}


def weight_distribution(code):
    if code._wd is None:
        counts = np.zeros(code.length + 1, dtype=np.int64)
        for block in iter_codeword_blocks(code):
            w = np.count_nonzero(block, axis=1)
            counts += np.bincount(w, minlength=code.length + 1)
        code._wd = WeightDistribution(counts)
    return code._wd


def minimum_weight(code):
    return weight_distribution(code).min_weight


def dual(code):
    g = code.generator
    if code.dimension == 0:
        return TernaryCode(np.eye(code.length, dtype=np.int64))
    return TernaryCode(gf3.kernel(g), length=code.length)


def is_self_dual(code):
    if 2 * code.dimension != code.length:
        return False
    g = code.generator.astype(np.int64)
    return not np.any((g @ g.T) % 3)


def _require_self_dual(code):
    if not is_self_dual(code):
        raise NotSelfDualError("%r is not self-dual" % code)


def extremal_bound(n):
    return 3 * (n // 12) + 3


def is_extremal(code):
    _require_self_dual(code)
    return minimum_weight(code) == extremal_bound(code.length)


def direct_sum(*codes):
    n = sum(c.length for c in codes)
    rows = []
    offset = 0
    for c in codes:
        for r in c.generator:
            row = np.zeros(n, dtype=np.int64)
            row[offset:offset + c.length] = r
            rows.append(row)
        offset += c.length
    if not rows:
        return TernaryCode(np.zeros((0, n)), length=n)
    return TernaryCode(np.array(rows))


# -- monomial transforms ---------------------------------------------------


@dataclass(frozen=True)
class MonomialTransform:
    """x -> x.P where P[i, perm[i]] = sign[i] (sign in {1, -1})."""

    perm: tuple
    sign: tuple

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        if len(self.sign) != len(self.perm) or any(s not in (1, -1) for s in self.sign):
            raise ValueError("signs must be +1/-1, one per coordinate")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def random(cls, n, rng):
        return cls(tuple(int(x) for x in rng.permutation(n)),
                   tuple(int(s) for s in rng.choice([1, -1], size=n)))

    @property
    def n(self):
        return len(self.perm)

    def matrix(self):
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for i, (j, s) in enumerate(zip(self.perm, self.sign)):
            m[i, j] = s
        return m

    def apply(self, words):
        """Apply to a vector or to the rows of a matrix over GF(3)."""
        words = np.asarray(words, dtype=np.int64)
        out = np.empty_like(words)
        out[..., list(self.perm)] = words * np.asarray(self.sign)
        return out % 3

    def apply_code(self, code):
        return TernaryCode(self.apply(code.generator), length=code.length)

    def compose(self, other):
        """Apply ``self`` first, then ``other``."""
        perm = tuple(other.perm[j] for j in self.perm)
        sign = tuple(s * other.sign[j] for s, j in zip(self.sign, self.perm))
        return MonomialTransform(perm, sign)

    def inverse(self):
        perm = [0] * self.n
        sign = [0] * self.n
        for i, (j, s) in enumerate(zip(self.perm, self.sign)):
            perm[j] = i
            sign[j] = s
        return MonomialTransform(tuple(perm), tuple(sign))

    def to_points(self):
        """Permutation of the 2n signed points (i, +) -> 2i, (i, -) -> 2i+1."""
        p = np.empty(2 * self.n, dtype=np.int32)
        for i, (j, s) in enumerate(zip(self.perm, self.sign)):
            p[2 * i] = 2 * j + (0 if s == 1 else 1)
            p[2 * i + 1] = 2 * j + (1 if s == 1 else 0)
        return p

    @classmethod
    def from_points(cls, p):
        n = len(p) // 2
        perm = tuple(int(p[2 * i]) // 2 for i in range(n))
        sign = tuple(1 if p[2 * i] % 2 == 0 else -1 for i in range(n))
        return cls(perm, sign)


@dataclass
class AutGroupDescription:
    generators: list
    order: int
    nauty_order: object = None

    def __repr__(self):
        return "AutGroupDescription(order=%d, %d generators)" % (
            self.order, len(self.generators))


# -- graph encoding --------------------------------------------------------


def _spanning_words(code):
    """Smallest union of nonzero weight classes that spans the code."""
    if code.dimension == 0:
        return np.zeros((0, code.length), dtype=np.int8)
    words = code.codewords()
    weights = np.count_nonzero(words, axis=1)
    chosen = np.zeros(len(words), dtype=bool)
    for w in sorted(set(weights.tolist()) - {0}):
        chosen |= weights == w
        if gf3.rank(words[chosen]) == code.dimension:
            break
    return words[chosen]


def code_graph(code):
    """Colored graph whose automorphisms are exactly Aut(code) on 2n points."""
    n = code.length
    words = _spanning_words(code)
    g = ColoredGraph(2 * n + len(words), [0] * (2 * n) + [1] * len(words))
    for i in range(n):
        g.add_edge(2 * i, 2 * i + 1)
    for t, w in enumerate(words):
        v = 2 * n + t
        for i in np.nonzero(w)[0]:
            g.add_edge(v, 2 * int(i) + (0 if w[i] == 1 else 1))
    return g


def automorphism_group(code):
    """Generators and exact order of the monomial automorphism group."""
    n = code.length
    gens, nauty_order, _ = automorphisms(code_graph(code))
    point_gens = [g[:2 * n] for g in gens]
    chain = schreier_sims(point_gens, 2 * n)
    order = chain.order()
    if nauty_order is not None and nauty_order != order:
        raise RuntimeError("nauty order %d disagrees with Schreier-Sims %d"
                           % (nauty_order, order))
    transforms = [MonomialTransform.from_points(p) for p in point_gens]
    for t in transforms:
        if t.apply_code(code) != code:
            raise RuntimeError("automorphism generator does not fix the code")
    return AutGroupDescription(transforms, order, nauty_order)


def certificate(code):
    """Hashable invariant equal for two codes iff they are equivalent."""
    cert, _ = canonical(code_graph(code))
    return (code.length, code.dimension, weight_distribution(code), cert)


def canonical_form(code):
    """The representative of the equivalence class picked by canonical labeling.

    Equivalent codes give identical results, so the echelon rows serve as a
    byte-stable name for the class.
    """
    n = code.length
    _, lab = canonical(code_graph(code))
    pos = np.empty(2 * n, dtype=np.int64)
    # point vertices occupy the first 2n canonical positions (first color cell)
    for p, v in enumerate(lab[:2 * n]):
        pos[v] = p
    # order coordinates by the earlier canonical position of their two points;
    # that point becomes the + sign
    first = np.minimum(pos[0::2], pos[1::2])
    rank = np.empty(n, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(n)
    sign = np.where(pos[0::2] < pos[1::2], 1, -1)
    return MonomialTransform(tuple(int(r) for r in rank),
                             tuple(int(s) for s in sign)).apply_code(code)


def are_equivalent(c1, c2):
    """A transform P with c1.P == c2, or None if the codes are inequivalent."""
    if (c1.length, c1.dimension) != (c2.length, c2.dimension):
        return None
    if weight_distribution(c1) != weight_distribution(c2):
        return None
    if c1 == c2:
        return MonomialTransform.identity(c1.length)
    g1, g2 = code_graph(c1), code_graph(c2)
    k1, lab1 = canonical(g1)
    k2, lab2 = canonical(g2)
    if k1 != k2:
        return None
    vmap = np.empty(g1.n, dtype=np.int64)
    vmap[np.asarray(lab1)] = np.asarray(lab2)
    p = MonomialTransform.from_points(vmap[:2 * c1.length])
    if p.apply_code(c1) != c2:
        raise RuntimeError("canonical labeling produced an invalid witness")
    return p


# -- decomposition ---------------------------------------------------------


def decompose(code):
    """Finest direct-sum splitting as a list of (support, component code).

    Components are the connected components of the column matroid, read
    off the fundamental circuits of the echelon form.
    """
    n = code.length
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row, p in zip(code.generator, code.pivots):
        for j in np.nonzero(row)[0]:
            a, b = find(p), find(int(j))
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    out = []
    for support in sorted(blocks.values()):
        rows = [r[support] for r, p in zip(code.generator, code.pivots) if p in support]
        gen = np.array(rows, dtype=np.int64) if rows else np.zeros((0, len(support)))
        out.append((tuple(support), TernaryCode(gen, length=len(support))))
    return out


def is_decomposable(code):
    return len(decompose(code)) > 1


# -- mass bookkeeping ------------------------------------------------------


def mass_number(n):
    """Number of distinct self-dual ternary codes of length n."""
    if n <= 0 or n % 4:
        raise ValueError("self-dual ternary codes need n = 0 mod 4, got %r" % n)
    out = 2
    for i in range(1, (n - 2) // 2 + 1):
        out *= 3 ** i + 1
    return out


def mass_contribution(n, aut_order):
    total = 2 ** n * math.factorial(n)
    if total % aut_order:
        return Fraction(total, aut_order)
    return total // aut_order


@dataclass
class MassReport:
    n: int
    contributions: list
    total: object
    expected: int
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.total == self.expected

    @property
    def deficit(self):
        return self.expected - self.total


def mass_check(codes, n, aut_orders=None):
    """Compare the sum of 2^n n!/|Aut C| over ``codes`` with the mass number."""
    if aut_orders is None:
        aut_orders = [automorphism_group(c).order for c in codes]
    contributions = [mass_contribution(n, a) for a in aut_orders]
    return MassReport(n, contributions, sum(contributions, 0), mass_number(n))


def t_statistic(aut_orders):
    """Exact sum of 1/|Aut C| over the given automorphism orders."""
    return sum((Fraction(1, a) for a in aut_orders), Fraction(0))


def t_class(codes, i, aut_orders=None):
    """Indecomposable codes with exactly 2i weight-3 words, and their T value."""
    if aut_orders is None:
        aut_orders = [None] * len(codes)
    chosen = []
    for c, a in zip(codes, aut_orders):
        if weight_distribution(c)[3] == 2 * i and not is_decomposable(c):
            chosen.append((c, a if a is not None else automorphism_group(c).order))
    return [c for c, _ in chosen], t_statistic([a for _, a in chosen])
