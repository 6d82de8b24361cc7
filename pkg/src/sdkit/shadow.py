"""Shadows of odd unimodular lattices and the frame pre-filter."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import intmat
from .enumeration import enumerate_short
from .exceptions import InvalidLatticeError
from .lattice import characteristic_vector, parity_vector


@dataclass
class ShadowDecomposition:
    """L0 and coset representatives of L0*/L0, all in L-basis coordinates.

    ``cosets`` maps 0..3 to a rational representative: 0 -> L0, 2 -> the odd
    vectors of L, 1 and 3 -> the two halves of the shadow.
    """

    lattice: object
    l0_basis: list
    cosets: dict

    @property
    def rank(self):
        return self.lattice.rank

    def l0_gram(self):
        b = np.array(self.l0_basis, dtype=object)
        return b @ self.lattice.gram.astype(object) @ b.T

    def _shift(self, coset):
        # coordinates of the coset representative in the L0 basis
        return intmat.solve_rational(self.l0_basis, self.cosets[coset])

    def doubled_vectors(self, coset, max_norm, min_norm=0):
        """Integer array of 2x for x in ``coset`` with min_norm <= (x,x) <= max_norm,
        and the matching norms (Fractions).  Every coset lies in L/2."""
        shift = self._shift(coset)
        found = enumerate_short(self.l0_gram(), max_norm, shift=shift,
                                include_zero=(coset == 0))
        found = [(y, q) for y, q in found
                 if q >= min_norm and not (coset == 0 and q == 0)]
        n = self.rank
        if not found:
            return np.zeros((0, n), dtype=np.int64), []
        s2 = np.array([int(2 * x) for x in shift], dtype=np.int64)
        ys = np.array([y for y, _ in found], dtype=np.int64)
        out = (2 * ys + s2) @ np.array(self.l0_basis, dtype=np.int64)
        norms = [q for _, q in found]
        order = sorted(range(len(found)), key=lambda i: (norms[i], tuple(out[i])))
        return out[order], [norms[i] for i in order]

    def vectors(self, coset, max_norm, min_norm=0):
        """Vectors of ``coset`` with min_norm <= norm <= max_norm (both signs).

        Returned as (rational L-coordinates, norm) pairs.
        """
        d, norms = self.doubled_vectors(coset, max_norm, min_norm)
        return [(tuple(Fraction(int(x), 2) for x in row), q) for row, q in zip(d, norms)]

    def shadow_vectors(self, max_norm, min_norm=0):
        return sorted(self.vectors(1, max_norm, min_norm) + self.vectors(3, max_norm, min_norm),
                      key=lambda cq: (cq[1], cq[0]))

    def min_norm(self):
        """Minimal norm of a shadow vector (shadow norms lie in n/4 + 2Z)."""
        r = Fraction(self.rank, 4) % 2 or Fraction(2)
        while True:
            vecs = self.shadow_vectors(r)
            if vecs:
                return min(q for _, q in vecs)
            r += 2


def shadow(lattice):
    """Split L0* into the four cosets of the even sublattice L0."""
    if not lattice.is_unimodular():
        raise InvalidLatticeError("shadows are defined here for unimodular lattices")
    if lattice.is_even():
        raise InvalidLatticeError("lattice is even; its shadow is the lattice itself")
    n = lattice.rank
    parity = parity_vector(lattice)
    t = next(i for i, p in enumerate(parity) if p)
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    gens = []
    for i in range(n):
        if i == t:
            gens.append([2 * x for x in eye[i]])
        elif parity[i]:
            gens.append([x + y for x, y in zip(eye[i], eye[t])])
        else:
            gens.append(eye[i])
    l0 = intmat.hnf(gens)
    g0 = np.array(l0, dtype=object) @ lattice.gram.astype(object) @ np.array(l0, dtype=object).T
    _, h = intmat.gram_lll(g0, Fraction(99, 100))
    l0 = intmat.matmul(h, l0)
    u = characteristic_vector(lattice)
    half = [Fraction(x, 2) for x in u]
    tvec = [Fraction(x) for x in eye[t]]
    cosets = {
        0: [Fraction(0)] * n,
        1: half,
        2: tvec,
        3: [a + b for a, b in zip(half, tvec)],
    }
    return ShadowDecomposition(lattice, l0, cosets)


def _frame_probe_vectors(lattice):
    """Shadow vectors of norm n/12 (cached); empty when none can exist."""
    cache = lattice.__dict__
    if "_probe" in cache:
        return cache["_probe"]
    n = lattice.rank
    probe = np.zeros((0, n), dtype=np.int64)
    if lattice.is_odd() and lattice.is_unimodular() and n % 12 == 0:
        sd = shadow(lattice)
        bound = Fraction(n, 12)
        probe = np.concatenate([sd.doubled_vectors(c, bound)[0] for c in (1, 3)])
    cache["_probe"] = probe
    return probe


def shadow_filter(lattice, v):
    """False when the norm-3 vector ``v`` lies in no 3-frame by the shadow test.

    A 3-frame writes every shadow vector as (1/6) sum a_i f_i with odd a_i,
    so its norm is at least n/12, with equality only if all a_i = +-1.  Hence
    a shadow vector a of norm n/12 has (a, f) = +-1/2 for every frame vector
    f.  For n = 24 this is exactly the norm-2 pair test with (a, v) = 3/2,
    b = a - v.
    """
    if lattice.norm(v) != 3:
        raise ValueError("shadow_filter expects a norm-3 vector")
    return bool(shadow_filter_many(lattice, [v])[0])


def shadow_filter_many(lattice, vectors):
    """Vectorized shadow_filter over a list of norm-3 vectors (bool array)."""
    probe = _frame_probe_vectors(lattice)
    keep = np.ones(len(vectors), dtype=bool)
    if not len(probe) or not len(vectors):
        return keep
    n = lattice.rank
    # probe rows are 2a; test |(2a, v)| == 1
    vs = np.array(vectors, dtype=np.int64).reshape(-1, n)
    ip = probe @ lattice.gram @ vs.T
    keep &= np.all(np.abs(ip) == 1, axis=0)
    return keep
