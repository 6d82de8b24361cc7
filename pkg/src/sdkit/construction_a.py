"""Construction A over GF(3), frame projections and the even neighbors of A3(C).

Lattices built here carry an ambient embedding: A3(C) uses integer
coordinates x with geometric vector x/sqrt(3) (scale 3); B3, L_S and L_T use
y with geometric vector y/(2 sqrt(3)) (scale 12).
"""

from dataclasses import dataclass

import numpy as np

from . import intmat
from .codes import (MonomialTransform, TernaryCode, _require_self_dual,
                    is_self_dual, weight_distribution)
from .exceptions import InvalidFrameError, InvalidLatticeError, NotSelfDualError
from .lattice import (LatticeGram, characteristic_vector, from_basis, from_generators,
                      same_lattice, short_vectors, theta_prefix)


def a3_basis(code):
    """Basis of {x in Z^n : x mod 3 in C}: echelon rows plus 3 e_j off-pivot."""
    n = code.length
    rows = [list(map(int, r)) for r in code.generator]
    for j in range(n):
        if j not in code.pivots:
            r = [0] * n
            r[j] = 3
            rows.append(r)
    return rows


def a3(code, name=None):
    """A3(C) as an integral Gram matrix (unimodular when C is self-dual)."""
    _require_self_dual(code)
    return from_basis(a3_basis(code), scale=3, name=name or "A3(%r)" % code)


def standard_frame(code):
    """The frame sqrt(3) e_i of A3(C), in A3 basis coordinates."""
    lat = a3(code)
    basis = intmat.to_rows(lat.embedding[0])
    frame = []
    for i in range(code.length):
        target = [0] * code.length
        target[i] = 3
        x = intmat.solve_rational(basis, target)
        frame.append(tuple(int(t) for t in x))
    return lat, frame


@dataclass(frozen=True)
class Frame:
    """n pairwise orthogonal norm-3 vectors of a lattice (basis coordinates)."""

    vectors: tuple

    def __len__(self):
        return len(self.vectors)


def check_frame(lattice, vectors):
    f = np.array(vectors, dtype=object)
    if f.shape != (lattice.rank, lattice.rank):
        raise InvalidFrameError("a frame needs exactly rank-many vectors")
    g = f @ lattice.gram.astype(object) @ f.T
    if not np.array_equal(g, 3 * np.eye(lattice.rank, dtype=object)):
        raise InvalidFrameError("frame vectors are not pairwise orthogonal of norm 3")
    return Frame(tuple(tuple(int(x) for x in v) for v in vectors))


def pi_frame(lattice, frame):
    """The self-dual code ((x, f_i) mod 3)_i over x in the lattice."""
    if not isinstance(frame, Frame):
        frame = check_frame(lattice, frame)
    f = np.array(frame.vectors, dtype=object)
    images = (lattice.gram.astype(object) @ f.T) % 3
    code = TernaryCode(images.astype(np.int64))
    if not is_self_dual(code):
        raise InvalidFrameError("projection is not self-dual; lattice not unimodular?")
    return code


def lemma1_check(code):
    """Norm-1/norm-2 counts of A3(C) against weight-3/weight-6 counts of C."""
    lat = a3(code)
    wd = weight_distribution(code)
    theta = theta_prefix(lat, 2)
    alpha1, alpha2 = theta[0], theta[1]
    beta3, beta6 = wd[3], wd[6]
    return {
        "alpha1": alpha1, "alpha2": alpha2, "beta3": beta3, "beta6": beta6,
        "alpha1_ok": alpha1 == beta3,
        "alpha2_ok": alpha2 == beta6 + 3 * beta3,
        "passed": alpha1 == beta3 and alpha2 == beta6 + 3 * beta3,
    }


# -- even sublattice and neighbors -------------------------------------------


def _even_sublattice_gens(basis, parity):
    """Generators of the index-2 kernel of x -> parity(x) mod 2 (rows of basis)."""
    odd = [i for i, p in enumerate(parity) if p % 2]
    if not odd:
        return [list(r) for r in basis]
    t = odd[0]
    gens = []
    for i, r in enumerate(basis):
        if i == t:
            gens.append([2 * x for x in r])
        elif parity[i] % 2:
            gens.append([x + y for x, y in zip(r, basis[t])])
        else:
            gens.append(list(r))
    return gens


def b3(code):
    """Even sublattice of A3(C), in the 1/(2 sqrt 3) coordinates (scale 12)."""
    _require_self_dual(code)
    basis = a3_basis(code)
    # (x, x)/3 = sum x_i (mod 2) for x in A3(C)
    parity = [sum(r) for r in basis]
    gens = _even_sublattice_gens(basis, parity)
    gens = [[2 * x for x in r] for r in gens]
    return from_generators(gens, scale=12, name="B3(%r)" % code)


def _has_all_ones(code):
    return code.contains(np.ones(code.length, dtype=np.int64))


@dataclass
class NeighborPair:
    first: LatticeGram
    second: LatticeGram
    labels: tuple = ("S", "T")

    def __iter__(self):
        return iter((self.first, self.second))


def straight_twisted(code):
    """L_S(C) = <1/(2 sqrt 3), B3(C)> and L_T(C) = <1/(2 sqrt 3) - e_1, B3(C)>."""
    _require_self_dual(code)
    n = code.length
    if n % 12:
        raise ValueError("straight/twisted constructions need n = 0 mod 12")
    if not _has_all_ones(code):
        raise ValueError("the all-ones vector is not a codeword")
    base = intmat.to_rows(b3(code).embedding[0])
    ones = [1] * n
    twisted = [1] * n
    twisted[0] = 1 - 6
    ls = from_generators(base + [ones], scale=12, name="L_S")
    lt = from_generators(base + [twisted], scale=12, name="L_T")
    return NeighborPair(ls, lt, ("S", "T"))


def shadow_cosets(lattice):
    """Basis of the even sublattice L0 and coset reps (rational, basis coords).

    Returns (l0_gens, t, u_half) with t in L \\ L0 and u_half = u/2 for a
    characteristic vector u, so L1 = u/2 + L0, L3 = u/2 + t + L0.
    """
    if lattice.is_even():
        raise InvalidLatticeError("lattice is even; its shadow is the lattice itself")
    n = lattice.rank
    parity = [int(x) % 2 for x in lattice.gram.diagonal()]
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    l0 = _even_sublattice_gens(eye, parity)
    t = next(i for i, p in enumerate(parity) if p)
    tvec = eye[t]
    u = characteristic_vector(lattice)
    return l0, tvec, u


def even_neighbors(lattice):
    """The two even unimodular lattices containing the even sublattice L0.

    Requires an odd unimodular lattice of rank divisible by 8.  Results are
    expressed in half-basis coordinates; when the input carries an ambient
    embedding, so do the outputs.
    """
    if not lattice.is_unimodular() or lattice.is_even():
        raise InvalidLatticeError("even_neighbors needs an odd unimodular lattice")
    n = lattice.rank
    if n % 8:
        raise ValueError("even neighbors exist only in ranks divisible by 8")
    l0, t, u = shadow_cosets(lattice)
    # work with doubled coordinates: L0 -> 2 L0, u/2 -> u
    base = [[2 * x for x in r] for r in l0]
    n1 = intmat.hnf(base + [list(u)])
    n3 = intmat.hnf(base + [[a + 2 * b for a, b in zip(u, t)]])
    g = lattice.gram.astype(object)
    out = []
    for rows, label in ((n1, "N1"), (n3, "N3")):
        r = np.array(rows, dtype=object)
        gram = r @ g @ r.T
        if np.any(gram % 4):
            raise InvalidLatticeError("neighbor is not integral")
        emb = None
        if lattice.embedding is not None:
            b, scale = lattice.embedding
            emb = (r @ np.array(b, dtype=object), 4 * scale)
        out.append(LatticeGram(gram // 4, name=label, embedding=emb))
    for lat in out:
        if not lat.is_even() or not lat.is_unimodular():
            raise InvalidLatticeError("neighbor is not even unimodular")
    return NeighborPair(out[0], out[1], ("N1", "N3"))


def rescale_embedding(lattice, factor):
    """Same lattice with ambient coordinates multiplied by ``factor``."""
    b, scale = lattice.embedding
    return LatticeGram(lattice.gram, name=lattice.name,
                       embedding=(np.array(b, dtype=object) * factor, scale * factor * factor),
                       check=False)


def full_weight_words(code):
    words = code.codewords()
    return words[np.count_nonzero(words, axis=1) == code.length]


def is_admissible(code):
    """All full-weight codewords have coordinate product +1 (as +-1 integers)."""
    for w in full_weight_words(code):
        if np.prod(np.where(w == 1, 1, -1)) != 1:
            return False
    return True


def proposition_check(code, v):
    """Compare L_S(C).P with L_S(C.P) and L_T(C.P) for P = diag(v).

    Equality is tested exactly in the common ambient coordinates.
    """
    v = np.asarray(v, dtype=np.int64) % 3
    if not _has_all_ones(code):
        raise ValueError("the all-ones vector is not a codeword")
    if np.count_nonzero(v) != code.length or not code.contains(v):
        raise ValueError("v must be a full-weight codeword")
    signs = np.where(v == 1, 1, -1)
    p = MonomialTransform(tuple(range(code.length)), tuple(int(s) for s in signs))
    cp = p.apply_code(code)
    ls, _ = straight_twisted(code)
    b, scale = ls.embedding
    moved = LatticeGram(ls.gram, name="L_S.P",
                        embedding=(np.array(b, dtype=object) * signs.astype(object), scale))
    ls_p, lt_p = straight_twisted(cp)
    product = int(np.prod(signs))
    return {
        "product": product,
        "equals_LS": same_lattice(moved, ls_p),
        "equals_LT": same_lattice(moved, lt_p),
        "admissible": is_admissible(code),
        "transform": p,
        "lattices": (moved, ls_p, lt_p),
        "passed": (same_lattice(moved, ls_p) if product == 1 else same_lattice(moved, lt_p)),
    }
