"""Kneser p-neighbors of unimodular lattices."""

import numpy as np

from . import intmat
from .exceptions import InvalidLatticeError
from .lattice import LatticeGram


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def admissible_vector(lattice, v, p):
    """Adjust v within v + pL so that p^2 | (v, v).

    For odd p and p | (v,v), replace v by v + p w with (v, w) chosen so that
    (v,v)/p + 2 (v,w) = 0 mod p; such w exists since L is unimodular and v is
    not in pL.  For p = 2 the class of (v,v) mod 4 is fixed, so it must
    already vanish.
    """
    v = [int(x) for x in v]
    g = lattice.gram.astype(object)
    gv = [int(x) for x in g @ np.array(v, dtype=object)]
    if all(x % p == 0 for x in v):
        raise ValueError("v must be primitive modulo p")
    nv = sum(a * b for a, b in zip(v, gv))
    if nv % p:
        raise ValueError("(v, v) must be divisible by p")
    if nv % (p * p) == 0:
        return v
    if p == 2:
        raise ValueError("for p = 2 the norm (v, v) must be divisible by 4")
    j = next(i for i, x in enumerate(gv) if x % p)
    # want c with (v,v)/p + 2 c (v, e_j) = 0 mod p
    c = (-(nv // p) * pow(2 * gv[j], -1, p)) % p
    w = [0] * len(v)
    w[j] = c
    out = [a + p * b for a, b in zip(v, w)]
    nout = sum(a * b for a, b in zip(out, [int(x) for x in g @ np.array(out, dtype=object)]))
    assert nout % (p * p) == 0
    return out


def p_neighbor(lattice, v, p, name=None):
    """<L_v, v/p> with L_v = {x in L : (x, v) = 0 mod p}.

    ``v`` is first corrected inside v + pL so that p^2 divides its norm.
    The result is unimodular and shares the index-p sublattice L_v with L.
    """
    if not _is_prime(p):
        raise ValueError("p must be prime")
    if not lattice.is_unimodular():
        raise InvalidLatticeError("p-neighbors are built here for unimodular lattices")
    n = lattice.rank
    v = admissible_vector(lattice, v, p)
    g = lattice.gram.astype(object)
    r = [int(x) % p for x in g @ np.array(v, dtype=object)]
    j = next(i for i, x in enumerate(r) if x)
    inv = pow(r[j], -1, p)
    gens = []
    for i in range(n):
        row = [0] * n
        if i == j:
            row[j] = p
        else:
            row[i] = 1
            row[j] = -(r[i] * inv) % p
        gens.append(row)
    # scale by p so that v/p becomes integral
    rows = intmat.hnf([[p * x for x in row] for row in gens] + [v])
    b = np.array(rows, dtype=object)
    gram = b @ g @ b.T
    if np.any(gram % (p * p)):
        raise InvalidLatticeError("neighbor is not integral")
    emb = None
    if lattice.embedding is not None:
        basis, scale = lattice.embedding
        emb = (b @ np.array(basis, dtype=object), scale * p * p)
    out = LatticeGram(gram // (p * p), name=name, embedding=emb)
    if not out.is_unimodular():
        raise InvalidLatticeError("neighbor is not unimodular")
    return out
