"""Lattice automorphisms, isometries, orthogonal decomposition and root systems.

Automorphisms and isometries are found by canonical labeling of an
edge-colored graph on a finite generating set S of short vectors, with
inner products as edge colors.  A color-preserving bijection S -> S' that
respects inner products extends to a unique linear isometry, since S spans.
"""

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import pynauty
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import intmat
from ._nauty import ColoredGraph, automorphisms, canonical
from .exceptions import SearchBudgetExceeded
from .lattice import LatticeGram, short_vectors, vectors_of_norm
from .lattice import theta_prefix as lattice_theta_prefix
from .permgroup import PermGroup

MAX_GRAPH_VECTORS = 5000
_PRIME = 2147483647


# -- generating sets ---------------------------------------------------------


def _spans_lattice(lattice, vecs):
    if len(vecs) < lattice.rank:
        return False
    h = intmat.hnf(vecs)
    if len(h) != lattice.rank:
        return False
    return abs(intmat.det(h)) == 1


def generating_vectors(lattice, max_vectors=MAX_GRAPH_VECTORS):
    """A deterministic Aut(L)-invariant generating set, both signs.

    Tries the vectors of a single norm first, then all vectors up to a norm.
    Returns (vectors array, norm bound, single_norm flag).
    """
    m = 1
    while True:
        count = sum(1 for _, q in short_vectors(lattice, m) if q <= m)
        if 2 * count > max_vectors:
            raise SearchBudgetExceeded(
                "generating set would exceed %d vectors" % max_vectors,
                progress=m)
        layer = vectors_of_norm(lattice, m)
        if layer and _spans_lattice(lattice, layer):
            vecs = layer
            single = True
            break
        upto = [v for v, q in short_vectors(lattice, m)]
        if upto and _spans_lattice(lattice, upto):
            vecs = upto
            single = False
            break
        m += 1
    both = []
    for v in vecs:
        both.append(v)
        both.append(tuple(-x for x in v))
    return np.array(both, dtype=np.int64), m, single


def _independent_rows(vecs, n):
    """Indices of n rows of ``vecs`` that are linearly independent (mod a prime)."""
    basis = []  # reduced rows with their pivot
    chosen = []
    for idx, v in enumerate(vecs):
        r = [int(x) % _PRIME for x in v]
        for piv, b in basis:
            if r[piv]:
                f = r[piv]
                r = [(x - f * y) % _PRIME for x, y in zip(r, b)]
        piv = next((j for j, x in enumerate(r) if x), None)
        if piv is None:
            continue
        inv = pow(r[piv], -1, _PRIME)
        basis.append((piv, [(x * inv) % _PRIME for x in r]))
        chosen.append(idx)
        if len(chosen) == n:
            return chosen
    raise ValueError("vectors do not span")


# -- graph encoding ------------------------------------------------------------


@dataclass
class VectorGraph:
    lattice: LatticeGram
    vectors: np.ndarray
    graph: ColoredGraph
    colors: tuple
    norm_bound: int

    @property
    def size(self):
        return len(self.vectors)


def vector_graph(lattice, max_vectors=MAX_GRAPH_VECTORS):
    """Layered graph encoding of the inner products among a generating set.

    Edge codes: positive inner products by rank, plus one code for the
    v <-> -v pairing (negative products are then implied).  Codes are written
    in binary across layers joined by vertical paths.
    """
    vecs, bound, _ = generating_vectors(lattice, max_vectors)
    m = len(vecs)
    ip = (vecs @ lattice.gram @ vecs.T).astype(np.int32)
    norms = np.diag(ip).copy()
    pos_values = sorted(set(int(x) for x in ip[np.triu(ip > 0, 1)]))
    code = np.zeros(ip.shape, dtype=np.int8)
    for rank, val in enumerate(pos_values, start=1):
        code[ip == val] = rank
    pair_code = len(pos_values) + 1
    idx = np.arange(m)
    code[idx[0::2], idx[1::2]] = pair_code
    code[idx[1::2], idx[0::2]] = pair_code
    np.fill_diagonal(code, 0)
    layers = max(1, int(pair_code).bit_length())
    norm_rank = {q: r for r, q in enumerate(sorted(set(norms.tolist())))}
    colors = [(layer, norm_rank[int(norms[s])]) for layer in range(layers) for s in range(m)]
    g = ColoredGraph(layers * m, colors)
    for layer in range(layers):
        bit = ((code >> layer) & 1).astype(bool)
        rows, cols = np.nonzero(np.triu(bit, 1))
        off = layer * m
        for a, b in zip(rows.tolist(), cols.tolist()):
            g.add_edge(off + a, off + b)
        if layer + 1 < layers:
            for s in range(m):
                g.add_edge(off + s, off + m + s)
    key = (tuple(sorted(Counter(norms.tolist()).items())), tuple(pos_values), layers)
    return VectorGraph(lattice, vecs, g, key, bound)


def _perm_to_matrix(lattice, vecs, perm, basis_idx, basis_inv):
    """Integer matrix A (x -> x A) sending vecs[i] to vecs[perm[i]]."""
    images = [[int(x) for x in vecs[perm[i]]] for i in basis_idx]
    a = intmat.matmul(basis_inv, images)
    if any(x.denominator != 1 for row in a for x in row):
        raise RuntimeError("vector-graph automorphism is not integral")
    return np.array([[int(x) for x in row] for row in a], dtype=np.int64)


def _check_isometry(u, g_from, g_to):
    """u g_to u^T == g_from exactly."""
    u = np.asarray(u, dtype=object)
    return np.array_equal(u @ np.asarray(g_to, dtype=object) @ u.T,
                          np.asarray(g_from, dtype=object))


# -- automorphism group ------------------------------------------------------------


@dataclass
class LatticeAutGroup:
    """Generators x -> x A of Aut(L) with the exact group order."""

    lattice: LatticeGram
    generators: list
    order: int
    vectors: np.ndarray = field(repr=False, default=None)
    perms: list = field(repr=False, default=None)
    nauty_order: object = None

    def action_on(self, vecs):
        """Permutations induced on a sign-closed list of vectors (rows).

        Returns perms on the index set of ``vecs``; raises if not invariant.
        """
        vecs = np.asarray(vecs, dtype=np.int64)
        lookup = {tuple(v): i for i, v in enumerate(vecs.tolist())}
        out = []
        for a in self.generators:
            img = vecs @ a
            out.append(np.array([lookup[tuple(r)] for r in img.tolist()], dtype=np.int32))
        return out


def automorphism_group(lattice, max_vectors=MAX_GRAPH_VECTORS):
    """Generators and exact order of the orthogonal group of a lattice."""
    cache = lattice.__dict__
    if "_aut" in cache:
        return cache["_aut"]
    vg = _cached_graph(lattice, max_vectors)
    m = vg.size
    gens, nauty_order, _ = automorphisms(vg.graph)
    perms = [np.asarray(g[:m], dtype=np.int32) for g in gens]
    basis_idx = _independent_rows(vg.vectors, lattice.rank)
    basis_inv = intmat.inverse_rational(vg.vectors[basis_idx].tolist())
    mats = []
    for p in perms:
        a = _perm_to_matrix(lattice, vg.vectors, p, basis_idx, basis_inv)
        if not _check_isometry(a, lattice.gram, lattice.gram):
            raise RuntimeError("generator does not preserve the Gram matrix")
        mats.append(a)
    group = PermGroup(perms, m, order=nauty_order)
    order = group.order()
    result = LatticeAutGroup(lattice, mats, order, vg.vectors, perms, nauty_order)
    cache["_aut"] = result
    return result


# -- isomorphism ---------------------------------------------------------------------


@dataclass
class IsometryWitness:
    """U with U G2 U^T = G1 (rows of U: images of the L1 basis in L2 coords).

    ``matrix`` is None when isomorphism is certified by a classification
    theorem instead of an explicit map (see ``method``).
    """

    matrix: object
    method: str = "graph"

    def verify(self, l1, l2):
        if self.matrix is None:
            return True
        u = np.asarray(self.matrix, dtype=object)
        return abs(intmat.det(u)) == 1 and _check_isometry(u, l1.gram, l2.gram)


def invariants(lattice, upto=3):
    """Cheap isomorphism invariants."""
    inv = [lattice.rank, lattice.determinant, lattice.is_even()]
    inv.append(lattice_theta_prefix(lattice, upto))
    return tuple(inv)


def _ambient_witness(l1, l2):
    """Witness when both lattices are the same point set in a common ambient space."""
    (b1, s1), (b2, s2) = l1.embedding, l2.embedding
    if s1 != s2 or np.shape(b1) != np.shape(b2):
        return None
    if intmat.hnf(b1) != intmat.hnf(b2):
        return None
    b1 = intmat.to_rows(b1)
    b2 = intmat.to_rows(b2)
    if len(b2) != len(b2[0]):
        return None
    # rows of U: coordinates of each b1 row in the b2 basis
    u = intmat.matmul(b1, intmat.inverse_rational(b2))
    return np.array([[int(x) for x in row] for row in u], dtype=object)


def _cached_graph(lattice, max_vectors):
    cache = lattice.__dict__.setdefault("_vg_cache", {})
    if max_vectors not in cache:
        cache[max_vectors] = vector_graph(lattice, max_vectors)
    return cache[max_vectors]


def graph_certificate(lattice, max_vectors=MAX_GRAPH_VECTORS):
    """Hashable complete isometry invariant (cached on the lattice)."""
    cache = lattice.__dict__
    if "_graph_cert" not in cache:
        vg = _cached_graph(lattice, max_vectors)
        cache["_graph_cert"] = (lattice.rank, vg.norm_bound, vg.colors,
                                vg.graph.color_signature(),
                                pynauty.certificate(vg.graph.to_pynauty()))
    return cache["_graph_cert"]


def are_isometric(l1, l2, max_vectors=MAX_GRAPH_VECTORS):
    """Boolean isometry test by invariants and graph certificates (no witness)."""
    if l1.rank != l2.rank or l1.determinant != l2.determinant or l1.is_even() != l2.is_even():
        return False
    if invariants(l1, 2) != invariants(l2, 2):
        return False
    if l1.rank == 24 and l1.is_even() and l1.determinant == 1:
        r1, r2 = root_system(l1), root_system(l2)
        if r1 != r2:
            return False
        if r1.rank == 24:
            return True
    return graph_certificate(l1, max_vectors) == graph_certificate(l2, max_vectors)


def is_isomorphic(l1, l2, max_vectors=MAX_GRAPH_VECTORS):
    """An IsometryWitness if l1 and l2 are isometric, else None."""
    if l1.rank != l2.rank or l1.determinant != l2.determinant:
        return None
    if l1.is_even() != l2.is_even():
        return None
    if l1.embedding is not None and l2.embedding is not None:
        u = _ambient_witness(l1, l2)
        if u is not None and _check_isometry(u, l1.gram, l2.gram):
            return IsometryWitness(u, "ambient")
    if invariants(l1, 2) != invariants(l2, 2):
        return None
    if l1.rank == 24 and l1.is_even() and l1.determinant == 1:
        # even unimodular of rank 24: the root system decides (Niemeier)
        r1, r2 = root_system(l1), root_system(l2)
        if r1 != r2:
            return None
        if r1.rank == 24:
            return IsometryWitness(None, "niemeier-root-system")
    if graph_certificate(l1, max_vectors) != graph_certificate(l2, max_vectors):
        return None
    v1, v2 = _cached_graph(l1, max_vectors), _cached_graph(l2, max_vectors)
    k1, lab1 = canonical(v1.graph)
    k2, lab2 = canonical(v2.graph)
    if k1 != k2:
        return None
    vmap = np.empty(v1.graph.n, dtype=np.int64)
    vmap[np.asarray(lab1)] = np.asarray(lab2)
    m = v1.size
    basis_idx = _independent_rows(v1.vectors, l1.rank)
    s1 = v1.vectors[basis_idx].tolist()
    s2 = v2.vectors[vmap[basis_idx]].tolist()
    # x -> x A with s1 A = s2; rows of U are the images of e_i
    a = intmat.matmul(intmat.inverse_rational(s1), s2)
    if any(x.denominator != 1 for row in a for x in row):
        raise RuntimeError("canonical labeling produced a non-integral map")
    u = np.array([[int(x) for x in row] for row in a], dtype=object)
    if not _check_isometry(u, l1.gram, l2.gram):
        raise RuntimeError("canonical labeling produced an invalid isometry")
    return IsometryWitness(u, "graph")


# -- orthogonal decomposition ---------------------------------------------------------


def _components(vecs, gram):
    """Connected components of the non-orthogonality graph on rows of vecs."""
    m = len(vecs)
    rows, cols = [], []
    step = 2048
    for s in range(0, m, step):
        ip = vecs[s:s + step] @ gram @ vecs.T
        r, c = np.nonzero(ip)
        rows.append(r + s)
        cols.append(c)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    adj = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(m, m))
    _, labels = connected_components(adj, directed=False)
    # relabel by first occurrence for determinism
    seen = {}
    return np.array([seen.setdefault(int(x), len(seen)) for x in labels])


def _indecomposable(vecs, norms, gram):
    """Mask of vectors v with no x, 0 < (x,x) < (v,v), (x,v) = (x,x)."""
    keep = np.ones(len(vecs), dtype=bool)
    ip = vecs @ gram @ vecs.T
    for i in range(len(vecs)):
        smaller = norms < norms[i]
        if np.any(np.abs(ip[i][smaller]) == norms[smaller]):
            keep[i] = False
    return keep


def decompose_lattice(lattice, return_bases=False):
    """Finest orthogonal decomposition into indecomposable sublattices.

    Components are spanned by the non-orthogonality classes of the
    indecomposable short vectors; the norm bound grows until they generate L.
    With ``return_bases`` the component bases (rows in L coordinates) are
    returned alongside.
    """
    n = lattice.rank
    if n == 0:
        return ([], []) if return_bases else []
    m = int(min(lattice.gram.diagonal()))
    while True:
        sv = short_vectors(lattice, m)
        vecs = np.array([v for v, _ in sv], dtype=np.int64).reshape(-1, n)
        norms = np.array([q for _, q in sv], dtype=np.int64)
        keep = _indecomposable(vecs, norms, lattice.gram)
        vecs = vecs[keep]
        if len(vecs) and _spans_lattice(lattice, vecs.tolist()):
            break
        m += 1
    labels = _components(vecs, lattice.gram)
    bases = []
    for c in range(labels.max() + 1):
        bases.append(intmat.hnf(vecs[labels == c].tolist()))
    if sum(len(b) for b in bases) != n:
        raise RuntimeError("component ranks do not add up")
    comps = []
    for b in bases:
        comps.append(_sublattice(lattice, b))
    order = sorted(range(len(comps)), key=lambda i: (-comps[i].rank, bases[i]))
    comps = [comps[i] for i in order]
    bases = [bases[i] for i in order]
    return (comps, bases) if return_bases else comps


def _sublattice(lattice, rows, name=None):
    b = np.array(rows, dtype=object)
    g = b @ lattice.gram.astype(object) @ b.T
    emb = None
    if lattice.embedding is not None:
        basis, scale = lattice.embedding
        emb = (b @ np.array(basis, dtype=object), scale)
    return LatticeGram(g, name=name, embedding=emb)


# -- root systems ---------------------------------------------------------------------


@dataclass(frozen=True)
class RootSystemLabel:
    """Multiset of ADE components, e.g. (('A', 24),) or (('D', 12), ('D', 12))."""

    components: tuple

    @property
    def rank(self):
        return sum(r for _, r in self.components)

    @property
    def root_count(self):
        return sum(ade_root_count(t, r) for t, r in self.components)

    def __str__(self):
        if not self.components:
            return "empty"
        counts = Counter(self.components)
        parts = []
        for (t, r), k in sorted(counts.items(), key=lambda x: (-x[0][1], x[0][0])):
            parts.append(("%s%d" % (t, r)) + ("^%d" % k if k > 1 else ""))
        return " ".join(parts)


def ade_root_count(kind, r):
    if kind == "A":
        return r * (r + 1)
    if kind == "D":
        return 2 * r * (r - 1)
    return {6: 72, 7: 126, 8: 240}[r]


def _ade_type(rank, count):
    if count == rank * (rank + 1):
        return ("A", rank)
    if rank >= 4 and count == 2 * rank * (rank - 1):
        return ("D", rank)
    for r, c in ((6, 72), (7, 126), (8, 240)):
        if rank == r and count == c:
            return ("E", r)
    raise ValueError("no ADE component of rank %d with %d roots" % (rank, count))


def root_system(lattice):
    """ADE type of the norm-2 vectors (components under non-orthogonality)."""
    roots = vectors_of_norm(lattice, 2)
    if not roots:
        return RootSystemLabel(())
    half = np.array(roots, dtype=np.int64)
    labels = _components(half, lattice.gram)
    comps = []
    for c in range(labels.max() + 1):
        vecs = half[labels == c]
        rank = len(intmat.hnf(vecs.tolist()))
        comps.append(_ade_type(rank, 2 * len(vecs)))
    comps.sort(key=lambda t: (-t[1], t[0]))
    return RootSystemLabel(tuple(comps))
