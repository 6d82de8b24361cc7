"""3-frames of unimodular lattices as n-cliques of the orthogonality graph.

The search runs over the graph Gamma whose vertices are the +-pairs of
norm-3 vectors surviving the shadow test, with an edge when the vectors are
orthogonal.  Cliques are explored up to the action of Aut(L):

* at every node the clique C is fixed pointwise by a group H_C, and the
  candidate set P (common neighbours of C) is H_C-invariant;
* a pivot u picks a set {u} + (P - N(u)) that every completion must meet;
  only one representative per H_C-orbit meeting it is branched on, and each
  finished orbit is removed from P before the next;
* leaves are fused by the canonical form of the projected code, which is
  exact because frames are Aut(L)-equivalent iff their codes are equivalent.
"""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codes import canonical_form
from .construction_a import check_frame, pi_frame
from .exceptions import SearchBudgetExceeded
from .isometry import automorphism_group
from .lattice import vectors_of_norm
from .permgroup import PermGroup
from .shadow import shadow_filter_many

DEFAULT_MAX_NODES = 2_000_000


def _popcount(x):
    return bin(x).count("1")


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass
class FrameGraph:
    """Vertices: +-pairs of norm-3 vectors (first nonzero coordinate > 0)."""

    lattice: object
    vectors: np.ndarray
    adjacency: list
    filtered: bool = True
    removed: int = 0

    @property
    def n_vertices(self):
        return len(self.vectors)

    @property
    def n_edges(self):
        return sum(_popcount(a) for a in self.adjacency) // 2

    def neighbors(self, i):
        return list(_bits(self.adjacency[i]))

    def degrees(self):
        return [_popcount(a) for a in self.adjacency]

    def adjacency_matrix(self):
        m = np.zeros((self.n_vertices,) * 2, dtype=bool)
        for i, a in enumerate(self.adjacency):
            m[i, list(_bits(a))] = True
        return m

    def is_clique(self, ids):
        ids = list(ids)
        return all(self.adjacency[a] >> b & 1 for i, a in enumerate(ids) for b in ids[i + 1:])

    def frame(self, ids):
        return check_frame(self.lattice, [self.vectors[i].tolist() for i in sorted(ids)])


def build_gamma(lattice, shadow_filter=True):
    """The orthogonality graph on norm-3 pairs, shadow-filtered by default."""
    vecs = np.array(vectors_of_norm(lattice, 3), dtype=np.int64).reshape(-1, lattice.rank)
    removed = 0
    if shadow_filter and len(vecs):
        keep = shadow_filter_many(lattice, vecs)
        removed = int((~keep).sum())
        vecs = vecs[keep]
    ip = vecs @ lattice.gram @ vecs.T
    adjacency = []
    for row in ip == 0:
        bits = 0
        for j in np.nonzero(row)[0].tolist():
            bits |= 1 << j
        adjacency.append(bits)
    return FrameGraph(lattice, vecs, adjacency, shadow_filter, removed)


def vertex_action(graph, aut=None):
    """Permutations of the vertex set induced by generators of Aut(L)."""
    if aut is None:
        aut = automorphism_group(graph.lattice)
    vecs = graph.vectors
    lookup = {tuple(v): i for i, v in enumerate(vecs.tolist())}
    perms = []
    for a in aut.generators:
        img = vecs @ a
        p = np.empty(len(vecs), dtype=np.int32)
        for i, r in enumerate(img.tolist()):
            j = lookup.get(tuple(r))
            if j is None:
                j = lookup[tuple(-x for x in r)]
            p[i] = j
        perms.append(p)
    return perms


# -- search ----------------------------------------------------------------------------


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    group_nodes: int = 0
    seconds: float = 0.0


class _Search:
    def __init__(self, graph, group, size, max_nodes):
        self.adj = graph.adjacency
        self.size = size
        self.max_nodes = max_nodes
        self.stats = SearchStats()
        self.leaves = []
        self.group = group

    def _tick(self):
        self.stats.nodes += 1
        if self.stats.nodes > self.max_nodes:
            raise SearchBudgetExceeded(
                "frame search exceeded %d nodes" % self.max_nodes,
                progress={"nodes": self.stats.nodes, "leaves": len(self.leaves)})

    def _prune(self, cand, need):
        """Drop candidates with fewer than need-1 neighbours among candidates."""
        adj = self.adj
        while True:
            drop = 0
            for v in _bits(cand):
                if _popcount(adj[v] & cand) < need - 1:
                    drop |= 1 << v
            if not drop:
                return cand
            cand &= ~drop

    def _pivot(self, cand):
        adj = self.adj
        best, best_deg = -1, -1
        for v in _bits(cand):
            d = _popcount(adj[v] & cand)
            if d > best_deg:
                best, best_deg = v, d
        return best

    def plan(self, clique, cand, group):
        """Branches at a node: list of (vertex, candidate set for the child).

        Returns None when the node is a dead end.
        """
        need = self.size - len(clique)
        cand = self._prune(cand, need)
        if _popcount(cand) < need:
            return []
        u = self._pivot(cand)
        must = (cand & ~self.adj[u]) | (1 << u)
        if group is None or group.is_trivial():
            branches = []
            for w in _bits(must):
                branches.append((w, cand & self.adj[w], None))
                cand &= ~(1 << w)
            return branches
        labels = group.orbit_labels()
        orbits = {}
        for v in _bits(cand):
            orbits.setdefault(int(labels[v]), []).append(v)
        branches = []
        done = set()
        for w in _bits(must):
            lab = int(labels[w])
            if lab in done:
                continue
            done.add(lab)
            branches.append((w, cand & self.adj[w], lab))
            for v in orbits[lab]:
                cand &= ~(1 << v)
        # children must avoid every earlier orbit; rebuild masks in order
        out = []
        removed = 0
        for w, child, lab in branches:
            out.append((w, child & ~removed))
            for v in orbits[lab]:
                removed |= 1 << v
        return out

    def run(self, clique, cand, group):
        self._tick()
        need = self.size - len(clique)
        if need == 0:
            self.leaves.append(tuple(clique))
            self.stats.leaves += 1
            return
        if group is not None and not group.is_trivial():
            self.stats.group_nodes += 1
        for w, child in self._branches(clique, cand, group):
            if need == 1:
                self._tick()
                self.leaves.append(tuple(clique + [w]))
                self.stats.leaves += 1
                continue
            sub = None
            if group is not None and not group.is_trivial():
                sub = group.stabilizer(w)
            self.run(clique + [w], child, sub)

    def _branches(self, clique, cand, group):
        need = self.size - len(clique)
        if need == 1:
            cand = self._prune(cand, 1)
            if group is None or group.is_trivial():
                return [(w, 0) for w in _bits(cand)]
            labels = group.orbit_labels()
            seen = set()
            out = []
            for w in _bits(cand):
                if int(labels[w]) not in seen:
                    seen.add(int(labels[w]))
                    out.append((w, 0))
            return out
        branches = self.plan(clique, cand, group)
        if group is None or group.is_trivial():
            # plain pivoting: branch vertex removed from later candidate sets
            out = []
            removed = 0
            for w, child, _ in branches:
                out.append((w, child & ~removed))
                removed |= 1 << w
            return out
        return branches


def _n_threads(n_jobs):
    if n_jobs is None:
        env = os.environ.get("SDKIT_THREADS")
        n_jobs = int(env) if env else 1
    return max(1, int(n_jobs))


@dataclass
class FrameSearchResult:
    graph: FrameGraph
    frames: list
    codes: list
    group_order: int
    stats: SearchStats
    leaf_count: int = 0
    aut_orders: list = field(default_factory=list)


def enumerate_frames(graph, aut=None, use_group=True, max_nodes=DEFAULT_MAX_NODES,
                     n_jobs=None):
    """One frame per Aut(L)-orbit of n-cliques, with its projected code.

    Frames are returned sorted by the canonical form of their codes, so the
    output does not depend on thread count or search order.
    """
    lat = graph.lattice
    n = lat.rank
    t0 = time.perf_counter()
    group = None
    order = 1
    if use_group and graph.n_vertices:
        if aut is None:
            aut = automorphism_group(lat)
        group = PermGroup(vertex_action(graph, aut), graph.n_vertices)
        order = aut.order
    full = (1 << graph.n_vertices) - 1
    top = _Search(graph, group, n, max_nodes)
    top._tick()
    first = top._branches([], full, group) if graph.n_vertices >= n else []

    def work(branch):
        w, child = branch
        s = _Search(graph, group, n, max_nodes)
        if n == 1:
            s.leaves.append((w,))
            return s
        sub = group.stabilizer(w) if group is not None and not group.is_trivial() else None
        s.run([w], child, sub)
        return s

    threads = _n_threads(n_jobs)
    if threads > 1 and len(first) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, first))
    else:
        parts = [work(b) for b in first]

    stats = SearchStats(nodes=top.stats.nodes, group_nodes=int(group is not None))
    by_key = {}
    leaf_count = 0
    for part in parts:
        stats.nodes += part.stats.nodes
        stats.group_nodes += part.stats.group_nodes
        for leaf in part.leaves:
            leaf_count += 1
            frame = graph.frame(leaf)
            code = pi_frame(lat, frame)
            key = canonical_form(code)
            if key not in by_key:
                by_key[key] = frame
    stats.leaves = leaf_count
    if stats.nodes > max_nodes:
        raise SearchBudgetExceeded("frame search exceeded %d nodes" % max_nodes,
                                   progress={"nodes": stats.nodes})
    keys = sorted(by_key, key=lambda c: c.rows_as_strings())
    stats.seconds = time.perf_counter() - t0
    return FrameSearchResult(graph, [by_key[k] for k in keys], keys, order, stats,
                             leaf_count)


def count_cliques(graph, size=None, max_nodes=DEFAULT_MAX_NODES):
    """Number of all cliques of the given size (default: the rank), no symmetry."""
    size = graph.lattice.rank if size is None else size
    s = _Search(graph, None, size, max_nodes)
    count = [0]

    def rec(need, cand):
        s._tick()
        if need == 0:
            count[0] += 1
            return
        # order-based enumeration: each clique once, increasing vertex ids
        for v in list(_bits(cand)):
            cand &= ~(1 << v)
            nxt = cand & s.adj[v]
            if _popcount(nxt) >= need - 1:
                rec(need - 1, nxt)

    rec(size, (1 << graph.n_vertices) - 1)
    return count[0]
