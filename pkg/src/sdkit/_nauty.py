"""Thin layer over pynauty for vertex-colored graphs."""

import numpy as np
import pynauty


class ColoredGraph:
    """Undirected graph with an ordered vertex partition (colors)."""

    def __init__(self, n_vertices, colors):
        self.n = n_vertices
        self.colors = list(colors)
        self.adj = [set() for _ in range(n_vertices)]

    def add_edge(self, a, b):
        if a != b:
            self.adj[a].add(b)
            self.adj[b].add(a)

    def add_edges_from(self, a, bs):
        for b in bs:
            self.add_edge(a, int(b))

    def _partition(self):
        order = sorted(set(self.colors))
        cells = {c: set() for c in order}
        for v, c in enumerate(self.colors):
            cells[c].add(v)
        return [cells[c] for c in order]

    def to_pynauty(self):
        adj = {v: sorted(nb) for v, nb in enumerate(self.adj) if nb}
        return pynauty.Graph(self.n, directed=False, adjacency_dict=adj,
                             vertex_coloring=self._partition())

    def color_signature(self):
        return tuple(sorted((c, self.colors.count(c)) for c in set(self.colors)))


def exact_order(grpsize1, grpsize2):
    """nauty reports |G| as a double; return it as an int when exactly representable."""
    value = grpsize1 * 10.0 ** grpsize2
    if value < 2.0 ** 52:
        return int(round(value))
    return None


def automorphisms(graph):
    """Return ``(generators, order_or_None, orbits)``."""
    gens, size1, size2, orbits, _ = pynauty.autgrp(graph.to_pynauty())
    gens = [np.asarray(g, dtype=np.int32) for g in gens]
    return gens, exact_order(size1, size2), np.asarray(orbits)


def canonical(graph):
    """Return ``(certificate, labeling)`` with labeling[i] = vertex placed at i."""
    g = graph.to_pynauty()
    lab = pynauty.canon_label(g)
    cert = pynauty.certificate(g)
    return (graph.color_signature(), cert), list(lab)


def isomorphism(g1, g2):
    """Vertex map g1 -> g2 (as an array) or None."""
    c1, lab1 = canonical(g1)
    c2, lab2 = canonical(g2)
    if c1 != c2:
        return None
    out = np.empty(g1.n, dtype=np.int64)
    out[np.asarray(lab1)] = np.asarray(lab2)
    return out
