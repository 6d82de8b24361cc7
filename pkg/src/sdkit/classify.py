"""Classification of self-dual codes through the 3-frames of lattices."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product

import numpy as np
from sklearn.base import BaseEstimator

from .codes import (automorphism_group as code_aut, canonical_form, direct_sum,
                    is_decomposable, mass_check, mass_contribution, t_class,
                    weight_distribution)
from .construction_a import a3
from .exceptions import InvalidLatticeError
from .frames import DEFAULT_MAX_NODES, build_gamma, enumerate_frames
from .isometry import decompose_lattice, is_isomorphic
from .lattice import min_norm
from .validation import check_lattice


@dataclass
class CodeRecord:
    code: object
    aut_order: int
    beta3: int
    beta6: int
    decomposable: bool

    @property
    def genmat(self):
        return self.code.rows_as_strings()

    def sort_key(self):
        return (self.beta3, self.beta6, self.aut_order, tuple(self.genmat))

    def to_dict(self):
        return {
            "genmat": self.genmat,
            "aut_order": str(self.aut_order),
            "beta3": self.beta3,
            "beta6": self.beta6,
            "decomposable": self.decomposable,
        }


def code_record(code, aut_order=None):
    wd = weight_distribution(code)
    if aut_order is None:
        aut_order = code_aut(code).order
    return CodeRecord(code, aut_order, wd[3], wd[6], is_decomposable(code))


@dataclass
class ClassificationReport:
    """Inequivalent codes C with A3(C) isometric to one lattice."""

    lattice: str
    n: int
    records: list
    method: str = "search"
    stats: dict = field(default_factory=dict)

    @property
    def N(self):
        return len(self.records)

    @property
    def codes(self):
        return [r.code for r in self.records]

    @property
    def aut_orders(self):
        return [r.aut_order for r in self.records]

    @property
    def mass_contribution(self):
        return sum((mass_contribution(self.n, r.aut_order) for r in self.records), 0)

    def to_dict(self):
        return {
            "lattice": self.lattice,
            "n": self.n,
            "N": self.N,
            "codes": [r.to_dict() for r in self.records],
            "mass_contribution": str(self.mass_contribution),
        }


def _sorted_records(codes, aut_orders=None):
    if aut_orders is None:
        aut_orders = [None] * len(codes)
    recs = [code_record(c, a) for c, a in zip(codes, aut_orders)]
    return sorted(recs, key=CodeRecord.sort_key)


def _blockwise_ok(components):
    # a norm-3 vector cannot straddle components when every component has
    # minimum norm >= 2 (norms add and 2 + 2 > 3)
    return len(components) > 1 and all(min_norm(c) >= 2 for c in components)


def classify_lattice(lattice, shadow_filter=True, blockwise=True, n_jobs=None,
                     max_nodes=DEFAULT_MAX_NODES, name=None, verify=True):
    """Codes C (up to equivalence) with A3(C) isometric to ``lattice``."""
    lattice = check_lattice(lattice, unimodular=True)
    label = name or lattice.name or "L"
    n = lattice.rank
    if lattice.is_even() or n % 4:
        # no norm-3 vectors, or no self-dual code of this length
        return ClassificationReport(label, n, [], method="empty")
    if blockwise:
        comps = decompose_lattice(lattice)
        if _blockwise_ok(comps):
            return _classify_blockwise(lattice, comps, label, shadow_filter, n_jobs,
                                       max_nodes)
    graph = build_gamma(lattice, shadow_filter=shadow_filter)
    result = enumerate_frames(graph, max_nodes=max_nodes, n_jobs=n_jobs)
    records = _sorted_records(result.codes)
    if verify:
        _verify_records(records, lattice)
    stats = {
        "vertices": graph.n_vertices,
        "edges": graph.n_edges,
        "filtered": graph.removed,
        "nodes": result.stats.nodes,
        "leaves": result.stats.leaves,
        "aut_order": result.group_order,
    }
    return ClassificationReport(label, n, records, method="search", stats=stats)


def _classify_blockwise(lattice, comps, label, shadow_filter, n_jobs, max_nodes):
    """Every frame is a union of frames of the components."""
    # classify each isometry class of component once
    classes = []  # (representative, report, multiplicity)
    for c in comps:
        for entry in classes:
            if entry[0].rank == c.rank and is_isomorphic(entry[0], c) is not None:
                entry[2] += 1
                break
        else:
            rep = classify_lattice(c, shadow_filter=shadow_filter, blockwise=True,
                                   n_jobs=n_jobs, max_nodes=max_nodes,
                                   name="component", verify=False)
            classes.append([c, rep, 1])
    pools = []
    for _, rep, mult in classes:
        if not rep.records:
            return ClassificationReport(label, lattice.rank, [], method="blockwise")
        pools.append(list(combinations_with_replacement(rep.codes, mult)))
    codes = {}
    for choice in product(*pools):
        parts = [c for group in choice for c in group]
        total = canonical_form(direct_sum(*parts))
        codes[total] = None
    records = _sorted_records(list(codes))
    _verify_records(records, lattice, full_check=False)
    stats = {"components": [c.rank for c in comps]}
    return ClassificationReport(label, lattice.rank, records, method="blockwise",
                                stats=stats)


def _verify_records(records, lattice, full_check=True):
    """Pairwise inequivalence (canonical forms) and A3(C) ~ L checks."""
    keys = [canonical_form(r.code) for r in records]
    if len(set(keys)) != len(keys):
        raise RuntimeError("classification returned equivalent codes")
    for r in records:
        lat = a3(r.code)
        if lat.determinant != lattice.determinant:
            raise RuntimeError("A3(C) has the wrong determinant")
        if full_check and lattice.rank <= 12:
            if is_isomorphic(lat, lattice) is None:
                raise RuntimeError("A3(C) is not isometric to the source lattice")


# -- whole lengths -----------------------------------------------------------------


@dataclass
class LengthReport:
    n: int
    reports: list
    mass: object

    @property
    def records(self):
        return [r for rep in self.reports for r in rep.records]

    @property
    def codes(self):
        return [r.code for r in self.records]

    @property
    def N(self):
        return len(self.records)

    def t_values(self):
        """T_i = sum of 1/|Aut| over indecomposable codes with 2i weight-3 words."""
        out = {}
        recs = self.records
        for i in sorted({r.beta3 // 2 for r in recs}):
            _, t = t_class([r.code for r in recs], i, [r.aut_order for r in recs])
            out[i] = t
        return out

    def to_dict(self):
        return {
            "n": self.n,
            "N": self.N,
            "lattices": [r.to_dict() for r in self.reports],
            "mass": {
                "total": str(self.mass.total),
                "expected": str(self.mass.expected),
                "passed": self.mass.passed,
                "deficit": str(self.mass.deficit),
            },
            "T": {str(i): str(t) for i, t in self.t_values().items()},
        }


def classify_length(n, catalog, shadow_filter=True, n_jobs=None,
                    max_nodes=DEFAULT_MAX_NODES):
    """Classify over a catalog of lattices (entries or (name, lattice) pairs).

    Codes from different lattices are inequivalent automatically, since
    A3(C) is an invariant of the equivalence class.
    """
    reports = []
    for entry in catalog:
        name, lat = (entry.name, entry.payload) if hasattr(entry, "payload") else entry
        if lat.rank != n:
            raise InvalidLatticeError("catalog entry %s has rank %d, expected %d"
                                      % (name, lat.rank, n))
        if lat.is_even():
            continue
        reports.append(classify_lattice(lat, shadow_filter=shadow_filter, n_jobs=n_jobs,
                                        max_nodes=max_nodes, name=name))
    recs = [r for rep in reports for r in rep.records]
    mass = mass_check([r.code for r in recs], n, aut_orders=[r.aut_order for r in recs])
    return LengthReport(n, reports, mass)


# -- estimator ------------------------------------------------------------------------


class FrameClassifier(BaseEstimator):
    """Estimator-style wrapper: ``fit(lattice)`` classifies its 3-frames.

    Fitted attributes: ``report_``, ``codes_``, ``aut_orders_``,
    ``n_codes_``, ``mass_contribution_``.
    """

    def __init__(self, shadow_filter=True, blockwise=True, n_jobs=None,
                 max_nodes=DEFAULT_MAX_NODES):
        self.shadow_filter = shadow_filter
        self.blockwise = blockwise
        self.n_jobs = n_jobs
        self.max_nodes = max_nodes

    def fit(self, X, y=None):
        lattice = check_lattice(X, unimodular=True)
        self.report_ = classify_lattice(lattice, shadow_filter=self.shadow_filter,
                                        blockwise=self.blockwise, n_jobs=self.n_jobs,
                                        max_nodes=self.max_nodes)
        self.codes_ = self.report_.codes
        self.aut_orders_ = self.report_.aut_orders
        self.n_codes_ = self.report_.N
        self.mass_contribution_ = self.report_.mass_contribution
        return self

    def transform(self, X=None):
        """Generator matrices of the classified codes, as GF(3) arrays."""
        if not hasattr(self, "report_"):
            from sklearn.exceptions import NotFittedError
            raise NotFittedError("FrameClassifier is not fitted yet")
        return [np.asarray(c.generator, dtype=np.int64) for c in self.codes_]

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()
