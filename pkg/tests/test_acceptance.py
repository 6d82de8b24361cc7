"""Acceptance criteria 1-10.  Each test carries a ``criterion`` mark; the
terminal summary prints one PASS/FAIL line per criterion."""

import time
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations, product
from math import factorial

import numpy as np
import pytest

from sdkit import intmat
from sdkit.classify import classify_lattice
from sdkit.codes import (MonomialTransform, are_equivalent, automorphism_group as code_aut,
                         decompose, direct_sum, is_self_dual, mass_number, minimum_weight,
                         weight_distribution)
from sdkit.construction_a import (a3, check_frame, even_neighbors, full_weight_words,
                                  is_admissible, lemma1_check, pi_frame, proposition_check,
                                  straight_twisted)
from sdkit.constructors import e4, e4_power, eq2_code, g12, p24, qr24
from sdkit.frames import build_gamma, count_cliques, enumerate_frames
from sdkit.isometry import automorphism_group, is_isomorphic, root_system
from sdkit.lattice import LatticeGram, d_plus, integer_lattice, min_norm, vectors_of_norm
from sdkit.report import render_json, render_table
from sdkit.shadow import shadow

crit = pytest.mark.criterion


def _witness_ok(l1, l2, w):
    """U G2 U^T == G1 exactly, U unimodular."""
    u = np.asarray(w.matrix, dtype=object)
    g1, g2 = l1.gram.astype(object), l2.gram.astype(object)
    return np.array_equal(u @ g2 @ u.T, g1) and abs(intmat.det(u.tolist())) == 1


def _roots(lat):
    # vectors_of_norm returns one vector per +- pair
    return 2 * len(vectors_of_norm(lat, 2))


def _neg_word(code):
    return next(w for w in full_weight_words(code)
                if np.prod(np.where(np.asarray(w) == 1, 1, -1)) == -1)


# -- 1. length 4 ------------------------------------------------------------------------------


def _z4_brute_codes():
    """All 4-cliques of +-pairs of norm-3 vectors of Z^4, projected to codes."""
    pairs = set()
    for x in product((-1, 0, 1), repeat=4):
        if sum(t * t for t in x) == 3:
            s = next(t for t in x if t)
            pairs.add(tuple(s * t for t in x))
    pairs = sorted(pairs)
    cliques = [c for c in combinations(pairs, 4)
               if all(np.dot(a, b) == 0 for a, b in combinations(c, 2))]
    return [pi_frame(integer_lattice(4), [list(v) for v in c]) for c in cliques]


def _brute_aut(code):
    words = {tuple(r) for r in code.codewords().tolist()}
    n, count = code.length, 0
    for perm in permutations(range(n)):
        for sign in product((1, -1), repeat=n):
            img = {tuple((sign[perm[j]] * w[perm[j]]) % 3 for j in range(n)) for w in words}
            count += img == words
    return count


@crit(1, "length 4: Z4 gives 1 code ~ E4, #Aut 48, mass 8, < 1 s")
def test_c1_length4():
    t0 = time.perf_counter()
    rep = classify_lattice(integer_lattice(4), name="Z4")
    dt = time.perf_counter() - t0
    assert dt < 1.0
    assert rep.N == 1
    assert are_equivalent(rep.codes[0], e4()) is not None
    assert rep.aut_orders == [48]
    assert rep.mass_contribution == 2 ** 4 * factorial(4) // 48 == 8 == mass_number(4)
    # oracle: every 4-clique gives a code equivalent to E4; 384 monomials fix 48
    brute = _z4_brute_codes()
    assert len(brute) == 8
    assert all(are_equivalent(c, e4()) is not None for c in brute)
    assert _brute_aut(e4()) == 48


# -- 2. length 12 ------------------------------------------------------------------------------


@crit(2, "length 12: mass 44817920, unique code with A3 ~ D12+ is G12, < 10 min")
def test_c2_length12(length12_timed, d12):
    rep, dt = length12_timed
    assert dt < 600
    assert rep.mass.passed
    assert rep.mass.total == rep.mass.expected == 44817920
    hits = [c for c in rep.codes if is_isomorphic(a3(c), d12) is not None]
    assert len(hits) == 1
    assert are_equivalent(hits[0], g12()) is not None


# -- 3. D12+ + D12+ ---------------------------------------------------------------------------------


@crit(3, "D12+ + D12+: N=1, G12+G12, #Aut 72260812800, < 30 min")
def test_c3_row154(row154_timed):
    _, rep, dt = row154_timed
    assert dt < 1800
    assert rep.method == "blockwise"
    assert rep.N == 1
    assert rep.aut_orders == [72260812800]
    parts = decompose(rep.codes[0])
    assert sorted(len(s) for s, _ in parts) == [12, 12]
    assert all(are_equivalent(c, g12()) is not None for _, c in parts)
    assert are_equivalent(rep.codes[0], direct_sum(g12(), g12())) is not None
    assert "154 | 1 | 72260812800" in render_table(rep)


# -- 4. norm-count identities ------------------------------------------------------------------------------------


@crit(4, "alpha1 = beta3, alpha2 = beta6 + 3 beta3 on produced and built-in codes")
def test_c4_lemma1(z4_report, length12, row154):
    codes = (z4_report.codes + length12.codes + row154[1].codes
             + [e4_power(6), direct_sum(g12(), g12()), eq2_code()])
    assert len(codes) >= 8
    for c in codes:
        r = lemma1_check(c)
        assert r["alpha1"] == r["beta3"]
        assert r["alpha2"] == r["beta6"] + 3 * r["beta3"]
        assert r["passed"]


# -- 5. A24 ---------------------------------------------------------------------------------------------


@crit(5, "L_T of the A24 code is even unimodular with 600 roots, A24, < 5 min")
def test_c5_niemeier_a24():
    t0 = time.perf_counter()
    _, lt = straight_twisted(eq2_code())
    assert lt.is_even() and lt.determinant == 1
    assert _roots(lt) == 600 == 24 * 25
    rs = root_system(lt)
    assert str(rs) == "A24" and rs.rank == 24
    assert time.perf_counter() - t0 < 300


# -- 6. D24 ------------------------------------------------------------------------------------------------


@crit(6, "even neighbors of A3(E4^6): two isomorphic D24 lattices, 1104 roots")
def test_c6_d24():
    n1, n3 = even_neighbors(a3(e4_power(6)))
    for lat in (n1, n3):
        assert lat.is_even() and lat.determinant == 1
        assert _roots(lat) == 1104 == 2 * 24 * 23
        assert str(root_system(lat)) == "D24"
    assert is_isomorphic(n1, n3) is not None


# -- 7. S/T swap -------------------------------------------------------------------------------------------


@crit(7, "A24 code not admissible; L_S(C).P ~ L_T(C.P) by is_isomorphic")
def test_c7_proposition():
    c = eq2_code()
    assert not is_admissible(c)
    v = _neg_word(c)
    r = proposition_check(c, v)
    assert r["product"] == -1
    moved, _, lt_p = r["lattices"]
    w = is_isomorphic(moved, lt_p)
    assert w is not None and _witness_ok(moved, lt_p, w)
    assert r["passed"]


# -- 8. beta24 identity -------------------------------------------------------------------------------------------


def _corpus24(length12_codes):
    base = [e4_power(6), direct_sum(g12(), g12()), eq2_code(), qr24(), p24()]
    rng = np.random.default_rng(24)
    images = [MonomialTransform.random(24, rng).apply_code(c) for c in base]
    sums = [direct_sum(a, b) for a, b in combinations_with_replacement(length12_codes, 2)]
    return base + images + sums


@crit(8, "beta24 = 48 - 21 beta3 + beta6 on every length-24 self-dual code")
def test_c8_beta24(length12):
    corpus = _corpus24(length12.codes)
    assert len(corpus) == 10 + len(length12.codes) * (len(length12.codes) + 1) // 2
    for c in corpus:
        assert c.length == 24 and is_self_dual(c)
        wd = weight_distribution(c)
        assert wd[24] == 48 - 21 * wd[3] + wd[6]


# -- 9. extremal codes ---------------------------------------------------------------------------------------------


@crit(9, "QR24 and P24: inequivalent self-dual [24,12,9], A3 min norm 3")
def test_c9_extremal():
    codes = [qr24(), p24()]
    for c in codes:
        assert is_self_dual(c)
        assert (c.length, c.dimension, minimum_weight(c)) == (24, 12, 9)
        assert min_norm(a3(c)) == 3
    assert are_equivalent(*codes) is None


# -- 10. property suites ----------------------------------------------------------------------------------------------


@crit(10, "property suites: frames, shadow, witnesses, clique orbits, threads")
@pytest.mark.parametrize("lat", [integer_lattice(4), integer_lattice(8), d_plus(12)],
                         ids=["Z4", "Z8", "D12+"])
def test_c10_frame_exactness(lat):
    res = enumerate_frames(build_gamma(lat))
    assert res.frames
    g = lat.gram.astype(object)
    for f in res.frames:
        m = np.array(f.vectors, dtype=object)
        assert np.array_equal(m @ g @ m.T, 3 * np.eye(lat.rank, dtype=object))
        check_frame(lat, f.vectors)


@crit(10, "property suites: frames, shadow, witnesses, clique orbits, threads")
@pytest.mark.parametrize("lat", [integer_lattice(4), integer_lattice(12), d_plus(12)],
                         ids=["Z4", "Z12", "D12+"])
def test_c10_shadow_norms(lat):
    n = lat.rank
    sd = shadow(lat)
    for coset in (1, 3):
        twice, norms = sd.doubled_vectors(coset, Fraction(n, 4) + 2)
        assert len(norms)
        assert all((q - Fraction(n, 4)) % 2 == 0 for q in norms)


@crit(10, "property suites: frames, shadow, witnesses, clique orbits, threads")
@pytest.mark.parametrize("seed", [0, 1])
def test_c10_witness_conjugation(seed, d12):
    rng = np.random.default_rng(seed)
    u = np.eye(12, dtype=np.int64)
    for _ in range(20):
        i, j = rng.choice(12, size=2, replace=False)
        u[i] += int(rng.integers(-1, 2)) * u[j]
    moved = LatticeGram(d12.gram.copy()).transform(u)
    for l1, l2 in ((moved, d12), (a3(g12()), moved)):
        w = is_isomorphic(l1, l2)
        assert w is not None and _witness_ok(l1, l2, w)


@crit(10, "property suites: frames, shadow, witnesses, clique orbits, threads")
@pytest.mark.parametrize("lat", [integer_lattice(4), integer_lattice(8)], ids=["Z4", "Z8"])
def test_c10_clique_orbits_small(lat):
    # number of frames = sum over orbits of |Aut(L)| / |Aut(C)|
    res = enumerate_frames(build_gamma(lat))
    aut_l = automorphism_group(lat).order
    assert aut_l == 2 ** lat.rank * factorial(lat.rank)
    total = sum(aut_l // code_aut(c).order for c in res.codes)
    assert total == count_cliques(build_gamma(lat))


def _count_bitset(adj, size, cand):
    if size == 0:
        return 1
    total = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        cand ^= low
        nxt = cand & adj[v]
        if bin(nxt).count("1") >= size - 1:
            total += _count_bitset(adj, size - 1, nxt)
    return total


@crit(10, "property suites: frames, shadow, witnesses, clique orbits, threads")
def test_c10_clique_orbits_d12_plus(d12):
    # frames of D12+ by double counting through the pairs 1 and x0
    x0 = np.array([-1] * 6 + [1] * 6)
    common = []
    for minus in combinations(range(12), 6):
        x = np.ones(12, dtype=np.int64)
        x[list(minus)] = -1
        if x[0] > 0 and x @ x0 == 0:
            common.append(x)
    vecs = np.array(common)
    adj = [sum(1 << int(j) for j in np.nonzero(row)[0]) for row in (vecs @ vecs.T) == 0]
    frames = 1024 * 462 * _count_bitset(adj, 10, (1 << len(common)) - 1) // (12 * 11)
    res = enumerate_frames(build_gamma(d12))
    aut_l = automorphism_group(d12).order
    assert frames == sum(aut_l // code_aut(c).order for c in res.codes) == 5160960


@crit(10, "property suites: frames, shadow, witnesses, clique orbits, threads")
@pytest.mark.parametrize("lat", [integer_lattice(12), d_plus(12)], ids=["Z12", "D12+"])
def test_c10_thread_determinism(lat):
    docs = {render_json(classify_lattice(lat, n_jobs=k, name="L")) for k in (1, 3)}
    assert len(docs) == 1
