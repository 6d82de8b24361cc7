from itertools import product

import numpy as np
import pytest

from sdkit import intmat
from sdkit.codes import (MonomialTransform, TernaryCode, are_equivalent, direct_sum,
                         weight_distribution)
from sdkit.construction_a import (a3, a3_basis, b3, check_frame, even_neighbors,
                                  full_weight_words, is_admissible, lemma1_check,
                                  pi_frame, proposition_check, standard_frame,
                                  straight_twisted)
from sdkit.constructors import e4, e4_power, eq2_code, g12, qr24
from sdkit.exceptions import InvalidFrameError, InvalidLatticeError, NotSelfDualError
from sdkit.isometry import are_isometric, is_isomorphic, root_system
from sdkit.lattice import (LatticeGram, d_plus, integer_lattice, min_norm, same_lattice,
                           theta_prefix, vectors_of_norm)


def _contains(big, small):
    """Every basis row of ``small`` is an integer combination of ``big`` rows."""
    b = intmat.to_rows(big.embedding[0])
    for row in intmat.to_rows(small.embedding[0]):
        x = intmat.solve_rational(b, row)
        if any(t.denominator != 1 for t in x):
            return False
    return True


# -- A3 ----------------------------------------------------------------------------------


def test_a3_definition_brute_force():
    # {x in {-3..3}^4 : x mod 3 in E4}: count norm-1 vectors (x.x / 3 == 1)
    words = {tuple(int(c) for c in w) for w in e4().codewords().tolist()}
    count = 0
    for x in product(range(-3, 4), repeat=4):
        if tuple(t % 3 for t in x) in words and sum(t * t for t in x) == 3:
            count += 1
    assert count == theta_prefix(a3(e4()), 1)[0] == 8


@pytest.mark.parametrize("code", [e4(), g12(), e4_power(3), direct_sum(e4(), g12())])
def test_a3_unimodular_min_norm(code):
    lat = a3(code)
    assert lat.rank == code.length
    assert lat.determinant == 1
    d = weight_distribution(code).min_weight
    assert min_norm(lat) == min(3, d // 3)


def test_a3_qr24_min_norm_3():
    assert min_norm(a3(qr24())) == 3


def test_a3_rejects_non_self_dual():
    with pytest.raises(NotSelfDualError):
        a3(TernaryCode.from_rows(["1100"]))


def test_a3_basis_rows_are_lifts():
    code = g12()
    for row in a3_basis(code):
        assert code.contains([r % 3 for r in row])


# -- norm-count identities ---------------------------------------------------------------------------------


def test_lemma1_e4():
    r = lemma1_check(e4())
    assert (r["alpha1"], r["beta3"], r["alpha2"], r["beta6"]) == (8, 8, 24, 0)
    assert r["passed"]


def test_lemma1_g12():
    r = lemma1_check(g12())
    assert (r["alpha1"], r["alpha2"], r["beta6"]) == (0, 264, 264)
    assert r["passed"]


def test_lemma1_g12_g12():
    r = lemma1_check(direct_sum(g12(), g12()))
    assert r["alpha2"] == 528 == r["beta6"]
    assert r["passed"]


# -- frames -----------------------------------------------------------------------------------------


@pytest.mark.parametrize("code", [e4(), g12(), e4_power(2), direct_sum(e4(), g12())])
def test_standard_frame_round_trip(code):
    lat, frame = standard_frame(code)
    f = check_frame(lat, frame)
    assert pi_frame(lat, f) == code


def test_pi_frame_rejects_bad_frames():
    lat = integer_lattice(4)
    with pytest.raises(InvalidFrameError):
        pi_frame(lat, [[1, 1, 1, 0]] * 3)
    with pytest.raises(InvalidFrameError):
        pi_frame(lat, [[1, 1, 1, 0], [1, 1, 1, 0], [1, -1, 0, 1], [0, 1, -1, 1]])


def test_z4_frame_gives_e4():
    lat = integer_lattice(4)
    frame = [[1, 1, 1, 0], [1, -1, 0, 1], [1, 0, -1, -1], [0, 1, -1, 1]]
    code = pi_frame(lat, frame)
    assert are_equivalent(code, e4()) is not None


def test_d12_plus_frame_gives_g12():
    lat = d_plus(12)
    _, frame = standard_frame(g12())
    # transport the standard frame of A3(G12) into D12+ through an isometry
    w = is_isomorphic(a3(g12()), lat)
    u = np.asarray(w.matrix, dtype=object)
    moved = [list(np.asarray(v, dtype=object) @ u) for v in frame]
    assert are_equivalent(pi_frame(lat, moved), g12()) is not None


# -- B3 and neighbors -----------------------------------------------------------------------------


@pytest.mark.parametrize("code", [e4(), g12()])
def test_b3_is_even_index_two(code):
    b = b3(code)
    assert b.is_even()
    assert b.determinant == 4
    assert b.rank == code.length


def test_b3_e4_is_d4():
    assert 2 * len(vectors_of_norm(b3(e4()), 2)) == 24
    assert str(root_system(b3(e4()))) == "D4"


def test_straight_twisted_eq2():
    c = eq2_code()
    ls, lt = straight_twisted(c)
    bb = b3(c)
    for lat in (ls, lt):
        assert lat.is_even() and lat.determinant == 1
        # 2-neighbors of A3(C): both contain B3(C)
        assert _contains(lat, bb)


def test_straight_twisted_requires_all_ones():
    with pytest.raises(ValueError):
        straight_twisted(e4_power(6))
    with pytest.raises(ValueError):
        straight_twisted(e4())


def test_even_neighbors_match_straight_twisted():
    c = eq2_code()
    ls, lt = straight_twisted(c)
    n1, n3 = even_neighbors(a3(c))
    pairs = {(same_lattice(ls, n1), same_lattice(lt, n3)),
             (same_lattice(ls, n3), same_lattice(lt, n1))}
    assert (True, True) in pairs


def test_even_neighbors_rejects():
    with pytest.raises(InvalidLatticeError):
        even_neighbors(LatticeGram(np.array([[2]], dtype=np.int64)))
    with pytest.raises(ValueError):
        even_neighbors(integer_lattice(12))


def test_even_neighbors_z8():
    n1, n3 = even_neighbors(integer_lattice(8))
    for lat in (n1, n3):
        assert lat.is_even() and lat.determinant == 1
        assert len(vectors_of_norm(lat, 2)) == 120


def test_even_neighbors_z24_isomorphic():
    n1, n3 = even_neighbors(integer_lattice(24))
    assert str(root_system(n1)) == str(root_system(n3)) == "D24"
    assert are_isometric(n1, n3)


# -- admissibility and the S/T swap ----------------------------------------------------------


def test_eq2_not_admissible():
    c = eq2_code()
    assert not is_admissible(c)
    words = full_weight_words(c)
    prods = [int(np.prod(np.where(np.asarray(w) == 1, 1, -1))) for w in words]
    assert -1 in prods and 1 in prods


def test_proposition_trivial_word():
    c = eq2_code()
    r = proposition_check(c, np.ones(24, dtype=np.int64))
    assert r["product"] == 1
    assert r["equals_LS"] and r["passed"]


def test_proposition_swap():
    c = eq2_code()
    neg = [w for w in full_weight_words(c)
           if np.prod(np.where(np.asarray(w) == 1, 1, -1)) == -1]
    r = proposition_check(c, neg[0])
    assert r["product"] == -1
    assert r["equals_LT"] and r["passed"]


def test_proposition_preconditions():
    with pytest.raises(ValueError):
        proposition_check(eq2_code(), [1] * 23 + [0])
    with pytest.raises(ValueError):
        proposition_check(e4_power(6), [1] * 24)


def test_twisted_after_sign_change_is_a12_squared():
    # for C' = C.P with a product -1 word, L_T(C') is L_S(C) moved by P
    c = eq2_code()
    neg = next(w for w in full_weight_words(c)
               if np.prod(np.where(np.asarray(w) == 1, 1, -1)) == -1)
    p = MonomialTransform(tuple(range(24)),
                          tuple(int(s) for s in np.where(np.asarray(neg) == 1, 1, -1)))
    _, lt = straight_twisted(p.apply_code(c))
    ls, _ = straight_twisted(c)
    assert str(root_system(ls)) == "A12^2"
    assert str(root_system(lt)) == "A12^2"
