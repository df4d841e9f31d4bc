import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cliffspin.clifford import (
    CliffordRealization,
    a_op,
    algebra_dimension,
    build,
    clifford_algebra_dim_from_spinors,
    clifford_conj_sign,
    dichotomy_check,
    e_k,
    e_op,
    left_mult_matrix,
    m_op,
    monomial,
    quadratic_form_holds,
    right_mult_matrix,
    spinor_dim,
    split,
    verify_relations,
    volume_element,
)
from cliffspin.errors import UnsupportedDimension
from cliffspin.hypercomplex import Hypercomplex, cd_mul, norm2
from cliffspin.linalg import ExactMatrix, SignedPerm

from .test_hypercomplex import GOLDEN, hyper, octonions

quaternions = hyper(4)


def e(i, dim=8):
    return Hypercomplex.basis(dim, i)


def test_right_mult_matches_golden_table():
    for p in range(8):
        R = right_mult_matrix(e(p))
        for row in GOLDEN:
            if row["j"] != p:
                continue
            col = R.apply(e(row["i"]).coords)
            expected = [0] * 8
            expected[row["k"]] = row["sign"]
            assert list(col) == expected


@given(octonions, octonions)
def test_right_mult_agrees_with_product(p, x):
    assert right_mult_matrix(p).apply(x.coords) == cd_mul(x, p).coords


@given(quaternions, quaternions)
def test_left_mult_agrees_with_product(q, x):
    assert left_mult_matrix(q).apply(x.coords) == cd_mul(q, x).coords
    assert right_mult_matrix(q).apply(x.coords) == cd_mul(x, q).coords


@given(octonions)
def test_m_op_squares_to_minus_norm(p):
    m = m_op(p)
    assert m @ m == ExactMatrix.identity(16, -norm2(p))


@given(octonions)
def test_m_op_anticommutes_with_e(p):
    m, E = m_op(p), e_op()
    assert (m @ E + E @ m).is_zero()


def test_e_k_shapes():
    assert e_k(0) == SignedPerm.identity(1)
    assert e_k(2).size == 256
    assert e_k(2) @ e_k(2) == SignedPerm.identity(256)


def test_a_op_reduces_to_m_op():
    for i in range(8):
        assert a_op(1, 1, e(i)) == m_op(e(i))
    with pytest.raises(IndexError):
        a_op(2, 1, e(0))


def test_a_op_two_slots_anticommute():
    ops = [a_op(s, 2, e(i)) for s in (1, 2) for i in range(8)]
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            assert ops[a].anticommutator_is_zero(ops[b])
    sq = a_op(2, 2, e(3)).to_numpy()
    assert np.array_equal(sq @ sq, -np.eye(256))


def test_split_and_spinor_dims():
    assert split(13) == (1, 5)
    assert [spinor_dim(n) for n in range(1, 8)] == [2, 4, 4, 8, 8, 8, 8]
    assert spinor_dim(8) == 16 and spinor_dim(16) == 256


@pytest.mark.parametrize(
    "n,shape,pair",
    [(1, 2, False), (3, 4, True), (7, 8, True), (8, 16, False), (11, 64, True), (13, 128, False)],
)
def test_build_shapes(n, shape, pair):
    r = build(n)
    assert r.semisimple_pair is pair
    assert len(r.generators) == n
    for tag in r.components:
        assert all(g.shape == (shape, shape) for g in r.component(tag))


def test_build_rejects_zero():
    with pytest.raises(UnsupportedDimension):
        build(0)


def test_build_is_deterministic():
    assert build(9).to_json() == build(9).to_json()


@pytest.mark.parametrize("n", range(1, 11))
def test_all_generators_are_signed_permutations(n):
    r = build(n)
    report = verify_relations(r)
    assert report.passed
    assert report.non_signed_perm == []
    per = n * (n + 1) // 2
    assert report.checked_pairs == per * len(r.components)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 9])
def test_quadratic_form_random_rationals(n):
    r = build(n)
    rng = random.Random(n)
    for tag in r.components:
        gens = r.component(tag)
        for _ in range(100):
            x = [Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(n)]
            assert quadratic_form_holds(gens, x)


def test_quadratic_form_detects_bad_generators():
    gens = list(build(4).generators)
    gens[1] = gens[2]
    assert not quadratic_form_holds(gens, [0, 1, 1, 0])


def test_fault_injection_names_the_pair():
    r = build(5)
    gens = list(r.generators)
    gens[3] = gens[1]
    bad = CliffordRealization(r.n, r.k, r.m, False, tuple(gens), r.spinor_dim)
    report = verify_relations(bad)
    assert not report.passed
    assert ("single", 1, 3, "pair does not anticommute") in report.violations
    assert all(v[1] in (1, 3) or v[2] in (1, 3) for v in report.violations)


def test_fault_injection_detects_sign_flip_in_square():
    r = build(4)
    gens = list(r.generators)
    gens[0] = gens[0] @ gens[1] @ gens[2]
    report = verify_relations(CliffordRealization(4, 0, 4, False, tuple(gens), 8))
    assert (("single", 0, 0, "square is not -Id")) in report.violations


def test_json_roundtrip():
    for n in (3, 6, 9):
        r = build(n)
        obj = json.loads(json.dumps(r.to_json()))
        back = CliffordRealization.from_json(obj)
        assert back == r
        assert verify_relations(back).passed


def test_volume_elements():
    # n = 3: the two components give opposite real scalars
    v3 = volume_element(build(3))
    assert sorted(v.scalar_value() for v in v3) == [-1, 1]
    v8 = volume_element(build(8))[0]
    assert v8.scalar_value() is None
    assert v8 @ v8 == SignedPerm.identity(16)
    v11 = volume_element(build(11))
    assert sorted(v.scalar_value() for v in v11) == [-1, 1]


@pytest.mark.parametrize("n", range(1, 12))
def test_dichotomy(n):
    report = dichotomy_check(build(n))
    assert report.passed
    assert report.requires_non_scalar == (n % 4 == 3)
    if n % 4 == 3:
        assert all(s is not None for s in report.component_scalars)
        assert not report.direct_sum_scalar
    else:
        assert report.component_scalars[0] is None


def test_volume_element_square_sign():
    # (e_0 ... e_{n-1})^2 = (-1)^(n(n+1)/2)
    for n in range(1, 10):
        for v in volume_element(build(n)):
            assert (v @ v).scalar_value() == (-1) ** (n * (n + 1) // 2)


@pytest.mark.parametrize("n", range(1, 8))
def test_algebra_dimension_matches_accounting(n):
    r = build(n)
    total = sum(algebra_dimension(r.component(t)) for t in r.components)
    assert total == 2**n == clifford_algebra_dim_from_spinors(n)


def test_algebra_dimension_backends_agree():
    gens = build(4).generators
    assert algebra_dimension(gens, backend="python") == algebra_dimension(gens) == 16


def test_monomial_empty_is_identity():
    assert monomial(build(2).generators, ()) == SignedPerm.identity(4)


def test_clifford_conj_sign():
    assert clifford_conj_sign(()) == 1
    assert clifford_conj_sign((0,)) == -1
    assert clifford_conj_sign((0, 1)) == -1
    assert clifford_conj_sign((0, 1, 2)) == 1
    assert clifford_conj_sign((0, 1, 2, 3)) == 1
    assert clifford_conj_sign((1,), convention="index-sum") == -1
    assert clifford_conj_sign((0, 2), convention="index-sum") == -1
    with pytest.raises(ValueError):
        clifford_conj_sign((0,), convention="other")


@given(st.lists(st.integers(0, 5), min_size=0, max_size=6, unique=True).map(sorted))
def test_clifford_conj_is_reversion_times_involution(alpha):
    # conj(e_alpha) = reverse order and negate each factor, checked in Cl_6
    gens = build(6).generators
    mono = monomial(gens, alpha)
    conj_mono = monomial([-g for g in gens], list(reversed(alpha)))
    assert conj_mono == mono * clifford_conj_sign(alpha)
