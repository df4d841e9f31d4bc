import pytest

from cliffspin.clifford import build, monomial
from cliffspin.errors import ObstructedDimension, UnsupportedDimension
from cliffspin.gilbert import (
    GilbertWitness,
    check_gilbert,
    dim_obstruction,
    even_generators,
    mixed_signature_check,
    spinning_evidence,
    standard_h0,
    standard_witness,
)
from cliffspin.linalg import SignedPerm, Subspace, image

WITNESS_N = [2, 3, 4, 5, 8, 9, 10, 11, 12]


@pytest.mark.parametrize("n", WITNESS_N)
def test_standard_witness_verdict(n):
    r = build(n)
    for tag in (("+", "-") if r.semisimple_pair else ("+",)):
        w = standard_witness(n, tag, realization=r)
        report = check_gilbert(r, w)
        assert report.verdict, report.to_json()
        assert w.h0.dim * 2 == r.spinor_dim
        assert report.simplified_agrees in (True, None)


def test_eta_choice_by_residue():
    assert standard_witness(4).eta_index == 0
    assert standard_witness(11).eta_index == 1
    assert standard_witness(13).eta_index == 1
    assert standard_witness(9).eta_vector == [1] + [0] * 8


def test_eta_squares_to_minus_identity():
    for n in (2, 5, 10):
        w = standard_witness(n)
        assert w.eta_matrix @ w.eta_matrix == SignedPerm.identity(build(n).spinor_dim, -1)


def test_simplified_conditions_used_when_eta_is_e0():
    r = build(8)
    report = check_gilbert(r, standard_witness(8, realization=r))
    assert report.simplified == [True] * 7
    r = build(3)
    assert check_gilbert(r, standard_witness(3, realization=r)).simplified is None


def test_counter_witness_octonion_top_block():
    # H0 = O (+) 0 in O^2 splits the space but is not invariant under e_0 e_1
    r = build(8)
    h0 = Subspace.coordinate(16, range(8))
    w = GilbertWitness(8, 0, r.generators[0], h0)
    report = check_gilbert(r, w)
    assert report.decomposition_ok
    assert report.eta_square_ok
    assert not report.verdict
    assert report.conditions[0]["j"] == 1
    assert not report.conditions[0]["forward_ok"]


def test_wrong_size_witness_is_rejected():
    r = build(4)
    w = GilbertWitness(4, 0, r.generators[0], Subspace.full(4))
    with pytest.raises(ValueError):
        check_gilbert(r, w)


def test_witness_errors():
    with pytest.raises(UnsupportedDimension):
        standard_witness(1)
    for n in (6, 7, 14, 15):
        with pytest.raises(ObstructedDimension) as info:
            standard_witness(n)
        assert info.value.spinor_dim < 2 * info.value.spinor_dim_minus_two


def test_h0_shared_by_components():
    assert standard_h0(11, "+") == standard_h0(11, "-")


def test_even_generators_form_clifford_algebra():
    r = build(6)
    g = even_generators(r)
    assert len(g) == 5
    for i in range(5):
        assert g[i] @ g[i] == SignedPerm.identity(8, -1)
        for j in range(i + 1, 5):
            assert g[i].anticommutator_is_zero(g[j])
    # g_1 g_j generate Cl_{n-2}
    h = [g[0] @ gj for gj in g[1:]]
    for i in range(len(h)):
        assert h[i] @ h[i] == SignedPerm.identity(8, -1)


def test_obstruction_over_range():
    failed = [n for n in range(3, 17) if dim_obstruction(n).failed]
    assert failed == [6, 7, 14, 15]
    rep = dim_obstruction(6)
    assert (rep.spinor_dim, rep.required) == (8, 16)
    assert rep.to_json()["obstructed"] is True
    with pytest.raises(UnsupportedDimension):
        dim_obstruction(2)


@pytest.mark.parametrize("n", [6, 7])
def test_spinning_evidence(n):
    report = spinning_evidence(n, trials=10, seed=3)
    assert report.min_dim == 8
    assert report.consistent
    assert len(report.dims) == 10 and len(report.basis_dims) == 8
    assert report.to_json()["kind"] == "probabilistic"


def test_spinning_evidence_minus_component_and_determinism():
    a = spinning_evidence(7, trials=5, seed=11, component="-")
    b = spinning_evidence(7, trials=5, seed=11, component="-")
    assert a.to_json() == b.to_json()
    assert a.component_tag == "-" and a.consistent


def test_spinning_evidence_errors():
    with pytest.raises(ValueError):
        spinning_evidence(6, trials=0)
    with pytest.raises(UnsupportedDimension):
        spinning_evidence(5, trials=3)


def test_spin_dimension_invariant_under_rescaling():
    from cliffspin.linalg import spin_submodule

    g = even_generators(build(6))
    gens = [g[0] @ gj for gj in g[1:]]
    v = [1, -2, 0, 3, 0, 0, 1, 4]
    assert spin_submodule(gens, v) == spin_submodule(gens, [-5 * x for x in v])


def test_invariant_subspaces_of_witness_are_spin_closed():
    # any H0 of a witness is stable under g_1 g_j; check on a valid case
    r = build(4)
    w = standard_witness(4, realization=r)
    g = even_generators(r)
    for gj in g[1:]:
        assert image(g[0] @ gj, w.h0) == w.h0


@pytest.mark.parametrize("n", [3, 5, 8])
def test_mixed_signature_report_records_actual_relations(n):
    r = build(n)
    rep = mixed_signature_check(r)
    assert rep.expected_squares == [1] + [-1] * (n - 2)
    assert rep.squares == [-1] + [1] * (n - 2)
    assert rep.commute[: n - 2] == [(1, j) for j in range(2, n)]
    assert not rep.passed
    assert rep.to_json()["pass"] is False


def test_mixed_signature_h1_is_e0():
    r = build(5)
    gens = r.generators
    assert monomial(gens, (1, 0, 1)) == gens[0]


def test_mixed_signature_needs_three():
    with pytest.raises(UnsupportedDimension):
        mixed_signature_check(build(2))
