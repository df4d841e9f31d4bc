"""Acceptance gate: one test group per criterion, each at its stated tolerance.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import math
import time

import numpy as np
import pytest

from cliffspin.clifford import build, clifford_algebra_dim_from_spinors, spinor_dim, verify_relations
from cliffspin.gilbert import (
    check_gilbert,
    dim_obstruction,
    mixed_signature_check,
    spinning_evidence,
    standard_witness,
)
from cliffspin.hardy import (
    Grid,
    SpinorField,
    convolution_crosscheck,
    crb_identity,
    dirac_residual,
    idempotency_residual,
    involution_residual,
    random_band_limited,
    rbc_identity,
    riesz_at_origin,
    schwartz_normalization,
)

HARDY_CASES = [(2, 1), (3, 2), (4, 3)]
HARDY_FIELDS = 3
HARDY_BUDGET = 60.0
_hardy_elapsed = {"seconds": 0.0}


@pytest.fixture
def criterion(record_property):
    def tag(name):
        record_property("criterion", name)

    return tag


# 1. relations


def test_relations_all_n(criterion):
    criterion("1 relations")
    start = time.perf_counter()
    failures = []
    for n in range(1, 14):
        report = verify_relations(build(n))
        if not report.passed:
            failures.append((n, report.violations[:3]))
    elapsed = time.perf_counter() - start
    print(f"relations n=1..13 in {elapsed:.2f} s")
    assert not failures
    assert elapsed < 30


# 2. dimension table

# dim_R of the spinor space for m = 0..7 at k = 0; multiplied by 16^k
TABLE_BASE_DIMS = [1, 2, 4, 4, 8, 8, 8, 8]


@pytest.mark.parametrize("k", [0, 1, 2])
def test_dimension_table(criterion, k):
    criterion("2 dimension table")
    for m in range(8):
        n = 8 * k + m
        if n == 0:
            continue
        assert spinor_dim(n) == TABLE_BASE_DIMS[m] * 16**k
        assert clifford_algebra_dim_from_spinors(n) == 2**n


def test_dimension_table_matches_realization(criterion):
    criterion("2 dimension table")
    for n in range(1, 14):
        assert build(n).spinor_dim == spinor_dim(n)


# 3. witnesses


@pytest.mark.parametrize("n", [2, 3, 4, 5, 8, 9, 10, 11, 12, 13])
def test_gilbert_witness(criterion, n):
    criterion("3 gilbert witnesses")
    r = build(n)
    tags = ("+", "-") if r.semisimple_pair else ("+",)
    for tag in tags:
        report = check_gilbert(r, standard_witness(n, tag, realization=r))
        assert report.verdict, report.to_json()


# 4. dichotomy


def test_dimension_obstruction(criterion):
    criterion("4 dichotomy")
    failed = {n for n in range(3, 17) if dim_obstruction(n).failed}
    assert failed == {n for n in range(3, 17) if n % 8 in (6, 7)}


@pytest.mark.parametrize("n", [6, 7])
def test_spinning_evidence(criterion, n):
    criterion("4 dichotomy")
    for tag in ("+", "-") if n % 8 == 7 else ("+",):
        report = spinning_evidence(n, trials=50, seed=0, component=tag, include_basis=True)
        assert len(report.dims) == 50 and len(report.basis_dims) == 8
        assert report.min_dim == 8
        assert report.min_dim > spinor_dim(n) // 2


# 5. Hardy multiplier identities


@pytest.mark.parametrize("n,d", HARDY_CASES)
def test_hardy_identities(criterion, n, d):
    criterion("5 hardy identities")
    start = time.perf_counter()
    grid = Grid(d, 64)
    rng = np.random.default_rng(100 + n)
    witness = standard_witness(n)
    worst = {"idempotency": 0.0, "involution": 0.0, "rbc": 0.0, "crb": 0.0}
    for _ in range(HARDY_FIELDS):
        f = random_band_limited(grid, n, rng)
        worst["idempotency"] = max(worst["idempotency"], idempotency_residual(f))
        worst["involution"] = max(worst["involution"], involution_residual(f))
        worst["rbc"] = max(worst["rbc"], rbc_identity(f, witness))
        worst["crb"] = max(worst["crb"], crb_identity(f, witness, 0.5))
    _hardy_elapsed["seconds"] += time.perf_counter() - start
    print(f"(n,d)=({n},{d}) N=64", {k: f"{v:.1e}" for k, v in worst.items()}, f"{_hardy_elapsed['seconds']:.1f} s so far")
    assert worst["idempotency"] < 1e-12
    assert worst["involution"] < 1e-12
    assert worst["rbc"] < 1e-10
    assert worst["crb"] < 1e-10
    # cumulative over the three cases
    assert _hardy_elapsed["seconds"] < HARDY_BUDGET


# 6. monogenicity


def test_dirac_convergence(criterion):
    criterion("6 monogenicity")
    f = random_band_limited(Grid(2, 64), 3, np.random.default_rng(6))
    report = dirac_residual(f, steps=(0.1, 0.05, 0.025))
    print("dirac", report.to_json())
    assert len(report.orders) == 2
    assert report.min_order >= 1.8
    assert report.spectral_residual < 1e-10


# 7. kernel cross-check


def hermite_gaussian_field(grid):
    x = grid.points()[:, 0]
    h4 = 16 * x**4 - 48 * x**2 + 12
    return SpinorField(grid, 2, np.outer(h4 * np.exp(-(x**2)), [1.0, -0.5, 0.25, 2.0]))


def test_kernel_crosscheck(criterion):
    criterion("7 kernel cross-check")
    grid = Grid(1, 256, L=16)
    gap = convolution_crosscheck(hermite_gaussian_field(grid), 0.5)
    print(f"L=16 N=256 gap {gap:.2e}")
    assert gap < 1e-3


def test_kernel_crosscheck_decreases_with_period(criterion):
    criterion("7 kernel cross-check")
    # the period doubles at fixed spacing, so N doubles with it
    gaps = []
    for L, N in [(16, 256), (32, 512), (64, 1024)]:
        gaps.append(convolution_crosscheck(hermite_gaussian_field(Grid(1, N, L=L)), 0.5))
    print("gaps", [f"{g:.2e}" for g in gaps])
    assert all(g < 1e-3 for g in gaps)
    assert all(a > b for a, b in zip(gaps, gaps[1:]))


# 8. Schwartz normalization


@pytest.mark.parametrize("n", [2, 3, 4])
def test_schwartz_normalization(criterion, n):
    criterion("8 schwartz normalization")
    report = schwartz_normalization(n, tol=1e-10)
    oracle = riesz_at_origin(n, report.c, 1, tol=report.tol / 10, route="parametric")
    print(f"n={n} c={report.c!r} oracle R1f(0)={oracle!r}")
    assert abs(oracle - 1) < 1e-6
    for value in report.riesz_values[1:]:
        assert abs(value) < 1e-8
    assert math.isclose(report.c, report.closed_form, rel_tol=1e-6)


# 9. mixed signature


@pytest.mark.parametrize("n", [3, 5, 8])
def test_mixed_signature(criterion, n):
    criterion("9 mixed signature")
    r = build(n)
    for tag in (("+", "-") if r.semisimple_pair else ("+",)):
        report = mixed_signature_check(r, tag)
        print(report.to_json())
        assert report.squares == [1] + [-1] * (n - 2)
        assert report.anticommute_ok
