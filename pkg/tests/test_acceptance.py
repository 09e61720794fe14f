"""Acceptance suite.

One test per acceptance criterion; with `pytest -v` each shows up as a
single pass/fail line.  Criterion 5 reuses the large run of criterion 4
via a module-scoped fixture, so the expensive product expansion happens
once.
"""

import random
import time
from fractions import Fraction

import pytest

from lorkm import (
    LaurentSeries,
    ProductExpansion,
    TruncationProfile,
    case_datum,
    delta1_factor_map,
    delta1_sum_side,
    delta1_support_checks,
    delta_series,
    equidistance_check,
    expand_product,
    extract_exponents,
    gram_embedding,
    load_all_cases,
    load_case,
    p24,
    p24_series,
    pairing,
    tau,
    verify_case,
    verify_delta1_identity,
    verify_finite_denominator,
    RootDatum,
)
from lorkm.series import grade, series_mul


NMAX = MMAX = 19


@pytest.fixture(scope="module")
def main_run():
    """The headline run: sum vs product for n, m <= 19, full l-window."""
    started = time.perf_counter()
    report = verify_delta1_identity(NMAX, MMAX)
    elapsed = time.perf_counter() - started
    return report, elapsed


def test_criterion_1_embedded_data_twelve_cases():
    started = time.perf_counter()
    cases = load_all_cases()
    assert len(cases) == 12
    for case in cases:
        report = verify_case(case)
        assert report["status"] == "pass", (case.name, report["failures"])
        assert report["signature"][:2] == (2, 1)
        assert report["angles"] == list(case.expected_angles)
    assert time.perf_counter() - started < 1.0


def test_criterion_2_a3ii_concordance():
    started = time.perf_counter()
    case = load_case("A_3_II")
    datum = case_datum(case)
    assert datum.cartan == tuple(
        tuple(map(int, row)) for row in case.cartan_matrix
    )
    rho = datum.weyl_vector
    for alpha in datum.simple_roots:
        assert pairing(rho, alpha) == -1
    assert pairing(rho, rho) == Fraction(-1, 6)
    assert equidistance_check(datum) == 3
    assert time.perf_counter() - started < 1.0


def test_criterion_3_qseries_goldens():
    started = time.perf_counter()
    assert [tau(n) for n in range(1, 7)] == [1, -24, 252, -1472, 4830, -6048]
    assert [p24(n) for n in range(4)] == [1, 24, 324, 3200]
    nmax = 50
    wide = TruncationProfile.univariate(nmax + 2)
    delta = delta_series(nmax + 2).reprofile(wide)
    inv = p24_series(nmax + 2).reprofile(wide)
    profile = TruncationProfile.univariate(nmax)
    assert series_mul(delta, inv).reprofile(profile) == LaurentSeries.one(profile)
    assert time.perf_counter() - started < 1.0


def test_criterion_4_main_identity_19_19(main_run):
    report, elapsed = main_run
    assert report.passed, report.first_mismatch
    assert report.lhs_terms == report.rhs_terms > 2000
    assert elapsed < 60.0
    # negative control: one perturbed f3 value is located, not absorbed
    control = verify_delta1_identity(2, 2, perturb={(0, 1): 1})
    assert not control.passed
    assert control.first_mismatch is not None


def test_criterion_5_structural_invariants(main_run):
    report, _ = main_run
    assert report.passed
    datum = case_datum(load_case("A_3_II"))
    profile = TruncationProfile.create(6 * NMAX, 6 * MMAX)
    series = delta1_sum_side(profile)
    result = delta1_support_checks(series, datum)
    assert result["ok"], result["violations"]


def test_criterion_6_finite_oracle():
    started = time.perf_counter()
    for cartan in (((2,),), ((2, -1), (-1, 2))):
        lat, roots = gram_embedding(cartan)
        report = verify_finite_denominator(RootDatum(lat, roots))
        assert report.passed
    lat, roots = gram_embedding(((2, -1), (-1, 2)))
    broken = verify_finite_denominator(RootDatum(lat, roots), drop_factor=2)
    assert not broken.passed
    assert time.perf_counter() - started < 1.0


def test_criterion_7_extraction_round_trips():
    started = time.perf_counter()
    # 200 randomized factor maps
    rng = random.Random(1320)
    for trial in range(200):
        # window wide enough that every in-box term is recoverable
        profile = TruncationProfile(8, 8, 36)
        factors = {}
        for _ in range(rng.randint(1, 7)):
            v = (rng.randint(0, 3), rng.randint(-2, 2), rng.randint(0, 3))
            if grade(v) <= 0:
                continue
            e = rng.randint(-5, 5)
            if e:
                factors[v] = e
        expansion = ProductExpansion(factors)
        series = expand_product(expansion, profile=profile)
        assert extract_exponents(series).factors == factors, f"trial {trial}"
    # peeling the sum side re-derives the f3 factor map
    nm = 5
    profile = TruncationProfile.create(6 * nm + 1, 6 * nm + 1)
    peeled = extract_exponents(delta1_sum_side(profile), prefix=(1, 1, 1))
    assert peeled.factors == delta1_factor_map(nm, nm).factors
    # the one-variable model: sum tau(k+1) T^k has constant exponent 24
    nmax = 20
    d = delta_series(nmax + 1)
    uni = TruncationProfile.univariate(nmax)
    terms = {(k, 0, 0): d.coefficient((k + 1, 0, 0)) for k in range(nmax + 1)}
    model = extract_exponents(LaurentSeries(uni, terms))
    assert model.factors == {(n, 0, 0): 24 for n in range(1, nmax + 1)}
    assert time.perf_counter() - started < 30.0


def test_criterion_8_index_convention_is_forced():
    started = time.perf_counter()
    for convention, first in (("l-positive", (1, -1, 1)), ("both", (1, 1, 1))):
        report = verify_delta1_identity(2, 2, convention=convention)
        assert not report.passed
        assert report.first_mismatch[0] == first
    assert time.perf_counter() - started < 5.0
