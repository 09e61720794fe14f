"""Coefficient generators: tau, p24, the f3 table, characters, and the
Fourier (sum) side of the rank-3 identity."""

from math import isqrt

import pytest

from lorkm import (
    JacobiTable,
    SeriesError,
    TruncationProfile,
    char4,
    char6,
    char12,
    delta1_sum_side,
    delta_series,
    p24,
    p24_series,
    phi03_direct_table,
    phi03_table,
    tau,
)
from lorkm.series import LaurentSeries, series_mul


def partitions_24_colours(nmax):
    """Independent oracle: coefficients of prod (1-q^n)^{-24} by the
    standard one-part-at-a-time convolution."""
    coeffs = [1] + [0] * nmax
    for part in range(1, nmax + 1):
        for _ in range(24):
            for n in range(part, nmax + 1):
                coeffs[n] += coeffs[n - part]
    return coeffs


def eta24_coefficients(nmax):
    """Independent oracle for tau: prod (1-q^n)^24 by direct convolution."""
    coeffs = [1] + [0] * nmax
    for part in range(1, nmax + 1):
        for _ in range(24):
            for n in range(nmax, part - 1, -1):
                coeffs[n] -= coeffs[n - part]
    return coeffs


def test_tau_golden_values():
    assert [tau(n) for n in range(1, 7)] == [1, -24, 252, -1472, 4830, -6048]


def test_tau_matches_convolution_oracle():
    oracle = eta24_coefficients(30)
    assert [tau(n) for n in range(1, 31)] == oracle[:30]


def test_p24_golden_values():
    assert [p24(n) for n in range(4)] == [1, 24, 324, 3200]


def test_p24_matches_convolution_oracle():
    oracle = partitions_24_colours(40)
    assert [p24(n) for n in range(41)] == oracle


def test_delta_times_its_inverse_is_one():
    nmax = 50
    wide = TruncationProfile.univariate(nmax + 2)
    delta = delta_series(nmax + 2).reprofile(wide)
    inv = p24_series(nmax + 2).reprofile(wide)
    profile = TruncationProfile.univariate(nmax)
    assert series_mul(delta, inv).reprofile(profile) == LaurentSeries.one(profile)


def test_characters_are_periodic_and_odd_even():
    assert [char4(l) for l in range(-3, 4)] == [1, 0, -1, 0, 1, 0, -1]
    assert all(char4(-l) == -char4(l) for l in range(-20, 21))
    assert all(char12(-m) == char12(m) for m in range(-30, 31))
    assert [char12(m) for m in (1, 5, 7, 11, 13)] == [1, -1, -1, 1, 1]
    assert all(char12(m) == 0 for m in range(30) if m % 2 == 0 or m % 3 == 0)
    assert [char6(a) for a in (1, 2, 3, 4, 5, 6, 7)] == [1, 0, 0, 0, -1, 0, 1]
    # complete multiplicativity on the residues that matter
    for a in range(1, 40):
        for b in range(1, 40):
            assert char6(a * b) == char6(a) * char6(b)


def test_phi03_leading_row():
    table = phi03_table(0)
    assert table.row(0) == [(-1, 1), (0, 2), (1, 1)]


def test_phi03_fast_equals_direct_expansion():
    fast = phi03_table(8)
    slow = phi03_direct_table(8)
    assert fast.items() == slow.items()


def test_phi03_symmetry_and_window():
    table = phi03_table(25)
    for (n, l), c in table.items():
        assert table.value(n, -l) == c
        assert l * l <= 12 * n + 9


def test_phi03_rejects_asymmetric_table():
    with pytest.raises(SeriesError):
        JacobiTable(1, {(1, 2): 3, (1, -2): 4})
    with pytest.raises(SeriesError):
        JacobiTable(1, {(0, 4): 1, (0, -4): 1})


def test_phi03_out_of_bound_query_raises():
    table = phi03_table(2)
    with pytest.raises(SeriesError):
        table.value(3, 0)


def test_delta1_sum_side_small_terms():
    profile = TruncationProfile.create(7, 7)
    s = delta1_sum_side(profile)
    # (n,l,m) = (1,1,1): M=1, coefficient char4(1) char12(1) char6(1) = 1
    assert s.coefficient((1, 1, 1)) == 1
    assert s.coefficient((1, -1, 1)) == -1
    # (7,3,1): 4*7-27=1, char4(3) char12(1) = -1
    assert s.coefficient((7, 3, 1)) == -1
    assert s.coefficient((7, -3, 1)) == 1


def test_delta1_sum_side_support_congruences():
    profile = TruncationProfile.create(60, 60)
    s = delta1_sum_side(profile)
    assert len(s) > 0
    for (n, l, m), c in s.items():
        assert n % 6 == 1 and m % 6 == 1 and l % 2 == 1
        d = 4 * n * m - 3 * l * l
        root = isqrt(d)
        assert d > 0 and root * root == d
        assert c != 0
