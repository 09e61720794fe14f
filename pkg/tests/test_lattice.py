"""Lattices, signatures, roots and reflections."""

import random
from fractions import Fraction

import pytest

from lorkm import (
    Lattice,
    LatticeError,
    Signature,
    direct_sum,
    is_root,
    pairing,
    reflect,
    signature,
    span_lattice,
    u_lattice,
)


def test_gram_must_be_square_and_symmetric():
    with pytest.raises(LatticeError):
        Lattice([[2, 0]])
    with pytest.raises(LatticeError):
        Lattice([[2, 1], [0, 2]])


def test_vector_arithmetic_is_exact():
    lat = Lattice([[2, -1], [-1, 2]])
    x = lat.vector([Fraction(1, 3), 1])
    y = lat.vector([1, 0])
    assert (x + y).coords == (Fraction(4, 3), Fraction(1))
    assert (x - y).coords == (Fraction(-2, 3), Fraction(1))
    assert (-y).coords == (-1, 0)
    assert (2 * y).coords == (2, 0)
    assert not x.is_integral()
    assert y.is_integral()


def test_pairing_matches_matrix_product():
    lat = Lattice([[0, 0, -12], [0, 2, 0], [-12, 0, 0]])
    x = lat.vector([1, -5, 2])
    y = lat.vector([0, 1, 0])
    assert pairing(x, y) == -10
    assert pairing(x, x) == 2


def test_signature_definite_and_hyperbolic():
    assert signature(Lattice([[2, -1], [-1, 2]])) == Signature(2, 0, 0)
    assert signature(span_lattice(-4)) == Signature(0, 1, 0)
    assert signature(u_lattice(1)) == Signature(1, 1, 0)
    # degenerate directions are counted, not crashed on
    assert signature(Lattice([[0, 0], [0, 2]])) == Signature(1, 0, 1)
    assert signature(Lattice([[0]])) == Signature(0, 0, 1)


def test_signature_of_embedded_cases_is_lorentzian():
    lat = Lattice([[0, 0, -12], [0, 2, 0], [-12, 0, 0]])
    assert signature(lat) == Signature(2, 1, 0)


def test_signature_additive_under_direct_sum():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 3)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                a[i][j] = a[j][i] = rng.randint(-3, 3)
        lat_a = Lattice(a)
        lat_b = u_lattice(rng.randint(1, 5))
        assert signature(direct_sum(lat_a, lat_b)) == signature(lat_a) + signature(
            lat_b
        )


def test_is_root_needs_positive_norm_and_divisibility():
    lat = Lattice([[0, 0, -12], [0, 2, 0], [-12, 0, 0]])
    assert is_root(lat.vector([0, 1, 0]))
    assert is_root(lat.vector([1, -5, 2]))
    assert not is_root(lat.vector([1, 0, 0]))  # isotropic
    # norm 8: every doubled pairing is a multiple of 8, still a root
    assert is_root(lat.vector([0, 2, 0]))
    # norm 18 does not divide 2*(x, e2) = 12
    assert not is_root(lat.vector([0, 3, 0]))


def test_reflection_is_an_involution_preserving_the_form():
    lat = Lattice([[0, 0, -12], [0, 2, 0], [-12, 0, 0]])
    alpha = lat.vector([1, -5, 2])
    rng = random.Random(11)
    for _ in range(25):
        x = lat.vector([rng.randint(-9, 9) for _ in range(3)])
        y = lat.vector([rng.randint(-9, 9) for _ in range(3)])
        sx, sy = reflect(alpha, x), reflect(alpha, y)
        assert reflect(alpha, sx) == x
        assert pairing(sx, sy) == pairing(x, y)
    assert reflect(alpha, alpha) == -alpha


def test_reflection_rejects_non_roots():
    lat = u_lattice(1)
    with pytest.raises(LatticeError):
        reflect(lat.vector([1, 0]), lat.vector([0, 1]))


def test_mixed_lattice_operations_fail():
    a = u_lattice(1)
    b = u_lattice(2)
    with pytest.raises(LatticeError):
        pairing(a.vector([1, 0]), b.vector([1, 0]))
