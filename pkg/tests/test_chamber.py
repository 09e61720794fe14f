"""Cartan matrices, Gram embeddings, Weyl vectors, wall angles,
chamber reduction and the finite Weyl-group enumeration."""

import random
from fractions import Fraction

import pytest

from lorkm import (
    ChamberError,
    Lattice,
    RootDatum,
    UnclassifiedAngleError,
    cartan_matrix,
    equidistance_check,
    finite_weyl_enumerate,
    gram_embedding,
    is_positive_definite,
    pairing,
    primitive_part,
    reduce_to_chamber,
    signature,
    solve_weyl_vector,
    wall_angles,
)


A3II_GRAM = [[0, 0, -12], [0, 2, 0], [-12, 0, 0]]
A3II_ROOTS = [
    (0, 1, 0),
    (0, -1, 1),
    (1, -5, 2),
    (2, -7, 2),
    (2, -5, 1),
    (1, -1, 0),
]


def a3ii_datum(with_rho=True):
    lat = Lattice(A3II_GRAM)
    datum = RootDatum(lat, [lat.vector(v) for v in A3II_ROOTS])
    return datum.with_weyl_vector() if with_rho else datum


def test_cartan_matrix_of_explicit_roots():
    datum = a3ii_datum(with_rho=False)
    cartan = datum.cartan
    assert all(cartan[i][i] == 2 for i in range(6))
    assert all(cartan[i][j] == cartan[j][i] for i in range(6) for j in range(6))
    assert cartan[0][1] == -2
    assert cartan[0][2] == -10


def test_root_datum_rejects_positive_offdiagonal():
    lat = Lattice([[2, 1], [1, 2]])
    with pytest.raises(ChamberError):
        RootDatum(lat, [lat.vector([1, 0]), lat.vector([0, 1])])


def test_solve_weyl_vector_a3ii():
    datum = a3ii_datum(with_rho=False)
    rho = solve_weyl_vector(datum)
    assert rho.coords == (Fraction(1, 6), Fraction(-1, 2), Fraction(1, 6))
    assert pairing(rho, rho) == Fraction(-1, 6)
    for a in datum.simple_roots:
        assert pairing(rho, a) == -1


def test_solve_weyl_vector_inconsistent_returns_none():
    # a3 = a1 + a2 with (a1,a2) = -1: (rho,a3) would be -2 but -a3^2/2 = -1
    lat = Lattice([[2, -1], [-1, 2]])
    roots = [lat.vector(v) for v in ((1, 0), (0, 1), (1, 1))]
    datum = RootDatum(lat, roots, check=False)
    assert solve_weyl_vector(datum) is None


def test_gram_embedding_roundtrip_random_definite():
    rng = random.Random(23)
    for _ in range(15):
        n = rng.randint(1, 4)
        # random Gram of random vectors in Z^n: symmetric, PSD, even diag
        vecs = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        gram = [
            [2 * sum(a * b for a, b in zip(u, v)) for v in vecs] for u in vecs
        ]
        lat, out = gram_embedding(gram)
        for i in range(n):
            for j in range(n):
                assert pairing(out[i], out[j]) == gram[i][j]
        assert all(v.is_integral() for v in out)


def test_gram_embedding_a3ii_cartan_matrix():
    datum = a3ii_datum(with_rho=False)
    matrix = [[int(c) for c in row] for row in datum.cartan]
    lat, vecs = gram_embedding(matrix)
    assert lat.rank == 3
    assert signature(lat).astuple() == (2, 1, 0)
    assert cartan_matrix(vecs) == datum.cartan


def test_gram_embedding_rejects_odd_diagonal():
    with pytest.raises(ChamberError):
        gram_embedding([[3]])


def test_wall_angles_a3ii_all_parallel():
    datum = a3ii_datum()
    assert wall_angles(datum) == ["0"] * 6


def test_wall_angles_rejects_low_rank():
    lat = Lattice([[2, -1], [-1, 2]])
    datum = RootDatum(lat, [lat.vector([1, 0]), lat.vector([0, 1])])
    with pytest.raises(ChamberError):
        wall_angles(datum)


def test_unclassified_angle_raises():
    # pairing -1 with norms 2 and 4: cos^2 = 1/8, none of the classes
    lat = Lattice([[2, -1, 0], [-1, 4, 0], [0, 0, 2]])
    roots = [lat.vector(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    datum = RootDatum(lat, roots, check=False)
    with pytest.raises(UnclassifiedAngleError) as err:
        wall_angles(datum)
    assert err.value.pair == (0, 1)
    assert err.value.cos_sq == Fraction(1, 8)


def test_equidistance_value_a3ii():
    assert equidistance_check(a3ii_datum()) == 3


def test_reduce_to_chamber_fixes_chamber_vectors():
    datum = a3ii_datum()
    rho6 = 6 * datum.weyl_vector  # (1, -3, 1), integral, in the chamber
    y, word, sign = reduce_to_chamber(datum, rho6)
    assert y == rho6 and word == () and sign == 1


def test_reduce_to_chamber_undoes_reflection_words():
    from lorkm import reflect

    datum = a3ii_datum()
    rng = random.Random(5)
    rho6 = 6 * datum.weyl_vector
    for _ in range(20):
        x = rho6
        for _ in range(rng.randint(1, 6)):
            x = reflect(datum.simple_roots[rng.randrange(6)], x)
        y, word, sign = reduce_to_chamber(datum, x)
        assert y == rho6
        assert sign == (-1) ** len(word)
        assert pairing(y, y) == pairing(rho6, rho6)
        assert all(pairing(y, a) <= 0 for a in datum.simple_roots)


def test_reduce_to_chamber_rejects_wrong_cone():
    datum = a3ii_datum()
    with pytest.raises(ChamberError):
        reduce_to_chamber(datum, -6 * datum.weyl_vector)


def test_finite_weyl_a1_a2_orders():
    for cartan, order, npos in ((((2,),), 2, 1), (((2, -1), (-1, 2)), 6, 3)):
        lat, roots = gram_embedding(cartan)
        datum = RootDatum(lat, roots)
        elements, pos_roots = finite_weyl_enumerate(datum)
        assert len(elements) == order
        assert len(pos_roots) == npos
        assert sum(det for _, det in elements) == 0


def test_finite_weyl_rejects_indefinite():
    lat = Lattice([[2, -2], [-2, 2]])
    datum = RootDatum(lat, [lat.vector([1, 0]), lat.vector([0, 1])])
    assert not is_positive_definite(datum.cartan)
    with pytest.raises(ChamberError):
        finite_weyl_enumerate(datum)


def test_primitive_part():
    lat = Lattice(A3II_GRAM)
    assert primitive_part(lat.vector([2, -6, 4])) == lat.vector([1, -3, 2])
    assert primitive_part(lat.zero()) == lat.zero()
