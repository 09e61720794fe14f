"""Fundamental chambers: Cartan matrices, Weyl vectors, wall angles,
chamber reduction and finite Weyl-group enumeration."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .lattice import Lattice, LatticeError, LatticeVector, is_root, pairing, reflect
from . import linalg


class ChamberError(ValueError):
    """Structural failure in chamber data (bad roots, bad angles, ...)."""


class UnclassifiedAngleError(ChamberError):
    """A wall pair whose normalized cosine is outside {0, -1/2, -1, < -1}."""

    def __init__(self, i, j, cos_sq: Fraction, negative: bool):
        self.pair = (i, j)
        self.cos_sq = cos_sq
        self.negative = negative
        super().__init__(
            f"walls ({i},{j}): cos^2 = {cos_sq} (pairing negative: {negative}) "
            "is not one of the recognized angle classes"
        )


RIGHT_ANGLE = "pi/2"
THIRD_ANGLE = "pi/3"
PARALLEL = "0"
DIVERGENT = "divergent"


def cartan_matrix(roots):
    """Generalized Cartan matrix 2(a_i,a_j)/(a_i,a_i) as Fractions."""
    norms = [pairing(a, a) for a in roots]
    return tuple(
        tuple(2 * pairing(ai, aj) / norms[i] for aj in roots)
        for i, ai in enumerate(roots)
    )


class RootDatum:
    """A lattice, an ordered set P of simple roots, and (optionally) a
    rational Weyl vector rho satisfying (rho, a) = -a^2/2 for a in P."""

    __slots__ = ("lattice", "simple_roots", "weyl_vector", "cartan")

    def __init__(self, lattice: Lattice, simple_roots, weyl_vector=None,
                 check: bool = True):
        roots = tuple(simple_roots)
        if check:
            for k, a in enumerate(roots):
                if a.lattice != lattice:
                    raise ChamberError(f"simple root {k} lives in another lattice")
                if not is_root(a):
                    raise ChamberError(f"simple root {k} is not a root: {a}")
        cartan = cartan_matrix(roots)
        if check:
            n = len(roots)
            for i in range(n):
                if cartan[i][i] != 2:
                    raise ChamberError("Cartan diagonal must be 2")
                for j in range(n):
                    if i != j and cartan[i][j] > 0:
                        raise ChamberError(
                            f"positive off-diagonal Cartan entry at ({i},{j})"
                        )
        if weyl_vector is not None and check:
            for k, a in enumerate(roots):
                if pairing(weyl_vector, a) != -pairing(a, a) / 2:
                    raise ChamberError(
                        f"(rho, alpha_{k}) != -alpha_{k}^2/2"
                    )
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "simple_roots", roots)
        object.__setattr__(self, "weyl_vector", weyl_vector)
        object.__setattr__(self, "cartan", cartan)

    def __setattr__(self, *args):
        raise AttributeError("RootDatum is immutable")

    def with_weyl_vector(self) -> "RootDatum":
        if self.weyl_vector is not None:
            return self
        rho = solve_weyl_vector(self)
        if rho is None:
            raise ChamberError("no Weyl vector exists for this datum")
        return RootDatum(self.lattice, self.simple_roots, rho, check=False)


def solve_weyl_vector(datum: RootDatum):
    """Exact rational rho in span(P) with (rho, a) = -a^2/2 for all a in P.

    Returns None when the (generally overdetermined) system is inconsistent.
    """
    roots = datum.simple_roots
    if not roots:
        return None
    span_idx = linalg.independent_rows([a.coords for a in roots])
    basis = [roots[i] for i in span_idx]
    # unknowns t_j with rho = sum t_j basis_j
    a_mat = [[pairing(ai, bj) for bj in basis] for ai in roots]
    b_vec = [-pairing(ai, ai) / 2 for ai in roots]
    t = linalg.solve_linear(a_mat, b_vec)
    if t is None:
        return None
    rho = datum.lattice.zero()
    for coef, vec in zip(t, basis):
        rho = rho + coef * vec
    # the solve ran inside span(P); re-check the defining equations
    for ai in roots:
        if pairing(rho, ai) != -pairing(ai, ai) / 2:
            return None
    return rho


def gram_embedding(matrix):
    """Realize a symmetric integer matrix as the Gram matrix of vectors in
    a lattice of rank equal to the matrix rank.

    Returns (lattice, vectors).  The lattice is the Z-span of the realized
    vectors, so all returned coordinates are integral.
    """
    rows = [list(map(int, row)) for row in matrix]
    n = len(rows)
    for i in range(n):
        if len(rows[i]) != n:
            raise ChamberError("matrix must be square")
        if rows[i][i] % 2 != 0:
            raise ChamberError("diagonal entries must be even")
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ChamberError("matrix must be symmetric")
    rank = linalg.mat_rank(rows)
    subset = _nonsingular_principal_subset(rows, rank)
    gram0 = [[rows[i][j] for j in subset] for i in subset]
    # coordinates of every original vector w.r.t. the chosen subset basis
    coords = []
    for i in range(n):
        if i in subset:
            coords.append(
                [Fraction(1) if subset[k] == i else Fraction(0) for k in range(rank)]
            )
        else:
            rhs = [rows[i][j] for j in subset]
            sol = linalg.solve_linear(gram0, rhs)
            if sol is None:
                raise ChamberError("internal error: inconsistent completion")
            coords.append(sol)
    # verify realizability over the rationals
    for i in range(n):
        for j in range(n):
            val = sum(
                coords[i][a] * gram0[a][b] * coords[j][b]
                for a in range(rank)
                for b in range(rank)
            )
            if val != rows[i][j]:
                raise ChamberError("internal error: Gram realization failed")
    # pass to the Z-span of the realized vectors so coordinates are integral
    denom = lcm(*(c.denominator for row in coords for c in row), 1)
    int_rows = [[int(c * denom) for c in row] for row in coords]
    hnf = linalg.hnf_row_basis(int_rows)
    if len(hnf) != rank:
        raise ChamberError("internal error: HNF rank mismatch")
    basis = [[Fraction(x, denom) for x in row] for row in hnf]
    new_gram = [
        [
            sum(
                basis[i][a] * gram0[a][b] * basis[j][b]
                for a in range(rank)
                for b in range(rank)
            )
            for j in range(rank)
        ]
        for i in range(rank)
    ]
    if any(v.denominator != 1 for row in new_gram for v in row):
        raise ChamberError("internal error: non-integral Gram on the root span")
    lat = Lattice([[int(v) for v in row] for row in new_gram])
    vectors = []
    for i in range(n):
        sol = linalg.solve_linear(
            [[basis[k][a] for k in range(rank)] for a in range(rank)],
            coords[i],
        )
        if sol is None or any(c.denominator != 1 for c in sol):
            raise ChamberError("internal error: vector not in the Z-span")
        vectors.append(lat.vector(sol))
    return lat, vectors


def _nonsingular_principal_subset(rows, rank):
    n = len(rows)
    chosen = []
    for i in range(n):
        cand = chosen + [i]
        sub = [[rows[a][b] for b in cand] for a in cand]
        if linalg.det(sub) != 0:
            chosen = cand
            if len(chosen) == rank:
                return chosen
    # greedy can miss; fall back to exhaustive search (n <= 12 here)
    for cand in combinations(range(n), rank):
        sub = [[rows[a][b] for b in cand] for a in cand]
        if linalg.det(sub) != 0:
            return list(cand)
    raise ChamberError("no nonsingular principal submatrix of full rank")


def _classify_pair(a: LatticeVector, b: LatticeVector) -> str:
    c = pairing(a, b)
    prod = pairing(a, a) * pairing(b, b)
    cos_sq = c * c / prod
    if c == 0:
        return RIGHT_ANGLE
    if c < 0:
        if 4 * cos_sq == 1:
            return THIRD_ANGLE
        if cos_sq == 1:
            return PARALLEL
        if cos_sq > 1:
            return DIVERGENT
    raise UnclassifiedAngleError(None, None, cos_sq, c < 0)


def wall_angles(datum: RootDatum):
    """Angle labels for consecutive wall pairs, in index (cyclic) order.

    Requires span(P) of rank 3, i.e. walls of a polygon on the hyperbolic
    plane.  Non-consecutive pairs must classify as divergent.
    """
    roots = datum.simple_roots
    n = len(roots)
    if linalg.mat_rank([a.coords for a in roots]) != 3:
        raise ChamberError("wall_angles requires a rank-3 root span")
    labels = []
    for i in range(n):
        j = (i + 1) % n
        try:
            label = _classify_pair(roots[i], roots[j])
        except UnclassifiedAngleError as exc:
            raise UnclassifiedAngleError(i, j, exc.cos_sq, exc.negative) from None
        if label == DIVERGENT:
            raise ChamberError(
                f"consecutive walls ({i},{j}) are divergent; "
                "the cyclic index order is not a polygon ordering"
            )
        labels.append(label)
    if n > 3:
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if _classify_pair(roots[i], roots[j]) != DIVERGENT:
                    raise ChamberError(
                        f"non-consecutive walls ({i},{j}) are not divergent"
                    )
    return labels


def equidistance_check(datum: RootDatum) -> Fraction:
    """Common value of (rho,a)^2 / (-(rho,rho) * (a,a)) over all walls.

    This is the squared-sinh of the distance from the chamber's inscribed
    center to each wall; it must be constant when a Weyl vector exists.
    """
    rho = datum.weyl_vector
    if rho is None:
        raise ChamberError("datum has no Weyl vector")
    rho_norm = pairing(rho, rho)
    if rho_norm >= 0:
        raise ChamberError("equidistance check requires (rho,rho) < 0")
    value = None
    for k, a in enumerate(datum.simple_roots):
        v = pairing(rho, a) ** 2 / (-rho_norm * pairing(a, a))
        if value is None:
            value = v
        elif v != value:
            raise ChamberError(
                f"wall {k} is not equidistant: {v} != {value}"
            )
    return value


def reduce_to_chamber(datum: RootDatum, x: LatticeVector, max_steps: int = 100000):
    """Reduce x into the fundamental chamber (x, P) <= 0.

    Greedy descent: reflect in the wall with the largest positive pairing,
    lowest index on ties.  Returns (reduced vector, word of wall indices
    applied, determinant sign).  Requires x in the half-cone selected by
    rho: (x,x) <= 0 and (x, rho) < 0.
    """
    rho = datum.weyl_vector
    if rho is None:
        raise ChamberError("reduce_to_chamber needs a Weyl vector")
    if pairing(x, x) > 0 or pairing(x, rho) >= 0:
        raise ChamberError("vector is not in the negative half-cone of rho")
    roots = datum.simple_roots
    word = []
    for _ in range(max_steps):
        best = None
        best_val = 0
        for k, a in enumerate(roots):
            v = pairing(x, a)
            if v > best_val:
                best, best_val = k, v
        if best is None:
            return x, tuple(word), (-1) ** len(word)
        x = reflect(roots[best], x)
        word.append(best)
    raise ChamberError("chamber reduction did not terminate")


def is_positive_definite(cartan) -> bool:
    """Sylvester criterion on the leading principal minors."""
    n = len(cartan)
    for k in range(1, n + 1):
        sub = [[cartan[i][j] for j in range(k)] for i in range(k)]
        if linalg.det(sub) <= 0:
            return False
    return True


def finite_weyl_enumerate(datum: RootDatum, bound: int = 10080):
    """Enumerate the full Weyl group of a positive-definite Cartan matrix.

    Group elements act on coordinates in the simple-root basis; generators
    are s_i(e_j) = e_j - cartan[i][j] e_i.  Returns (elements, positive
    roots), both canonically sorted; elements are (matrix, det) pairs.
    """
    cartan = datum.cartan
    if not is_positive_definite(cartan):
        raise ChamberError("finite enumeration requires a positive-definite Cartan")
    n = len(cartan)
    gens = []
    for i in range(n):
        mat = tuple(
            tuple(
                (1 if k == j else 0) - (int(cartan[i][j]) if k == i else 0)
                for j in range(n)
            )
            for k in range(n)
        )
        gens.append(mat)
    identity = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    seen = {identity: 1}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for w in frontier:
            for g in gens:
                prod = _mat_mul(g, w)
                if prod not in seen:
                    seen[prod] = -seen[w]
                    new_frontier.append(prod)
                    if len(seen) > bound:
                        raise ChamberError(
                            f"Weyl group not finite within bound {bound}"
                        )
        frontier = new_frontier
    pos_roots = set()
    for w in seen:
        for i in range(n):
            col = tuple(w[k][i] for k in range(n))
            if all(c >= 0 for c in col):
                pos_roots.add(col)
    elements = sorted((w, d) for w, d in seen.items())
    return elements, sorted(pos_roots)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def primitive_part(x: LatticeVector) -> LatticeVector:
    """x divided by the gcd of its (integral) coordinates."""
    if not x.is_integral():
        raise LatticeError("primitive_part requires integral coordinates")
    g = gcd(*(int(c) for c in x.coords))
    if g == 0:
        return x
    return x.lattice.vector([int(c) // g for c in x.coords])
