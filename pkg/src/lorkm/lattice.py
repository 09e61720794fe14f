"""Exact integral lattices: bilinear forms, signatures, roots, reflections.

All arithmetic is over Python ints and Fractions; nothing here ever
touches floating point.  Lattices and vectors are immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class LatticeError(ValueError):
    """Invalid lattice input: asymmetric Gram matrix, mixed lattices, ..."""


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int
    zero: int

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(
            self.positive + other.positive,
            self.negative + other.negative,
            self.zero + other.zero,
        )

    def astuple(self):
        return (self.positive, self.negative, self.zero)


class Lattice:
    """A free Z-module of finite rank with an integral symmetric form."""

    __slots__ = ("rank", "gram", "name")

    def __init__(self, gram, name: str | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(
                        f"Gram matrix not symmetric at ({i},{j}): "
                        f"{rows[i][j]} != {rows[j][i]}"
                    )
        object.__setattr__(self, "rank", n)
        object.__setattr__(self, "gram", rows)
        object.__setattr__(self, "name", name)

    def __setattr__(self, *args):
        raise AttributeError("Lattice is immutable")

    def __eq__(self, other):
        return isinstance(other, Lattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        label = self.name or f"rank-{self.rank}"
        return f"Lattice({label}, gram={self.gram})"

    def vector(self, coords) -> "LatticeVector":
        return LatticeVector(coords, self)

    def basis_vector(self, i: int) -> "LatticeVector":
        return self.vector([1 if j == i else 0 for j in range(self.rank)])

    def zero(self) -> "LatticeVector":
        return self.vector([0] * self.rank)


class LatticeVector:
    """A vector with exact rational coordinates in a fixed lattice basis."""

    __slots__ = ("coords", "lattice")

    def __init__(self, coords, lattice: Lattice):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != lattice.rank:
            raise LatticeError(
                f"expected {lattice.rank} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "lattice", lattice)

    def __setattr__(self, *args):
        raise AttributeError("LatticeVector is immutable")

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, LatticeVector)
            and self.lattice == other.lattice
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.coords, self.lattice))

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        _same_lattice(self, other)
        return LatticeVector(
            [a + b for a, b in zip(self.coords, other.coords)], self.lattice
        )

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        _same_lattice(self, other)
        return LatticeVector(
            [a - b for a, b in zip(self.coords, other.coords)], self.lattice
        )

    def __neg__(self) -> "LatticeVector":
        return LatticeVector([-a for a in self.coords], self.lattice)

    def __rmul__(self, scalar) -> "LatticeVector":
        s = Fraction(scalar)
        return LatticeVector([s * a for a in self.coords], self.lattice)

    def __repr__(self):
        pretty = tuple(str(c) for c in self.coords)
        return f"LatticeVector({pretty})"

    def norm(self) -> Fraction:
        return pairing(self, self)


def _same_lattice(x: LatticeVector, y: LatticeVector):
    if x.lattice != y.lattice:
        raise LatticeError("vectors belong to different lattices")


def pairing(x: LatticeVector, y: LatticeVector) -> Fraction:
    """Exact bilinear pairing x^T . gram . y."""
    _same_lattice(x, y)
    gram = x.lattice.gram
    total = Fraction(0)
    for i, xi in enumerate(x.coords):
        if xi == 0:
            continue
        row = gram[i]
        total += xi * sum(row[j] * yj for j, yj in enumerate(y.coords) if yj != 0)
    return total


def signature(lat: Lattice) -> Signature:
    """Exact signature by rational congruence diagonalization.

    Degenerate diagonal pivots are handled by the standard trick of adding
    a row/column with a nonzero off-diagonal entry before pivoting.
    """
    n = lat.rank
    m = [[Fraction(x) for x in row] for row in lat.gram]
    pos = neg = zero = 0
    for i in range(n):
        if m[i][i] == 0:
            # look for a later nonzero diagonal entry to swap in
            j = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if j is not None:
                _swap_sym(m, i, j)
            else:
                # all remaining diagonal entries vanish; fold in an
                # off-diagonal entry (m[i][k] != 0 gives pivot 2*m[i][k])
                k = next((k for k in range(i + 1, n) if m[i][k] != 0), None)
                if k is None:
                    zero += 1
                    continue
                for col in range(n):
                    m[i][col] += m[k][col]
                for row in range(n):
                    m[row][i] += m[row][k]
        pivot = m[i][i]
        for j in range(i + 1, n):
            if m[j][i] != 0:
                f = m[j][i] / pivot
                for col in range(n):
                    m[j][col] -= f * m[i][col]
                for row in range(n):
                    m[row][j] -= f * m[row][i]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
    return Signature(pos, neg, zero)


def _swap_sym(m, i, j):
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


def is_root(alpha: LatticeVector) -> bool:
    """True iff alpha^2 > 0 and alpha^2 divides 2(alpha, e_i) for all i."""
    if not alpha.is_integral():
        raise LatticeError("is_root requires integral coordinates")
    norm = pairing(alpha, alpha)
    if norm <= 0:
        return False
    norm = int(norm)
    lat = alpha.lattice
    for i in range(lat.rank):
        two_pair = 2 * pairing(alpha, lat.basis_vector(i))
        if int(two_pair) % norm != 0:
            return False
    return True


def reflect(alpha: LatticeVector, x: LatticeVector) -> LatticeVector:
    """Reflection s_alpha(x) = x - (2(x,alpha)/alpha^2) alpha."""
    if not is_root(alpha):
        raise LatticeError("reflection axis is not a root")
    factor = 2 * pairing(x, alpha) / pairing(alpha, alpha)
    return x - factor * alpha


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    gram = [
        list(row) + [0] * b.rank for row in a.gram
    ] + [
        [0] * a.rank + list(row) for row in b.gram
    ]
    name = None
    if a.name and b.name:
        name = f"{a.name}(+){b.name}"
    return Lattice(gram, name=name)


def u_lattice(k: int) -> Lattice:
    """The scaled hyperbolic plane with Gram matrix [[0,-k],[-k,0]]."""
    if k <= 0:
        raise LatticeError("u_lattice needs a positive scale")
    return Lattice([[0, -k], [-k, 0]], name=f"U({k})")


def span_lattice(value: int) -> Lattice:
    """Rank-1 lattice <value>."""
    return Lattice([[value]], name=f"<{value}>")
