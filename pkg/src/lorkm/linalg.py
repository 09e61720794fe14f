"""Small exact linear algebra helpers over Fraction and int.

Everything here works on lists of lists; matrices are never large
(rank <= 12 in practice), so no attempt is made to be clever.
"""

from __future__ import annotations

from fractions import Fraction


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def mat_rank(rows) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    m = frac_matrix(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        pivot = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if pivot is None:
            col += 1
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        col += 1
    return rank


def solve_linear(a, b):
    """Solve a x = b exactly.

    Returns a particular solution (free variables set to 0) or None when
    the system is inconsistent.  `a` is a list of rows, `b` a list.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if aug[r][col] != 0), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for r in range(nrows):
            if r != rank and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, nrows):
        if aug[r][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        x[col] = aug[r][ncols]
    return x


def det(rows) -> Fraction:
    m = frac_matrix(rows)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return result * sign


def independent_rows(rows) -> list[int]:
    """Indices of a maximal linearly independent subset of rows, greedily."""
    chosen = []
    basis = []
    for i, row in enumerate(rows):
        cand = basis + [[Fraction(x) for x in row]]
        if mat_rank(cand) == len(cand):
            chosen.append(i)
            basis = cand
    return chosen


def hnf_row_basis(rows):
    """Basis of the Z-row-span of an integer matrix (row echelon over Z).

    Returns linearly independent integer rows spanning the same Z-module
    as the input rows, via Euclidean column reduction.
    """
    m = [list(map(int, row)) for row in rows if any(row)]
    if not m:
        return []
    ncols = len(m[0])
    pivot_row = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(pivot_row, len(m)) if m[i][col] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(m[i][col]))
            m[pivot_row], m[i_min] = m[i_min], m[pivot_row]
            if len(nz) == 1:
                if m[pivot_row][col] < 0:
                    m[pivot_row] = [-x for x in m[pivot_row]]
                pivot_row += 1
                break
            lead = m[pivot_row]
            for i in range(pivot_row + 1, len(m)):
                if m[i][col] != 0:
                    q = m[i][col] // lead[col]
                    m[i] = [a - q * b for a, b in zip(m[i], lead)]
            m = m[: pivot_row + 1] + [r for r in m[pivot_row + 1 :] if any(r)]
    return m[:pivot_row]
