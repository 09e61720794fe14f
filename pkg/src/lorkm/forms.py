"""Coefficient generators: the eta-power series (tau, p24), the weight-0
index-3 weak Jacobi form table f3(n, l), the three character symbols, and
the Fourier (sum) side of the rank-3 cusp form Delta_1."""

from __future__ import annotations

from math import gcd, isqrt

from .series import (
    LaurentSeries,
    ProductExpansion,
    SeriesError,
    TruncationProfile,
    expand_product,
)


def delta_series(nmax: int) -> LaurentSeries:
    """q prod (1-q^n)^24 = sum tau(m) q^m, truncated at q^nmax."""
    if nmax < 1:
        raise SeriesError("delta_series needs nmax >= 1")
    profile = TruncationProfile.univariate(nmax)
    factors = ProductExpansion({(n, 0, 0): 24 for n in range(1, nmax)})
    return expand_product(factors, prefix=(1, 0, 0), profile=profile)


def tau(m: int, _cache={}) -> int:
    """Ramanujan tau(m), from the truncated eta-power expansion."""
    if m < 1:
        raise SeriesError("tau(m) needs m >= 1")
    series = _cache.get("series")
    if series is None or series.profile.nmax < m:
        series = delta_series(max(m, 16))
        _cache["series"] = series
    return series.coefficient((m, 0, 0))


def p24_series(nmax: int) -> LaurentSeries:
    """Delta^{-1} = sum p24(n) q^{n-1}, with n running up to nmax."""
    if nmax < 0:
        raise SeriesError("p24_series needs nmax >= 0")
    profile = TruncationProfile.univariate(max(nmax - 1, 0))
    factors = ProductExpansion({(n, 0, 0): -24 for n in range(1, nmax + 1)})
    return expand_product(factors, prefix=(-1, 0, 0), profile=profile)


def p24(n: int, _cache={}) -> int:
    """Number of partitions of n into parts of 24 colours."""
    if n < 0:
        raise SeriesError("p24(n) needs n >= 0")
    series = _cache.get("series")
    if series is None or series.profile.nmax < n - 1:
        series = p24_series(max(n, 16))
        _cache["series"] = series
    return series.coefficient((n - 1, 0, 0))


def char4(l: int) -> int:
    """(-4/l): +-1 for l = +-1 mod 4, 0 for even l."""
    r = l % 4
    if r == 1:
        return 1
    if r == 3:
        return -1
    return 0


def char12(m: int) -> int:
    """(12/M): +1 for M = +-1 mod 12, -1 for M = +-5 mod 12, else 0."""
    r = m % 12
    if r in (1, 11):
        return 1
    if r in (5, 7):
        return -1
    return 0


def char6(a: int) -> int:
    """(6/a): +-1 for a = +-1 mod 6, 0 when gcd(a, 6) != 1."""
    r = a % 6
    if r == 1:
        return 1
    if r == 5:
        return -1
    return 0


class JacobiTable:
    """Fourier coefficients f3(n, l) of the weight-0 index-3 weak Jacobi form.

    The table asserts, rather than assumes, the l-symmetry f3(n,l)=f3(n,-l)
    and the support window f3(n,l)=0 for l^2 > 12n+9.
    """

    __slots__ = ("nmax", "_table")

    def __init__(self, nmax: int, table: dict):
        for (n, l), c in table.items():
            if c == 0:
                continue
            if table.get((n, -l), 0) != c:
                raise SeriesError(f"f3 symmetry violated at (n,l)=({n},{l})")
            if l * l > 12 * n + 9:
                raise SeriesError(
                    f"f3 support window violated: f3({n},{l})={c} with l^2 > 12n+9"
                )
        object.__setattr__(self, "nmax", nmax)
        object.__setattr__(
            self, "_table", {k: v for k, v in table.items() if v != 0}
        )

    def __setattr__(self, *args):
        raise AttributeError("JacobiTable is immutable")

    def value(self, n: int, l: int) -> int:
        if n > self.nmax:
            raise SeriesError(f"f3({n},{l}) beyond computed bound {self.nmax}")
        return self._table.get((n, l), 0)

    def items(self):
        return sorted(self._table.items())

    def row(self, n: int):
        return sorted(
            (l, c) for (nn, l), c in self._table.items() if nn == n
        )

    def __len__(self):
        return len(self._table)


def _euler_inverse_squared(nmax: int) -> list:
    """Coefficients of prod (1-q^n)^{-2} up to q^nmax.

    Partition numbers by the pentagonal recurrence, then one convolution.
    """
    p = [0] * (nmax + 1)
    p[0] = 1
    for n in range(1, nmax + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    sq = [0] * (nmax + 1)
    for i in range(nmax + 1):
        pi = p[i]
        if pi:
            for j in range(nmax + 1 - i):
                sq[i + j] += pi * p[j]
    return sq


def phi03_table(nmax: int) -> JacobiTable:
    """f3(n, l) for n <= nmax, by exact expansion of the defining product.

    The two doubly infinite factor families are first resummed with the
    Jacobi triple product, which leaves two sparse theta sums over two
    eta-power denominators; the result is identical to multiplying the
    factors of the defining product one at a time (the test suite checks
    this) but fast enough for the large tables the rank-3 identity needs.
    """
    if nmax < 0:
        raise SeriesError("phi03_table needs nmax >= 0")
    # prod (1+q^{n-1} r)(1+q^n r^{-1}) = (sum_k q^{k(k-1)/2} r^k) / E(q)
    theta_a = {}
    k = 0
    while k * (k - 1) // 2 <= nmax:
        theta_a[(k * (k - 1) // 2, k)] = 1
        k += 1
    k = -1
    while k * (k - 1) // 2 <= nmax:
        theta_a[(k * (k - 1) // 2, k)] = 1
        k -= 1
    # prod (1-q^{2n-1} r^2)(1-q^{2n-1} r^{-2}) = (sum_k (-1)^k q^{k^2} r^{2k}) / E(q^2)
    theta_b = {}
    k = 0
    while k * k <= nmax:
        sign = -1 if k % 2 else 1
        theta_b[(k * k, 2 * k)] = sign
        if k:
            theta_b[(k * k, -2 * k)] = sign
        k += 1
    num = _poly2_mul(_poly2_mul(theta_a, theta_a, nmax), theta_b, nmax)
    num = _poly2_mul(num, theta_b, nmax)
    # denominator: E(q)^2 E(q^2)^2
    e_inv_sq = _euler_inverse_squared(nmax)
    e2_inv_sq = [0] * (nmax + 1)
    half = _euler_inverse_squared(nmax // 2)
    for j, c in enumerate(half):
        e2_inv_sq[2 * j] = c
    denom_inv = [0] * (nmax + 1)
    for i, a in enumerate(e_inv_sq):
        if a:
            for j in range(nmax + 1 - i):
                if e2_inv_sq[j]:
                    denom_inv[i + j] += a * e2_inv_sq[j]
    table: dict = {}
    for (n0, l), c in num.items():
        for d in range(nmax + 1 - n0):
            u = denom_inv[d]
            if u:
                key = (n0 + d, l - 1)  # the r^{-1} prefix
                table[key] = table.get(key, 0) + c * u
    return JacobiTable(nmax, table)


def _poly2_mul(a: dict, b: dict, nmax: int) -> dict:
    out: dict = {}
    for (n1, l1), c1 in a.items():
        for (n2, l2), c2 in b.items():
            n = n1 + n2
            if n > nmax:
                continue
            key = (n, l1 + l2)
            val = out.get(key, 0) + c1 * c2
            if val:
                out[key] = val
            else:
                del out[key]
    return out


def phi03_direct_table(nmax: int, lbound: int | None = None) -> JacobiTable:
    """f3(n, l) by multiplying the defining factors one at a time.

    Slow; kept as the independent route the fast table is checked against.
    The working l-range is padded: intermediate partial products overshoot
    the final support before later r^{-1}-factors bring it back.
    """
    if lbound is None:
        lbound = isqrt(12 * nmax + 9) + isqrt(2 * nmax + 1) + 6
    poly = {(0, 0): 1}

    def mul(a_exp, l_exp, sign):
        nonlocal poly
        out = dict(poly)
        for (n, l), c in poly.items():
            n2, l2 = n + a_exp, l + l_exp
            if n2 > nmax or abs(l2) > lbound:
                continue
            val = out.get((n2, l2), 0) + sign * c
            if val:
                out[(n2, l2)] = val
            else:
                del out[(n2, l2)]
        poly = out

    for _ in range(2):  # the product is squared
        for n in range(1, nmax + 2):
            if n - 1 <= nmax:
                mul(n - 1, 1, 1)
            if n <= nmax:
                mul(n, -1, 1)
            if 2 * n - 1 <= nmax:
                mul(2 * n - 1, 2, -1)
                mul(2 * n - 1, -2, -1)
    table = {(n, l - 1): c for (n, l), c in poly.items()}
    return JacobiTable(nmax, table)


def delta1_sum_side(profile: TruncationProfile) -> LaurentSeries:
    """Fourier side of the rank-3 identity, in scaled exponents (n, l, m).

    Enumerates n, m = 1 mod 6 inside the profile; for each pair, l runs
    over the odd window and 4nm - 3l^2 is tested for being a positive
    perfect square M^2.  The coefficient is
    char4(l) * char12(M) * sum_{a | gcd(n,l,m)} char6(a).
    """
    terms = {}
    for n in range(1, profile.nmax + 1, 6):
        for m in range(1, profile.mmax + 1, 6):
            four_nm = 4 * n * m
            lmax = min(profile.lwindow, isqrt((four_nm - 1) // 3))
            if lmax % 2 == 0:
                lmax -= 1
            for l in range(-lmax, lmax + 1, 2):
                d = four_nm - 3 * l * l
                if d <= 0:
                    continue
                big_m = isqrt(d)
                if big_m * big_m != d:
                    continue
                c = char4(l) * char12(big_m)
                if c == 0:
                    continue
                g = gcd(n, abs(l), m)
                c *= sum(char6(a) for a in _divisors(g))
                if c:
                    terms[(n, l, m)] = c
    return LaurentSeries(profile, terms)


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)
