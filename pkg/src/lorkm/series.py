"""Truncated multivariate Laurent series over exact integers.

Exponent vectors are integer triples (N, L, M) in scaled units: a monomial
q^(N/6) r^(L/2) s^(M/6).  The scaling clears every fractional exponent that
occurs in the verified objects; one-variable series simply keep L = M = 0.

Truncation keeps terms with N <= nmax, M <= mmax and |L| <= lwindow; there
is no lower bound on N or M (the series are Laurent).  Dropping is
deterministic, so equal inputs always give bit-identical results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt, lcm


ZERO_EXP = (0, 0, 0)


class SeriesError(ValueError):
    """Invalid series operation (profile mismatch, bad factor, ...)."""


def _ceil_two_sqrt_third(nmax: int, mmax: int) -> int:
    # smallest s with 3 s^2 >= 4 nmax mmax, i.e. s >= 2 sqrt(nmax*mmax/3)
    target = 4 * nmax * mmax
    s = isqrt(target // 3)
    while 3 * s * s < target:
        s += 1
    return s


@dataclass(frozen=True)
class TruncationProfile:
    nmax: int
    mmax: int
    lwindow: int

    @classmethod
    def create(cls, nmax: int, mmax: int, lwindow: int | None = None):
        if lwindow is None:
            lwindow = _ceil_two_sqrt_third(nmax, mmax) + 3
        return cls(nmax, mmax, lwindow)

    @classmethod
    def univariate(cls, nmax: int):
        return cls(nmax, 0, 0)

    def contains(self, v) -> bool:
        n, l, m = v
        return n <= self.nmax and m <= self.mmax and abs(l) <= self.lwindow


def grade(v) -> int:
    """Default cone grading: N + M."""
    return v[0] + v[2]


def term_order(v):
    """Canonical peeling/iteration order: by grade, then lexicographic (N, M, L)."""
    return (grade(v), v[0], v[2], v[1])


class LaurentSeries:
    """Immutable truncated Laurent series: a sparse map exponent -> int."""

    __slots__ = ("profile", "_terms")

    def __init__(self, profile: TruncationProfile, terms=None):
        data = {}
        if terms:
            for v, c in (terms.items() if isinstance(terms, dict) else terms):
                v = (int(v[0]), int(v[1]), int(v[2]))
                c = int(c)
                if c != 0 and profile.contains(v):
                    data[v] = data.get(v, 0) + c
                    if data[v] == 0:
                        del data[v]
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, *args):
        raise AttributeError("LaurentSeries is immutable")

    @classmethod
    def one(cls, profile: TruncationProfile):
        return cls(profile, {ZERO_EXP: 1})

    @classmethod
    def monomial(cls, profile: TruncationProfile, v, c: int = 1):
        return cls(profile, {tuple(v): c})

    def coefficient(self, v) -> int:
        return self._terms.get(tuple(v), 0)

    def items(self):
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: term_order(kv[0]))

    def support(self):
        return sorted(self._terms, key=term_order)

    def term_map(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentSeries)
            and self.profile == other.profile
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.profile, tuple(self.items())))

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        _check_profiles(self, other)
        out = dict(self._terms)
        for v, c in other._terms.items():
            nc = out.get(v, 0) + c
            if nc:
                out[v] = nc
            else:
                out.pop(v, None)
        return _raw(self.profile, out)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        _check_profiles(self, other)
        out = dict(self._terms)
        for v, c in other._terms.items():
            nc = out.get(v, 0) - c
            if nc:
                out[v] = nc
            else:
                out.pop(v, None)
        return _raw(self.profile, out)

    def shift(self, v) -> "LaurentSeries":
        """Multiply by the monomial X^v (dropping terms leaving the profile)."""
        dn, dl, dm = v
        out = {}
        contains = self.profile.contains
        for (n, l, m), c in self._terms.items():
            w = (n + dn, l + dl, m + dm)
            if contains(w):
                out[w] = c
        return _raw(self.profile, out)

    def reprofile(self, profile: TruncationProfile) -> "LaurentSeries":
        """The same series truncated to another profile.

        Widening a bound does not create terms the original truncation
        discarded; use it to align profiles before arithmetic.
        """
        return LaurentSeries(profile, self._terms)

    def first_difference(self, other: "LaurentSeries"):
        """Earliest exponent (canonical order) where the two series differ,
        as (exponent, self coefficient, other coefficient); None if equal."""
        _check_profiles(self, other)
        keys = set(self._terms) | set(other._terms)
        for v in sorted(keys, key=term_order):
            a = self._terms.get(v, 0)
            b = other._terms.get(v, 0)
            if a != b:
                return v, a, b
        return None

    def __repr__(self):
        head = ", ".join(
            f"{v}:{c}" for v, c in self.items()[:6]
        )
        more = "" if len(self) <= 6 else f", ... ({len(self)} terms)"
        return f"LaurentSeries({head}{more})"


def _raw(profile, data) -> LaurentSeries:
    s = LaurentSeries.__new__(LaurentSeries)
    object.__setattr__(s, "profile", profile)
    object.__setattr__(s, "_terms", data)
    return s


def _check_profiles(a: LaurentSeries, b: LaurentSeries):
    if a.profile != b.profile:
        raise SeriesError(f"profile mismatch: {a.profile} != {b.profile}")


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Exact truncated product."""
    _check_profiles(a, b)
    if len(a) > len(b):
        a, b = b, a
    contains = a.profile.contains
    out = {}
    for (n1, l1, m1), c1 in a._terms.items():
        for (n2, l2, m2), c2 in b._terms.items():
            w = (n1 + n2, l1 + l2, m1 + m2)
            if contains(w):
                nc = out.get(w, 0) + c1 * c2
                if nc:
                    out[w] = nc
                else:
                    del out[w]
    return _raw(a.profile, out)


def _expansion_terminates(v) -> bool:
    # powers k*v must eventually leave the profile: some component must
    # move toward a bound (N or M upward, or |L| outward)
    n, l, m = v
    return n > 0 or m > 0 or l != 0


def binomial_factor(v, e: int, profile: TruncationProfile) -> LaurentSeries:
    """Truncated expansion of (1 - X^v)^e for any integer e.

    Negative e uses the generalized binomial series; it is rejected when
    the expansion cannot terminate inside the profile (v = 0, or all of
    N <= 0, M <= 0, L = 0).
    """
    v = (int(v[0]), int(v[1]), int(v[2]))
    if e == 0:
        return LaurentSeries.one(profile)
    if v == ZERO_EXP:
        raise SeriesError("factor exponent vector must be nonzero")
    if e < 0 and not _expansion_terminates(v):
        raise SeriesError(
            f"(1 - X^{v})^{e} has an infinite expansion inside the profile"
        )
    terms = {}
    k = 0
    w = ZERO_EXP
    while profile.contains(w):
        if e >= 0:
            if k > e:
                break
            coeff = (-1) ** k * comb(e, k)
        else:
            coeff = comb(k - e - 1, k)
        terms[w] = coeff
        k += 1
        w = (k * v[0], k * v[1], k * v[2])
    return _raw(profile, terms)


class ProductExpansion:
    """A formal product prod_v (1 - X^v)^{e(v)} given by its factor map."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        data = {}
        for v, e in (factors.items() if isinstance(factors, dict) else factors):
            v = (int(v[0]), int(v[1]), int(v[2]))
            e = int(e)
            if e == 0:
                continue
            if not _expansion_terminates(v):
                raise SeriesError(f"factor {v} does not leave the profile cone")
            data[v] = e
        object.__setattr__(self, "factors", data)

    def __setattr__(self, *args):
        raise AttributeError("ProductExpansion is immutable")

    def __eq__(self, other):
        return isinstance(other, ProductExpansion) and self.factors == other.factors

    def __len__(self):
        return len(self.factors)

    def items(self):
        return sorted(self.factors.items(), key=lambda kv: term_order(kv[0]))


def expand_product(
    expansion: ProductExpansion,
    prefix=ZERO_EXP,
    profile: TruncationProfile | None = None,
    method: str = "auto",
) -> LaurentSeries:
    """X^prefix * prod_v (1 - X^v)^{e(v)}, truncated to `profile`.

    The result is exactly the truncation of the true (untruncated) product:
    the expansion runs in a working profile shifted by the prefix and with
    the L-window widened far enough that no in-window term of the true
    product is ever lost to intermediate truncation.

    Two exact algorithms are available: "binomial" multiplies the factors
    one by one, "log" accumulates the formal logarithm and exponentiates
    by graded components (much faster for large factor maps).  "auto"
    switches to "log" for large maps.  Results are identical.
    """
    if profile is None:
        raise SeriesError("expand_product requires a truncation profile")
    prefix = (int(prefix[0]), int(prefix[1]), int(prefix[2]))
    inner = TruncationProfile(
        profile.nmax - prefix[0],
        profile.mmax - prefix[2],
        profile.lwindow + abs(prefix[1]),
    )
    factors = expansion.factors
    if method == "auto":
        method = "log" if len(factors) > 64 else "binomial"
    positive = {v: e for v, e in factors.items() if grade(v) > 0}
    flat = {v: e for v, e in factors.items() if grade(v) <= 0}
    work = TruncationProfile(
        inner.nmax, inner.mmax, max(inner.lwindow, _support_window(positive, flat, inner))
    )
    if method == "binomial":
        terms = {ZERO_EXP: 1}
        for v, e in sorted(positive.items(), key=lambda kv: term_order(kv[0])):
            terms = _peel_cancel(terms, v, e, work)
    elif method == "log":
        terms = _exp_of_log(positive, work).term_map()
    else:
        raise SeriesError(f"unknown expansion method: {method!r}")
    for v, e in sorted(flat.items(), key=lambda kv: term_order(kv[0])):
        terms = _peel_cancel(terms, v, e, work)
    shifted = {}
    contains = profile.contains
    for (n, l, m), c in terms.items():
        w = (n + prefix[0], l + prefix[1], m + prefix[2])
        if contains(w):
            shifted[w] = c
    return _raw(profile, shifted)


def _support_window(positive: dict, flat: dict, profile: TruncationProfile) -> int:
    """An L-window containing every term of the true product (and of every
    partial product) whose N and M fit the profile box.

    Any such term uses factor v at most maxgrade/grade(v) times, so |L| is
    at most maxgrade * max |L(v)|/grade(v), plus the finite L-extent of the
    positive-exponent grade-0 factors.
    """
    maxgrade = max(profile.nmax + profile.mmax, 0)
    best = Fraction(0)
    for v in positive:
        if v[1]:
            best = max(best, Fraction(abs(v[1]) * maxgrade, grade(v)))
    bound = -(-best.numerator // best.denominator) if best else 0
    for v, e in flat.items():
        if e > 0:
            bound += e * abs(v[1])
    return bound + profile.lwindow


def _exp_of_log(factors, profile: TruncationProfile) -> LaurentSeries:
    """exp(sum_v e(v) log(1 - X^v)) by graded components.

    All factors must have positive grade.  The logarithm is accumulated
    over a single integer denominator so the recurrence stays in integer
    arithmetic; every graded division is checked to be exact.
    """
    if not factors:
        return LaurentSeries.one(profile)
    # log numerators: S[w] = -sum over (v, k) with k v = w of e(v)/k,
    # accumulated as Fractions, then put over one common denominator D
    log_sum: dict = {}
    kmax = 1
    for v, e in factors.items():
        if grade(v) <= 0:
            raise SeriesError("log expansion requires positive-grade factors")
        k = 1
        w = v
        while profile.contains(w):
            log_sum[w] = log_sum.get(w, Fraction(0)) - Fraction(e, k)
            kmax = max(kmax, k)
            k += 1
            w = (k * v[0], k * v[1], k * v[2])
    denom = lcm(*range(1, kmax + 1))
    weighted_by_grade: dict = {}
    for w, val in log_sum.items():
        if val == 0:
            continue
        g = grade(w)
        num = val * denom
        assert num.denominator == 1
        # pre-weight by the grade for the Euler recurrence g F_g = sum h S_h F_{g-h}
        weighted_by_grade.setdefault(g, []).append((w, g * int(num)))
    maxgrade = profile.nmax + profile.mmax
    comp: dict = {0: {ZERO_EXP: 1}}
    contains = profile.contains
    for g in range(1, maxgrade + 1):
        acc: dict = {}
        for h, entries in weighted_by_grade.items():
            if h > g:
                continue
            prev = comp.get(g - h)
            if not prev:
                continue
            for (n1, l1, m1), ca in entries:
                for (n2, l2, m2), cf in prev.items():
                    w = (n1 + n2, l1 + l2, m1 + m2)
                    if contains(w):
                        acc[w] = acc.get(w, 0) + ca * cf
        div = g * denom
        level = {}
        for w, val in acc.items():
            q, r = divmod(val, div)
            if r:
                raise SeriesError("graded exponential lost integrality")
            if q:
                level[w] = q
        if level:
            comp[g] = level
    out = {}
    for level in comp.values():
        out.update(level)
    return _raw(profile, out)


def extract_exponents(
    f: LaurentSeries,
    prefix=ZERO_EXP,
    max_factors: int = 200_000,
) -> ProductExpansion:
    """Recover the factor map of a series known to be X^prefix * prod (1-X^v)^e(v).

    Factor peeling: repeatedly take the earliest (canonical cone order)
    nonconstant term c X^v of the running quotient, record e(v) = -c, and
    multiply by (1 - X^v)^c to cancel it.  The input must have unit
    coefficient at X^prefix and nothing earlier.

    Peeling runs in the profile shifted by the prefix: terms of the
    shifted series whose preimage lies beyond the input truncation are
    unknowable, so the top layer of the box is dropped rather than treated
    as zero.  Recovered factors are therefore complete exactly up to the
    shifted bounds.
    """
    prefix = (int(prefix[0]), int(prefix[1]), int(prefix[2]))
    outer = f.profile
    profile = TruncationProfile(
        outer.nmax - prefix[0],
        outer.mmax - prefix[2],
        outer.lwindow - abs(prefix[1]),
    )
    terms = {}
    for (n, l, m), c in f.term_map().items():
        w = (n - prefix[0], l - prefix[1], m - prefix[2])
        if profile.contains(w):
            terms[w] = c
    if terms.get(ZERO_EXP, 0) != 1:
        raise SeriesError("series must have unit constant term after prefix removal")
    factors = {}
    last_key = None
    while True:
        candidates = [v for v in terms if v != ZERO_EXP]
        if not candidates:
            break
        v = min(candidates, key=term_order)
        if grade(v) < 0:
            raise SeriesError(f"term {v} of negative grade cannot be peeled")
        if last_key is not None and term_order(v) < last_key:
            raise SeriesError("peeling does not converge: order decreased")
        last_key = term_order(v)
        c = terms[v]
        factors[v] = factors.get(v, 0) - c
        if len(factors) > max_factors:
            raise SeriesError("peeling produced too many factors")
        terms = _peel_cancel(terms, v, c, profile)
    return ProductExpansion(factors)


def _peel_cancel(terms: dict, v, c: int, profile: TruncationProfile) -> dict:
    """Exact product of a term map with (1 - X^v)^c, kept inside `profile`.

    Unlike multiplying by a profile-truncated expansion of the factor, the
    binomial terms X^{kv} here are bounded per source term: k runs while
    u + k v stays in the profile, so in-window products are never lost to
    the factor's own exponents leaving the window.
    """
    if not _expansion_terminates(v):
        raise SeriesError(f"cannot cancel the constant-direction factor {v}")
    out: dict = {}
    contains = profile.contains
    for u, cu in terms.items():
        k = 0
        w = u
        while contains(w):
            if c >= 0:
                if k > c:
                    break
                coeff = (-1) ** k * comb(c, k)
            else:
                coeff = comb(k - c - 1, k)
            nc = out.get(w, 0) + cu * coeff
            if nc:
                out[w] = nc
            else:
                out.pop(w, None)
            k += 1
            w = (u[0] + k * v[0], u[1] + k * v[1], u[2] + k * v[2])
    return out


def series_to_json_terms(s: LaurentSeries) -> list:
    """Sorted JSON-friendly term array [N, L, M, coefficient-as-string]."""
    return [[n, l, m, str(c)] for (n, l, m), c in s.items()]


def series_from_json_terms(terms, profile: TruncationProfile) -> LaurentSeries:
    return LaurentSeries(
        profile, {(int(n), int(l), int(m)): int(c) for n, l, m, c in terms}
    )
