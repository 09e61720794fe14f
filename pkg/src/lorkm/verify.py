"""Verification engines: the finite denominator identity, the rank-3
sum-vs-product identity, Weyl-orbit decomposition of the Fourier side,
multiplicity extraction, and simple-root classification."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, gcd

from .chamber import (
    ChamberError,
    RootDatum,
    finite_weyl_enumerate,
    primitive_part,
    reduce_to_chamber,
)
from .forms import JacobiTable, delta1_sum_side, phi03_table
from .lattice import pairing
from .series import (
    LaurentSeries,
    ProductExpansion,
    SeriesError,
    TruncationProfile,
    expand_product,
    extract_exponents,
    term_order,
)


@dataclass
class VerificationReport:
    name: str
    passed: bool
    profile: dict
    first_mismatch: tuple | None = None
    mismatch_count: int = 0
    lhs_terms: int = 0
    rhs_terms: int = 0
    elapsed_seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "profile": self.profile,
            "mismatch_count": self.mismatch_count,
            "lhs_terms": self.lhs_terms,
            "rhs_terms": self.rhs_terms,
            "details": self.details,
        }
        if self.first_mismatch is not None:
            v, lhs, rhs = self.first_mismatch
            out["first_mismatch"] = {
                "exponent": [x if isinstance(x, int) else str(x) for x in v],
                "lhs": str(lhs),
                "rhs": str(rhs),
            }
        out["timing"] = {"elapsed_seconds": round(self.elapsed_seconds, 3)}
        return out


def _compare(name, profile_desc, lhs_map, rhs_map, started, details=None):
    keys = set(lhs_map) | set(rhs_map)
    mismatches = sorted(
        (v for v in keys if lhs_map.get(v, 0) != rhs_map.get(v, 0)),
        key=term_order,
    )
    first = None
    if mismatches:
        v = mismatches[0]
        first = (v, lhs_map.get(v, 0), rhs_map.get(v, 0))
    return VerificationReport(
        name=name,
        passed=not mismatches,
        profile=profile_desc,
        first_mismatch=first,
        mismatch_count=len(mismatches),
        lhs_terms=len(lhs_map),
        rhs_terms=len(rhs_map),
        elapsed_seconds=time.perf_counter() - started,
        details=details or {},
    )


# ---------------------------------------------------------------------------
# finite (positive-definite) denominator identity


def verify_finite_denominator(datum: RootDatum, drop_factor: int | None = None):
    """Compare e(-rho) prod_{a in D+} (1 - e(-a)) with sum_w det(w) e(-w(rho))
    as exact exponent maps in the simple-root basis.

    `drop_factor` deletes one product factor (by index into the sorted
    positive-root list); it exists as a negative control.
    """
    started = time.perf_counter()
    elements, pos_roots = finite_weyl_enumerate(datum)
    roots = datum.simple_roots
    n = len(roots)
    bform = [[pairing(a, b) for b in roots] for a in roots]
    # rho in root-basis coordinates: sum_j t_j (a_j, a_i) = -(a_i, a_i)/2
    from . import linalg

    t = linalg.solve_linear(
        [[bform[j][i] for j in range(n)] for i in range(n)],
        [-Fraction(bform[i][i], 2) for i in range(n)],
    )
    if t is None:
        raise ChamberError("no Weyl vector for the finite datum")
    rho = tuple(t)
    product_factors = list(pos_roots)
    if drop_factor is not None:
        del product_factors[drop_factor]
    lhs = {tuple(-c for c in rho): 1}
    for alpha in product_factors:
        out = {}
        for key, c in lhs.items():
            out[key] = out.get(key, 0) + c
            shifted = tuple(k - a for k, a in zip(key, alpha))
            out[shifted] = out.get(shifted, 0) - c
        lhs = {k: v for k, v in out.items() if v}
    rhs: dict = {}
    for w, det in elements:
        w_rho = tuple(
            -sum(w[k][j] * rho[j] for j in range(n)) for k in range(n)
        )
        rhs[w_rho] = rhs.get(w_rho, 0) + det
    rhs = {k: v for k, v in rhs.items() if v}
    keys = set(lhs) | set(rhs)
    mismatches = sorted(v for v in keys if lhs.get(v, 0) != rhs.get(v, 0))
    first = None
    if mismatches:
        v = mismatches[0]
        first = (v, lhs.get(v, 0), rhs.get(v, 0))
    return VerificationReport(
        name="finite-denominator",
        passed=not mismatches,
        profile={"group_order": len(elements), "positive_roots": len(pos_roots)},
        first_mismatch=first,
        mismatch_count=len(mismatches),
        lhs_terms=len(lhs),
        rhs_terms=len(rhs),
        elapsed_seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# the rank-3 identity

CONVENTIONS = ("l-negative", "l-positive", "both")


def delta1_factor_map(
    nmax: int,
    mmax: int,
    jacobi: JacobiTable | None = None,
    convention: str = "l-negative",
    perturb: dict | None = None,
) -> ProductExpansion:
    """Product-side factor map e(6n, 2l, 6m) = f3(n*m, l).

    `nmax`, `mmax` bound n and m in original (unscaled) units.  The index
    set is n, m >= 0, (n, m, l) != (0, 0, *), all l; the n = m = 0 plane
    contributes l by `convention` ("l-negative" is the one that works; the
    other two exist so tests can show they fail).
    """
    if convention not in CONVENTIONS:
        raise SeriesError(f"unknown index convention {convention!r}")
    if jacobi is None:
        jacobi = phi03_table(nmax * mmax)
    perturb = dict(perturb or {})

    def f3(n, l):
        return jacobi.value(n, l) + perturb.get((n, l), 0)

    factors = {}
    if convention in ("l-negative", "both"):
        e = f3(0, -1)
        if e:
            factors[(0, -2, 0)] = e
    if convention in ("l-positive", "both"):
        e = f3(0, 1)
        if e:
            factors[(0, 2, 0)] = e
    for n in range(nmax + 1):
        for m in range(mmax + 1):
            if n == 0 and m == 0:
                continue
            lmax = isqrt(12 * n * m + 9)
            lmax = max(
                [lmax] + [abs(pl) for (pn, pl) in perturb if pn == n * m]
            )
            for l in range(-lmax, lmax + 1):
                e = f3(n * m, l)
                if e:
                    factors[(6 * n, 2 * l, 6 * m)] = e
    return ProductExpansion(factors)


def delta1_product_side(
    nmax: int,
    mmax: int,
    lwindow: int | None = None,
    jacobi: JacobiTable | None = None,
    convention: str = "l-negative",
    perturb: dict | None = None,
    method: str = "auto",
) -> LaurentSeries:
    profile = TruncationProfile.create(6 * nmax, 6 * mmax, lwindow)
    factors = delta1_factor_map(nmax, mmax, jacobi, convention, perturb)
    return expand_product(factors, prefix=(1, 1, 1), profile=profile, method=method)


def verify_delta1_identity(
    nmax: int,
    mmax: int,
    lwindow: int | None = None,
    convention: str = "l-negative",
    perturb: dict | None = None,
    method: str = "auto",
    jacobi: JacobiTable | None = None,
) -> VerificationReport:
    """Sum side vs product side of the rank-3 identity, term by term.

    Bounds are in original units: scaled q-exponents run to 6*nmax.
    """
    started = time.perf_counter()
    profile = TruncationProfile.create(6 * nmax, 6 * mmax, lwindow)
    sum_side = delta1_sum_side(profile)
    product_side = delta1_product_side(
        nmax, mmax, lwindow, jacobi, convention, perturb, method
    )
    return _compare(
        "delta1-identity",
        {
            "nmax": nmax,
            "mmax": mmax,
            "scaled_nmax": profile.nmax,
            "lwindow": profile.lwindow,
            "convention": convention,
            "perturbed": bool(perturb),
        },
        sum_side.term_map(),
        product_side.term_map(),
        started,
    )


# ---------------------------------------------------------------------------
# structure of the Fourier side


def exponent_to_vector(v, datum: RootDatum):
    """Scaled exponent (n, l, m) -> u = (m/6, -l/2, n/6) in the rank-3 lattice.

    Fixed by matching the formal exponentials against the monomials in the
    chosen coordinates; the leading exponent (1, 1, 1) must land on rho.
    """
    n, l, m = v
    return datum.lattice.vector((Fraction(m, 6), Fraction(-l, 2), Fraction(n, 6)))


def vector_to_exponent(u) -> tuple:
    c = u.coords
    return (int(6 * c[2]), int(-2 * c[1]), int(6 * c[0]))


def delta1_support_checks(series: LaurentSeries, datum: RootDatum) -> dict:
    """Structural invariants of the Fourier side: congruences, antisymmetry
    in l, support in rho + S, negative norms, det-sign consistency under
    the reflection generators.  Returns {"ok": bool, "violations": [...]}."""
    rho = datum.weyl_vector
    anchor = exponent_to_vector((1, 1, 1), datum)
    violations = []
    if anchor != rho:
        violations.append(("anchor", (1, 1, 1), "does not map to rho"))
    profile = series.profile
    terms = series.term_map()
    for (n, l, m), c in terms.items():
        v = (n, l, m)
        if n % 6 != 1 or m % 6 != 1 or l % 2 == 0:
            violations.append(("congruence", v, c))
            continue
        if terms.get((n, -l, m), 0) != -c:
            violations.append(("antisymmetry", v, c))
        u = exponent_to_vector(v, datum)
        if not (u - rho).is_integral():
            violations.append(("support-not-in-rho+S", v, c))
        d = 4 * n * m - 3 * l * l
        root = isqrt(d) if d > 0 else 0
        if d <= 0 or root * root != d or gcd(root, 6) != 1:
            violations.append(("norm-square", v, d))
        if pairing(u, u) != Fraction(-d, 6):
            violations.append(("norm-value", v, str(pairing(u, u))))
        for k, alpha in enumerate(datum.simple_roots):
            factor = 2 * pairing(u, alpha) / pairing(alpha, alpha)
            image = u - factor * alpha
            w = vector_to_exponent(image)
            if profile.contains(w) and terms.get(w, 0) != -c:
                violations.append(("det-sign", v, ("generator", k)))
    return {"ok": not violations, "violations": violations[:20],
            "violation_count": len(violations)}


def weyl_orbit_decompose(series: LaurentSeries, datum: RootDatum):
    """Decompose the Fourier side into Weyl orbits of rho + a.

    Reduces every support vector to the fundamental chamber, checks the
    det-sign rule along each orbit and that the orbit of rho itself has
    coefficient +1, and returns (m_map, report) with m(a) the negated
    chamber coefficient (the inner minus sign of the Fourier expansion).
    """
    rho = datum.weyl_vector
    chamber_coeff: dict = {}
    violations = []
    for v, c in series.items():
        u = exponent_to_vector(v, datum)
        if not (u - rho).is_integral():
            violations.append(("support-not-in-rho+S", v))
            continue
        if pairing(u, u) >= 0 or pairing(u, rho) >= 0:
            violations.append(("outside-negative-cone", v))
            continue
        y, word, sign = reduce_to_chamber(datum, u)
        a = y - rho
        if not a.is_integral():
            violations.append(("orbit-rep-not-integral", v))
            continue
        if pairing(a, a) > 0:
            violations.append(("orbit-rep-positive-norm", v))
        if any(pairing(a, alpha) > 0 for alpha in datum.simple_roots):
            violations.append(("orbit-rep-outside-closed-cone", v))
        key = tuple(int(x) for x in a.coords)
        c0 = c * sign
        if key in chamber_coeff:
            if chamber_coeff[key] != c0:
                violations.append(("det-sign-orbit", v, key))
        else:
            chamber_coeff[key] = c0
    zero = tuple([0] * datum.lattice.rank)
    if chamber_coeff.get(zero, 0) != 1:
        violations.append(("rho-orbit-coefficient", chamber_coeff.get(zero, 0)))
    m_map = {a: -c0 for a, c0 in chamber_coeff.items() if a != zero}
    report = {
        "ok": not violations,
        "violations": violations[:20],
        "violation_count": len(violations),
        "orbits": len(chamber_coeff),
    }
    return m_map, report


def multiplicities_from_product(series: LaurentSeries, prefix) -> ProductExpansion:
    """Invert a series known to be X^prefix prod (1 - X^v)^e(v) by peeling."""
    return extract_exponents(series, prefix=prefix)


@dataclass
class SimpleRootData:
    """Simple-root data of the generalized algebra: the real roots P plus
    the even/odd imaginary entries read off from m(a) and tau(na)."""

    real: tuple
    even_imaginary: dict
    odd_imaginary: dict
    tau_by_direction: dict

    def to_dict(self) -> dict:
        return {
            "real": [list(map(int, a.coords)) for a in self.real],
            "even_imaginary": {str(list(k)): v for k, v in
                               sorted(self.even_imaginary.items())},
            "odd_imaginary": {str(list(k)): v for k, v in
                              sorted(self.odd_imaginary.items())},
            "tau_by_direction": {str(list(k)): v for k, v in
                                 sorted(self.tau_by_direction.items())},
        }


def classify_simple_roots(m_map: dict, datum: RootDatum) -> SimpleRootData:
    """Split imaginary simple-root data into even and odd parts.

    Negative-norm a contribute |m(a)| copies of a, even when m(a) > 0 and
    odd when m(a) < 0.  Each primitive isotropic direction a0 contributes
    tau(n a0) found by one-variable peeling of 1 - sum_k m(k a0) T^k.
    """
    lat = datum.lattice
    even: dict = {}
    odd: dict = {}
    iso_dirs: dict = {}
    for key, m_val in m_map.items():
        a = lat.vector(key)
        norm = pairing(a, a)
        if norm < 0:
            if m_val > 0:
                even[key] = m_val
            elif m_val < 0:
                odd[key] = -m_val
        elif norm == 0:
            a0 = primitive_part(a)
            k = int(a.coords[_first_nonzero(a0)] / a0.coords[_first_nonzero(a0)])
            dir_key = tuple(int(x) for x in a0.coords)
            iso_dirs.setdefault(dir_key, {})[k] = m_val
        else:
            raise ChamberError(f"m-map entry {key} has positive norm")
    tau_by_direction: dict = {}
    for dir_key, by_mult in iso_dirs.items():
        kmax = max(by_mult)
        profile = TruncationProfile.univariate(kmax)
        terms = {(0, 0, 0): 1}
        for k in range(1, kmax + 1):
            c = by_mult.get(k, 0)
            if c:
                terms[(k, 0, 0)] = -c
        expansion = extract_exponents(LaurentSeries(profile, terms))
        taus = [0] * (kmax + 1)
        for (k, _, _), e in expansion.factors.items():
            taus[k] = e
        tau_by_direction[dir_key] = taus[1:]
        for k, t in enumerate(taus[1:], start=1):
            if t == 0:
                continue
            vec = tuple(k * x for x in dir_key)
            if t > 0:
                even[vec] = even.get(vec, 0) + t
            else:
                odd[vec] = odd.get(vec, 0) - t
    return SimpleRootData(
        real=datum.simple_roots,
        even_imaginary=even,
        odd_imaginary=odd,
        tau_by_direction=tau_by_direction,
    )


def _first_nonzero(vec) -> int:
    for i, c in enumerate(vec.coords):
        if c != 0:
            return i
    raise ChamberError("zero vector has no primitive direction")
