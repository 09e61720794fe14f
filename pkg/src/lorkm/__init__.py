"""Exact-arithmetic root data of Lorentzian Kac-Moody algebras.

Lattices with integral bilinear forms, reflection groups and fundamental
chambers, Weyl vectors, generalized Cartan matrices, a truncated
multivariate Laurent-series engine, modular-form coefficient generators,
and verification engines for denominator identities — all over exact
integer and rational arithmetic.
"""

from .lattice import (
    Lattice,
    LatticeError,
    LatticeVector,
    Signature,
    direct_sum,
    is_root,
    pairing,
    reflect,
    signature,
    span_lattice,
    u_lattice,
)
from .chamber import (
    ChamberError,
    RootDatum,
    UnclassifiedAngleError,
    cartan_matrix,
    equidistance_check,
    finite_weyl_enumerate,
    gram_embedding,
    is_positive_definite,
    primitive_part,
    reduce_to_chamber,
    solve_weyl_vector,
    wall_angles,
)
from .series import (
    LaurentSeries,
    ProductExpansion,
    SeriesError,
    TruncationProfile,
    binomial_factor,
    expand_product,
    extract_exponents,
    series_from_json_terms,
    series_mul,
    series_to_json_terms,
)
from .forms import (
    JacobiTable,
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
from .verify import (
    SimpleRootData,
    VerificationReport,
    classify_simple_roots,
    delta1_factor_map,
    delta1_product_side,
    delta1_support_checks,
    exponent_to_vector,
    multiplicities_from_product,
    vector_to_exponent,
    verify_delta1_identity,
    verify_finite_denominator,
    weyl_orbit_decompose,
)
from .cases import CASE_NAMES, CaseFile, case_datum, load_all_cases, load_case, verify_case

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
