"""Command-line front end.

Subcommands:
  cartan-verify   check the embedded rank-3 cases (angles, Weyl vector, ...)
  coeffs          print coefficient tables (delta, p24, phi03, delta1-sum)
  verify-identity run the rank-3 sum-vs-product verification
  verify-finite   run the finite (A1/A2) denominator identity
  extract         factor-peel a cached series into its exponent map

Exit codes: 0 verified/ok, 1 verification mismatch, 2 usage or input error.
All reports are JSON with deterministic key order; timings live in a
separate "timing" field so the rest of the output is run-independent.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import forms
from .cases import CASE_NAMES, load_case, verify_case
from .chamber import ChamberError, gram_embedding, RootDatum
from .lattice import LatticeError
from .series import (
    SeriesError,
    TruncationProfile,
    extract_exponents,
    series_from_json_terms,
    series_to_json_terms,
)
from .verify import (
    CONVENTIONS,
    verify_delta1_identity,
    verify_finite_denominator,
)

FINITE_CARTANS = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
}


class InputError(ValueError):
    """Bad flag combination or malformed input file (exit code 2)."""


def _emit(doc, out: str | None = None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# cartan-verify


def cmd_cartan_verify(args) -> int:
    if args.all == bool(args.case):
        raise InputError("choose exactly one of --all or --case NAME")
    names = CASE_NAMES if args.all else (args.case,)
    try:
        reports = [verify_case(load_case(name)) for name in names]
    except KeyError as exc:
        raise InputError(str(exc)) from None
    doc = {
        "command": "cartan-verify",
        "status": "pass" if all(r["status"] == "pass" for r in reports) else "fail",
        "cases": reports,
    }
    _emit(doc, args.out)
    return 0 if doc["status"] == "pass" else 1


# ---------------------------------------------------------------------------
# coeffs

COEFF_OBJECTS = ("delta", "p24", "phi03", "delta1-sum")


def _cache_path(cache_dir: str, obj: str, profile: TruncationProfile) -> Path:
    stem = f"{obj}_n{profile.nmax}_m{profile.mmax}_l{profile.lwindow}.json"
    return Path(cache_dir) / stem


def _cached_series(obj: str, profile: TruncationProfile, compute, cache_dir):
    if cache_dir:
        path = _cache_path(cache_dir, obj, profile)
        if path.exists():
            doc = json.loads(path.read_text())
            return series_from_json_terms(doc["terms"], profile)
    series = compute()
    if cache_dir:
        path = _cache_path(cache_dir, obj, profile)
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {
            "object": obj,
            "profile": {
                "nmax": profile.nmax,
                "mmax": profile.mmax,
                "lwindow": profile.lwindow,
            },
            "terms": series_to_json_terms(series),
        }
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return series


def _coeff_rows(args):
    """(rows, column names) for the requested object, sorted."""
    obj = args.object
    n = args.n
    if n is None or n < 0:
        raise InputError("coeffs requires a nonnegative --n bound")
    if obj == "delta":
        profile = TruncationProfile.univariate(n)
        series = _cached_series(
            "delta", profile, lambda: forms.delta_series(max(n, 1)), args.cache_dir
        )
        rows = [(k, series.coefficient((k, 0, 0))) for k in range(1, n + 1)]
        return rows, ("n", "coefficient")
    if obj == "p24":
        profile = TruncationProfile.univariate(max(n - 1, 0))
        series = _cached_series(
            "p24", profile, lambda: forms.p24_series(n), args.cache_dir
        )
        rows = [(k, series.coefficient((k - 1, 0, 0))) for k in range(n + 1)]
        return rows, ("n", "coefficient")
    if obj == "phi03":
        table = forms.phi03_table(n)
        rows = [(nn, l, c) for (nn, l), c in table.items() if nn <= n]
        return rows, ("n", "l", "coefficient")
    if obj == "delta1-sum":
        m = args.m if args.m is not None else n
        profile = TruncationProfile.create(6 * n, 6 * m, args.lwindow)
        series = _cached_series(
            "delta1-sum", profile, lambda: forms.delta1_sum_side(profile),
            args.cache_dir,
        )
        rows = [(nn, l, mm, c) for (nn, l, mm), c in series.items()]
        return rows, ("n", "l", "m", "coefficient")
    raise InputError(f"unknown coeffs object {obj!r}")


def cmd_coeffs(args) -> int:
    rows, columns = _coeff_rows(args)
    if args.format == "csv":
        lines = [",".join(columns)]
        lines += [",".join(str(x) for x in row) for row in rows]
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        doc = {
            "command": "coeffs",
            "object": args.object,
            "columns": list(columns),
            # exponents stay ints, the coefficient is a decimal string so no
            # reader needs arbitrary-width integers
            "rows": [list(row[:-1]) + [str(row[-1])] for row in rows],
        }
        _emit(doc, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify-identity / verify-finite


def _parse_perturb(spec: str) -> dict:
    # format: f3:N,L:+D  e.g.  f3:0,1:+1
    try:
        kind, pos, delta = spec.split(":")
        if kind != "f3":
            raise ValueError
        n_s, l_s = pos.split(",")
        return {(int(n_s), int(l_s)): int(delta)}
    except ValueError:
        raise InputError(
            f"bad --perturb spec {spec!r}; expected f3:N,L:+D"
        ) from None


def cmd_verify_identity(args) -> int:
    if args.case != "delta1":
        raise InputError(f"unknown identity case {args.case!r}")
    if args.nmax < 1 or args.mmax < 1:
        raise InputError("--nmax and --mmax must be positive")
    if args.convention not in CONVENTIONS:
        raise InputError(f"--convention must be one of {', '.join(CONVENTIONS)}")
    perturb = {}
    for spec in args.perturb or ():
        perturb.update(_parse_perturb(spec))
    report = verify_delta1_identity(
        args.nmax,
        args.mmax,
        lwindow=args.lwindow,
        convention=args.convention,
        perturb=perturb or None,
        method=args.method,
    )
    _emit(report.to_dict(), args.out)
    return 0 if report.passed else 1


def cmd_verify_finite(args) -> int:
    cartan = FINITE_CARTANS.get(args.cartan)
    if cartan is None:
        raise InputError(
            f"unknown finite Cartan {args.cartan!r}; "
            f"known: {', '.join(sorted(FINITE_CARTANS))}"
        )
    lat, roots = gram_embedding(cartan)
    datum = RootDatum(lat, roots)
    report = verify_finite_denominator(datum, drop_factor=args.drop_factor)
    _emit(report.to_dict(), args.out)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# extract


def cmd_extract(args) -> int:
    path = Path(args.input)
    if not path.exists():
        raise InputError(f"input file not found: {path}")
    try:
        doc = json.loads(path.read_text())
        p = doc["profile"]
        profile = TruncationProfile(int(p["nmax"]), int(p["mmax"]), int(p["lwindow"]))
        series = series_from_json_terms(doc["terms"], profile)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed series file: {exc}") from None
    prefix = (0, 0, 0)
    if args.prefix:
        try:
            prefix = tuple(int(x) for x in args.prefix.split(","))
            if len(prefix) != 3:
                raise ValueError
        except ValueError:
            raise InputError("--prefix must be three comma-separated integers") from None
    try:
        expansion = extract_exponents(series, prefix=prefix)
    except SeriesError as exc:
        raise InputError(str(exc)) from None
    out = {
        "command": "extract",
        "prefix": list(prefix),
        "factors": [[n, l, m, str(e)] for (n, l, m), e in expansion.items()],
    }
    _emit(out, args.out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorkm",
        description="Exact verification of Lorentzian Kac-Moody root data "
        "and denominator identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cartan-verify", help="verify the embedded rank-3 cases")
    p.add_argument("--all", action="store_true", help="verify all 12 cases")
    p.add_argument("--case", help="verify a single case by name")
    p.add_argument("--out", help="write the JSON report to a file")
    p.set_defaults(func=cmd_cartan_verify)

    p = sub.add_parser("coeffs", help="print coefficient tables")
    p.add_argument("object", choices=COEFF_OBJECTS)
    p.add_argument("--n", type=int, required=True, help="bound on n")
    p.add_argument("--m", type=int, help="bound on m (delta1-sum; defaults to --n)")
    p.add_argument("--lwindow", type=int, help="override the l-window")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the table to a file")
    p.add_argument("--cache-dir", help="series cache directory")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify-identity", help="rank-3 sum vs product identity")
    p.add_argument("--case", default="delta1")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--lwindow", type=int)
    p.add_argument("--convention", default="l-negative")
    p.add_argument("--method", choices=("auto", "binomial", "log"), default="auto")
    p.add_argument(
        "--perturb",
        action="append",
        metavar="f3:N,L:+D",
        help="test hook: add D to f3(N, L)",
    )
    p.add_argument("--out", help="write the JSON report to a file")
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("verify-finite", help="finite denominator identity")
    p.add_argument("--cartan", required=True, help="A1 or A2")
    p.add_argument(
        "--drop-factor",
        type=int,
        help="test hook: delete one product factor by index",
    )
    p.add_argument("--out", help="write the JSON report to a file")
    p.set_defaults(func=cmd_verify_finite)

    p = sub.add_parser("extract", help="factor-peel a cached series")
    p.add_argument("--input", required=True, help="series file in cache format")
    p.add_argument("--prefix", help="leading monomial N,L,M (default 0,0,0)")
    p.add_argument("--out", help="write the factor map to a file")
    p.set_defaults(func=cmd_extract)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ChamberError, LatticeError, SeriesError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
