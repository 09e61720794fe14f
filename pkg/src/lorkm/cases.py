"""Embedded case data: the 12 symmetric rank-3 Cartan matrices with their
polygon angle lists, plus the explicit lattice data of the A_3_II case."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .chamber import (
    ChamberError,
    RootDatum,
    equidistance_check,
    gram_embedding,
    solve_weyl_vector,
    wall_angles,
)
from .lattice import Lattice, pairing, signature

CASE_NAMES = (
    "A_1_0", "A_1_I", "A_1_II", "A_1_III",
    "A_2_0", "A_2_I", "A_2_II", "A_2_III",
    "A_3_0", "A_3_I", "A_3_II", "A_3_III",
)


@dataclass(frozen=True)
class CaseFile:
    name: str
    cartan_matrix: tuple
    expected_angles: tuple
    gram: tuple | None = None
    simple_roots: tuple | None = None
    weyl_vector: tuple | None = None
    notes: str = ""


def load_case(name: str) -> CaseFile:
    if name not in CASE_NAMES:
        raise KeyError(f"unknown case {name!r}; known: {', '.join(CASE_NAMES)}")
    path = resources.files("lorkm.data.cases").joinpath(f"{name}.json")
    doc = json.loads(path.read_text())
    return CaseFile(
        name=doc["name"],
        cartan_matrix=tuple(tuple(row) for row in doc["cartan_matrix"]),
        expected_angles=tuple(doc["expected_angles"]),
        gram=tuple(tuple(row) for row in doc["gram"]) if "gram" in doc else None,
        simple_roots=tuple(tuple(v) for v in doc["simple_roots"])
        if "simple_roots" in doc
        else None,
        weyl_vector=tuple(Fraction(x) for x in doc["weyl_vector"])
        if "weyl_vector" in doc
        else None,
        notes=doc.get("notes", ""),
    )


def load_all_cases():
    return [load_case(name) for name in CASE_NAMES]


def case_datum(case: CaseFile, solve_rho: bool = True) -> RootDatum:
    """RootDatum for a case: from its explicit lattice when present,
    otherwise by realizing the Cartan matrix as a Gram matrix."""
    if case.gram is not None and case.simple_roots is not None:
        lat = Lattice(case.gram, name=case.name)
        roots = [lat.vector(v) for v in case.simple_roots]
    else:
        lat, roots = gram_embedding(case.cartan_matrix)
    datum = RootDatum(lat, roots)
    if solve_rho:
        datum = datum.with_weyl_vector()
    return datum


def verify_case(case: CaseFile) -> dict:
    """Full per-case check: signature, stored-vs-computed Cartan matrix,
    Weyl vector existence with negative norm, angle list, equidistance."""
    report: dict = {"case": case.name, "status": "pass", "failures": []}

    def fail(field, detail):
        report["status"] = "fail"
        report["failures"].append({"field": field, "detail": detail})

    try:
        datum = case_datum(case, solve_rho=False)
    except ChamberError as exc:
        fail("embedding", str(exc))
        return report
    sig = signature(datum.lattice)
    report["signature"] = sig.astuple()
    if (sig.positive, sig.negative) != (2, 1):
        fail("signature", f"expected (2,1)+zeros, got {sig.astuple()}")
    computed = datum.cartan
    stored = case.cartan_matrix
    if any(
        computed[i][j] != stored[i][j]
        for i in range(len(stored))
        for j in range(len(stored))
    ):
        fail("cartan_matrix", "computed Cartan matrix differs from stored one")
    rho = solve_weyl_vector(datum)
    if rho is None:
        fail("weyl_vector", "no Weyl vector exists")
        return report
    report["weyl_vector"] = [str(c) for c in rho.coords]
    rho_norm = pairing(rho, rho)
    report["rho_norm"] = str(rho_norm)
    if rho_norm >= 0:
        fail("rho_norm", f"(rho,rho) = {rho_norm} is not negative")
    if case.weyl_vector is not None and tuple(rho.coords) != case.weyl_vector:
        fail("weyl_vector", "solved Weyl vector differs from stored one")
    datum = RootDatum(datum.lattice, datum.simple_roots, rho, check=False)
    try:
        angles = wall_angles(datum)
    except ChamberError as exc:
        fail("angles", str(exc))
        return report
    report["angles"] = angles
    if tuple(angles) != case.expected_angles:
        for k, (got, want) in enumerate(zip(angles, case.expected_angles)):
            if got != want:
                fail("angles", f"angle {k}: got {got}, expected {want}")
                break
    try:
        value = equidistance_check(datum)
        report["equidistance"] = str(value)
    except ChamberError as exc:
        fail("equidistance", str(exc))
    return report


def verify_all_cases() -> list:
    return [verify_case(case) for case in load_all_cases()]
