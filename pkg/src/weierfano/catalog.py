"""The 22 families: input pairs, tabulated invariants, regeneration, and split search."""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .bundle import (
    BundleSpec,
    SplitSum,
    is_globally_generated,
    is_nef_bundle,
    restriction_type_on_ruling,
)
from .construct import FamilyInput, InvariantReport, full_report
from .surface import DivisorClass, SurfaceModel, coefficients_box, is_ample, is_globally_generated_line, surface

__all__ = [
    "Expected",
    "FamilyRecord",
    "DiffEntry",
    "DiffReport",
    "builtin_table",
    "record",
    "regenerate_and_diff",
    "export_table",
    "search_split",
    "split_key",
    "SEARCH_CONSTRAINTS",
    "FORMAT_VERSION",
]

FORMAT_VERSION = 1
DIFF_FIELDS = ("k4", "k2c2", "h0", "psi_birational")


@dataclass(frozen=True)
class Expected:
    rho: str
    k4: int
    k2c2: int
    h0: int


@dataclass(frozen=True)
class FamilyRecord:
    id: int
    input: FamilyInput
    label: str
    expected: Expected
    psi_birational: bool
    psi_note: str
    computed: Optional[InvariantReport] = None


def _row(id, S, bundle, label, rho, k4, k2c2, h0, birational, note):
    return FamilyRecord(id, FamilyInput(S, bundle), label, Expected(rho, k4, k2c2, h0), birational, note)


def builtin_table() -> list[FamilyRecord]:
    P2, Q, F1 = surface("P2"), surface("P1xP1"), surface("F1")
    H = P2.divisor(1)
    O = P2.zero()
    q = Q.divisor
    split = BundleSpec.split
    tw = BundleSpec.tangent_twist()
    trivial_note = "X = V x (degree-1 del Pezzo surface); psi is the second projection"
    rows = [
        _row(1, P2, split(O, 2 * H), "(P2, O+O(2))", "≤4", 18, 108, 13, True,
             "divisorial contraction; exceptional divisor P2 x elliptic curve, fibre normal bundle O+O(-2)"),
        _row(2, P2, split(O, H), "(P2, O+O(1))", "2", 33, 114, 16, True,
             "divisorial contraction; exceptional divisor P2 x elliptic curve, fibre normal bundle O+O(-1)"),
        _row(3, P2, split(O, O), "(P2, O^2)", "10", 54, 120, 20, False, trivial_note),
        _row(4, P2, split(H, H), "(P2, O(1)^2)", "?", 17, 98, 12, True,
             "small contraction with exceptional locus B"),
        _row(5, P2, tw, "(P2, T(-1))", "2", 32, 104, 15, False,
             "onto a smooth degree-1 del Pezzo threefold; B is a 2-dimensional fibre"),
        _row(6, P2, BundleSpec.quotient([O], [tw, H]), "(P2, F), 0 -> O -> T(-1)+O(1) -> F -> 0",
             "2", 16, 88, 11, True,
             "birational onto a Picard-number-one index-two fourfold, Abar^4 = 2"),
        _row(7, P2, BundleSpec.quotient([-H, -H], [O] * 4), "(P2, F), 0 -> O(-1)^2 -> O^4 -> F -> 0",
             "2", 15, 78, 10, True,
             "blow-up of a degree-1 del Pezzo fourfold along a normal surface"),
        _row(8, P2, BundleSpec.quotient([-2 * H], [O] * 3), "(P2, F), 0 -> O(-2) -> O^3 -> F -> 0",
             "2", 14, 138, 9, False,
             "onto a threefold; B is a 2-dimensional fibre"),
        _row(9, Q, split(q(0, 0), q(1, 1)), "(P1xP1, O+O(1,1))", "3", 22, 100, 13, True,
             "birational of relative Picard number two; a divisor goes to an elliptic curve"),
        _row(10, Q, BundleSpec.trivial(Q), "(P1xP1, O^2)", "11", 48, 108, 18, False, trivial_note),
        _row(11, Q, split(q(0, 0), q(1, 0)), "(P1xP1, O+O(1,0))", "3", 32, 104, 15, False,
             "fibration onto a threefold, not elementary"),
        _row(12, Q, split(q(1, 0), q(0, 1)), "(P1xP1, O(1,0)+O(0,1))", "3", 21, 90, 12, True,
             "blow-up of a degree-1 del Pezzo fourfold along two degree-1 del Pezzo surfaces meeting in a point"),
        _row(13, Q, BundleSpec.quotient([q(-1, -1)], [q(0, 0)] * 3),
             "(P1xP1, F), 0 -> O(-1,-1) -> O^3 -> F -> 0", "3", 20, 80, 11, False,
             "onto a degree-1 del Pezzo threefold, through the blow-up of Xbar x P1 along a K3 surface"),
        _row(14, F1, BundleSpec.pullback(split(O, H)), "(F1, g*(O+O(1)))", "3", 27, 102, 14, True,
             "blow-up of family 2 along a fibre over a point, followed by its contraction"),
        _row(15, F1, BundleSpec.trivial(F1), "(F1, O^2)", "11", 48, 108, 18, False, trivial_note),
        _row(16, F1, BundleSpec.pullback(tw), "(F1, g*T(-1))", "3", 26, 92, 13, False,
             "blow-up of family 5 along a fibre over a point, followed by its contraction"),
    ]
    for i, d in enumerate(range(7, 1, -1)):
        S = surface(f"S{d}")
        rows.append(_row(17 + i, S, BundleSpec.trivial(S), f"(S{d}, O^2)", str(12 + i),
                         6 * d, 12 * (d + 1), 2 * (d + 1), False, trivial_note))
    return rows


def record(id: int) -> FamilyRecord:
    for rec in builtin_table():
        if rec.id == id:
            return rec
    raise KeyError(f"no family with id {id}; ids are 1..22")


@dataclass(frozen=True)
class DiffEntry:
    id: int
    field: str
    expected: object
    computed: object


@dataclass
class DiffReport:
    mismatches: list[DiffEntry] = field(default_factory=list)
    errors: list[tuple[int, str]] = field(default_factory=list)
    records: list[FamilyRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.errors

    def matching_rows(self) -> int:
        bad = {m.id for m in self.mismatches} | {e[0] for e in self.errors}
        return sum(1 for r in self.records if r.id not in bad)

    def summary(self) -> str:
        return f"{self.matching_rows()}/{len(self.records)} rows match"

    def lines(self) -> list[str]:
        out = [f"row {m.id}: {m.field} expected {m.expected}, computed {m.computed}" for m in self.mismatches]
        out += [f"row {i}: error: {msg}" for i, msg in self.errors]
        return out


def regenerate_and_diff(records: Optional[Sequence[FamilyRecord]] = None) -> DiffReport:
    """Recompute every record; list mismatching fields and per-row errors."""
    if records is None:
        records = builtin_table()
    report = DiffReport()
    for rec in records:
        try:
            computed = full_report(rec.input)
        except Exception as exc:  # recorded per row, the sweep continues
            report.errors.append((rec.id, f"{type(exc).__name__}: {exc}"))
            report.records.append(rec)
            continue
        rec = replace(rec, computed=computed)
        report.records.append(rec)
        expected = {"k4": rec.expected.k4, "k2c2": rec.expected.k2c2, "h0": rec.expected.h0,
                    "psi_birational": rec.psi_birational}
        for name in DIFF_FIELDS:
            got = getattr(computed, name)
            if got != expected[name]:
                report.mismatches.append(DiffEntry(rec.id, name, expected[name], got))
    return report


TABLE_HEADERS = ("#", "(B, N*)", "ρ_X", "K⁴", "K²·c₂", "h⁰")


def _table_rows(records: Iterable[FamilyRecord]) -> list[list[str]]:
    rows = []
    for rec in records:
        c = rec.computed
        if c is None:
            c = full_report(rec.input)
        rows.append([str(rec.id), rec.label, rec.expected.rho, str(c.k4), str(c.k2c2), str(c.h0)])
    return rows


def export_table(fmt: str = "md", records: Optional[Sequence[FamilyRecord]] = None,
                 format_version: int = FORMAT_VERSION) -> str:
    """Render the regenerated table as ``md``, ``csv`` or ``json``."""
    if format_version != FORMAT_VERSION:
        raise ValueError(f"unsupported table format version {format_version}")
    if records is None:
        records = builtin_table()
    rows = _table_rows(records)
    if fmt == "md":
        lines = ["| " + " | ".join(TABLE_HEADERS) + " |", "|" + "|".join("---" for _ in TABLE_HEADERS) + "|"]
        lines += ["| " + " | ".join(r) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "pair", "rho", "k4", "k2c2", "h0"])
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        payload = {
            "format_version": format_version,
            "rows": [
                {"id": int(r[0]), "pair": r[1], "rho": r[2], "k4": int(r[3]), "k2c2": int(r[4]), "h0": int(r[5])}
                for r in rows
            ],
        }
        return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")


SEARCH_CONSTRAINTS = frozenset({"gg", "adjoint_ample", "adjoint_gg", "ruling_type_01", "nef", "chern_ineq"})


def _summand_ok(S: SurfaceModel, L: DivisorClass, constraints) -> bool:
    # necessary conditions on each summand, checked before forming pairs
    if "gg" in constraints and is_globally_generated_line(S, L) is not True:
        return False
    if "nef" in constraints and not all(L.dot(C) >= 0 for C in S.mori_generators):
        return False
    return True


def _passes(B: BundleSpec, constraints) -> bool:
    S = B.surface
    A = -S.canonical - B.c1
    if "gg" in constraints and is_globally_generated(B) is not True:
        return False
    if "nef" in constraints and is_nef_bundle(B) is not True:
        return False
    if "adjoint_ample" in constraints and not is_ample(S, A):
        return False
    if "adjoint_gg" in constraints and is_globally_generated_line(S, A) is not True:
        return False
    if "chern_ineq" in constraints and not B.c2 <= B.c1.dot(B.c1):
        return False
    if "ruling_type_01" in constraints:
        if any(restriction_type_on_ruling(B, f) != (0, 1) for f in S.fiber_classes):
            return False
    return True


def search_split(S: SurfaceModel, box: int, constraints: Iterable[str] = ()) -> list[BundleSpec]:
    """Split bundles ``O(L1) + O(L2)`` with coefficients in ``[-box, box]`` passing every filter.

    Constraints: ``gg``, ``nef``, ``adjoint_ample`` (``-K - c1`` ample),
    ``adjoint_gg``, ``chern_ineq`` (``c2 <= c1^2``) and ``ruling_type_01``
    (splitting type ``(0, 1)`` on every conic-bundle fibre class; vacuous on P2).
    Non-split bundles such as ``T(-1)`` or quotients are never produced.
    The cost grows like ``(2 box + 1)^(2 rho)``.
    """
    if box < 0:
        raise ValueError("box must be non-negative")
    constraints = frozenset(constraints)
    unknown = constraints - SEARCH_CONSTRAINTS
    if unknown:
        raise ValueError(f"unknown constraints {sorted(unknown)}")
    summands = sorted(
        (L for L in coefficients_box(S, box) if _summand_ok(S, L, constraints)),
        key=lambda D: D.coeffs,
    )
    found = []
    for L1, L2 in itertools.combinations_with_replacement(summands, 2):
        B = BundleSpec.split(L1, L2)
        if _passes(B, constraints):
            found.append(B)
    return found


def split_key(B: BundleSpec) -> tuple:
    """Order-independent key of a split bundle, e.g. ``((0, 0), (1, 1))``."""
    p = B.presentation
    if not isinstance(p, SplitSum):
        raise ValueError("not a split bundle")
    return tuple(sorted((p.first.coeffs, p.second.coeffs)))
