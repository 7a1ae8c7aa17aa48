"""Command line interface: ``ddb <subcommand> ...``.

Exit status is 0 on success, 1 on bad input, and 2 when ``--strict`` is
given and some answer stayed unknown because of the coset limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .abelian import h1_invariants
from .catalog import SpaceFormDescriptor, coincidences, enumerate_descriptors
from .cosets import EnumLimit, group_order
from .errors import DDBError
from .gluing import (
    GluingDatum,
    GluingMatrix,
    SideDescriptor,
    SUBLATTICES,
    glue,
    gluing_sweep,
    matrix_orbit_reduce,
    presentation_report,
)
from .parser import parse_presentation
from .verdicts import check_structural_rules, decide_flat, decide_spaceform


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=default if suppress else False,
                   help="machine-readable JSON output")
    p.add_argument("--strict", action="store_true", default=default if suppress else False,
                   help="exit 2 if any answer is unknown")
    p.add_argument("--coset-limit", type=int, default=default, metavar="N",
                   help="maximum number of cosets (default: $DDB_COSET_LIMIT or 10^6)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddb", description=__doc__.splitlines()[0], parents=[_common(False)])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = [_common(True)]

    p = sub.add_parser("order", parents=common, help="group order by coset enumeration")
    p.add_argument("presentation")
    p = sub.add_parser("abelianize", parents=common, help="invariant factors of H1")
    p.add_argument("presentation")

    p = sub.add_parser("glue", parents=common, help="fundamental group of a gluing")
    p.add_argument("--leaf", choices=["S2", "T2"], required=True)
    p.add_argument("--minus", choices=["pt", "RP2", "S1", "T2", "K"], required=True)
    p.add_argument("--plus", choices=["pt", "RP2", "S1"], default=None,
                   help="default: S1 for a torus leaf, pt for a sphere leaf")
    p.add_argument("--matrix", default=None, metavar="a,b,c,d")
    p.add_argument("--sublattice", choices=sorted(SUBLATTICES), default="first")

    p = sub.add_parser("enumerate-gluings", parents=common, help="sweep all gluing matrices")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--minus", choices=["K", "S1", "T2"], required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--sublattice", choices=sorted(SUBLATTICES), default="first")

    p = sub.add_parser("decide-spaceform", parents=common, help="verdict for a space form descriptor")
    p.add_argument("descriptor", help='e.g. \'{"family":"Prism","alpha":3,"beta":1,"cofactor":1}\'')
    p = sub.add_parser("decide-flat", parents=common, help="obstruction for a flat manifold group")
    p.add_argument("presentation")
    p = sub.add_parser("catalog", parents=common, help="list space form descriptors")
    p.add_argument("--max-order", type=int, required=True)

    p = sub.add_parser("check-rules", parents=common, help="structural rules against group data")
    p.add_argument("presentation")
    p.add_argument("--aspherical", action="store_true")
    p.add_argument("--ell-minus-zero", action="store_true")
    p.add_argument("--both-ell-zero", action="store_true")
    return parser


def _table(rows: list[list[Any]], header: list[str]) -> str:
    cells = [header] + [["-" if v is None else str(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _kv(pairs: list[tuple[str, Any]]) -> str:
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k.ljust(width)}  {'-' if v is None else v}" for k, v in pairs)


def _undetermined(report) -> bool:
    """Finite H1 but no order and no classification that explains why."""
    return (
        report.order is None
        and report.invariants.is_finite
        and report.classification.kind == "Other"
    )


class _Run:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.limit = EnumLimit(args.coset_limit or 0)
        self.unknown = False

    def emit(self, data: Any, text: str) -> None:
        if self.args.json:
            print(json.dumps(data, sort_keys=False))
        else:
            print(text)

    def order(self):
        p = parse_presentation(self.args.presentation)
        n = group_order(p, self.limit)
        infinite = not h1_invariants(p).is_finite
        self.unknown |= n is None and not infinite
        text = str(n) if n is not None else "infinite" if infinite else "unknown"
        self.emit({"presentation": p.format(), "order": n, "infinite": infinite}, text)

    def abelianize(self):
        p = parse_presentation(self.args.presentation)
        inv = h1_invariants(p)
        self.emit(inv.to_json(), str(inv))

    def glue(self):
        a = self.args
        plus = a.plus or ("S1" if a.leaf == "T2" else "pt")
        minus = SideDescriptor.of(a.leaf, a.minus)
        plus_side = SideDescriptor.of(a.leaf, plus)
        matrix = None
        if a.leaf == "T2":
            matrix = GluingMatrix.parse(a.matrix or "1,0,0,1")
        datum = GluingDatum(minus, plus_side, matrix)
        report = glue(datum, a.sublattice, self.limit)
        self.unknown |= _undetermined(report)
        data = report.to_json()
        if matrix is not None:
            data["matrix"] = list(matrix_orbit_reduce(matrix).entries)
        pairs = [
            ("presentation", report.presentation.format()),
            ("H1", report.invariants),
            ("order", report.order),
            ("classification", report.classification),
            ("abelian", report.abelian),
        ]
        if report.manifold:
            pairs.append(("manifold", report.manifold))
        for c in report.certificate:
            pairs.append((f"check [{c.group}]", f"{c.lhs} = {c.rhs}: {c.holds}"))
        self.emit(data, _kv(pairs))

    def enumerate_gluings(self):
        a = self.args
        side = SideDescriptor.of("T2", a.minus)
        results = gluing_sweep(a.bound, side, a.sublattice, self.limit, jobs=max(1, a.jobs))
        data = []
        rows = []
        for m, r in results:
            self.unknown |= _undetermined(r)
            certified = all(c.holds for c in r.certificate) if r.certificate else None
            data.append({"matrix": list(m.entries), **r.to_json()})
            rows.append([str(m), str(r.classification), r.order, str(r.invariants), certified])
        self.emit(data, _table(rows, ["matrix", "classification", "order", "H1", "certified"]))

    def decide_spaceform(self):
        d = SpaceFormDescriptor.from_json(self.args.descriptor)
        v = decide_spaceform(d, limit=self.limit)
        self.unknown |= v.evidence.get("isomorphism_verified", True) is None
        self.emit(v.to_json(), _kv([
            ("descriptor", d.label),
            ("group", v.evidence["group"]),
            ("order", d.order),
            ("answer", v.answer.value),
            ("rule", v.rule),
            ("homogeneous", v.homogeneous),
        ]))

    def decide_flat(self):
        p = parse_presentation(self.args.presentation)
        v = decide_flat(h1_invariants(p))
        self.emit(v.to_json(), _kv([
            ("H1", h1_invariants(p)), ("answer", v.answer.value), ("rule", v.rule)
        ]))

    def catalog(self):
        descs = enumerate_descriptors(self.args.max_order)
        same = coincidences(descs)
        data, rows = [], []
        for d in descs:
            v = decide_spaceform(d, verify=False)
            others = [e.label for e in same[d]]
            data.append({**d.to_json(), "order": d.order, "answer": v.answer.value,
                         "homogeneous": v.homogeneous, "same_group_as": others})
            shown = ", ".join(others[:3]) + (", ..." if len(others) > 3 else "")
            rows.append([d.label, d.order, v.answer.value, v.homogeneous, shown])
        self.emit(data, _table(rows, ["descriptor", "order", "answer", "homogeneous", "same group as"]))

    def check_rules(self):
        a = self.args
        p = parse_presentation(a.presentation)
        report = presentation_report(p, self.limit)
        outcomes = check_structural_rules(report, a.aspherical, a.ell_minus_zero, a.both_ell_zero)
        data = {"report": report.to_json(), "rules": [o.to_json() for o in outcomes]}
        rows = [[o.rule, o.status, o.detail] for o in outcomes]
        self.emit(data, _table(rows, ["rule", "status", "detail"]))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        run = _Run(args)
        getattr(run, args.command.replace("-", "_"))()
    except DDBError as exc:
        print(f"ddb: error: {exc}", file=sys.stderr)
        return 1
    if args.strict and run.unknown:
        print("ddb: some answers are unknown (coset limit reached)", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
