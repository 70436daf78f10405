"""Command-line front end.

    toric-ci affine --gens 11,18,29
    toric-ci projective --gens 3,5,7 --json
    toric-ci family fib p=1 q=1 h=1 a=8 d=2 n=3 [--projective] [--fallback]
    toric-ci frobenius --gens 4,5,6
    toric-ci oracle --gens 3,5,7 [--bound 40] [--projective]
    toric-ci sweep --family lucas --ranges a=2..10,d=1..6,n=3..5 --out lucas.csv

Exit codes: 0 definitive verdict, 1 usage error, 2 invalid input,
3 inconclusive verdict under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import PqParams
from .binomial import Binomial
from .families import AlmostArith, Fib, FamilyVerdict, GenArith, Lucas, family_build, family_ci
from .oracle import OracleResourceError, oracle_ci, projective_oracle_ci
from .reduction import affine_ci, projective_ci
from .semigroup import CurveSpec, frobenius
from .sweeps import FAMILIES, PQ_PAIRS, evaluate_point, parse_ranges, run_sweep, sweep_points, write_csv
from .verdict import Decision, Verdict

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageFailure(Exception):
    pass


class InputFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageFailure(f"{self.prog}: {message}\n{self.format_usage()}")


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------


def verdict_document(v: Verdict, family: Optional[FamilyVerdict] = None, params: Optional[dict] = None) -> dict:
    doc = {
        "input": {"gens": [str(g) for g in v.gens]},
        "variant": v.variant,
        "verdict": v.decision.value,
        "method": v.method.value,
        "matched_condition": family.matched_condition if family else None,
        "generators": [b.to_json() for b in v.generators or []],
        "frobenius": None if v.frobenius is None else str(v.frobenius),
        "trace": v.trace.to_json() if v.trace is not None else [],
        "hypothesis_report": [h.to_json() for h in family.hypothesis_report] if family else [],
    }
    if params:
        doc["input"]["family"] = {k: str(x) if isinstance(x, int) else x for k, x in params.items()}
    if v.oracle is not None:
        doc["oracle"] = oracle_document(v.oracle)
    if v.notes:
        doc["notes"] = list(v.notes)
    return doc


def oracle_document(report) -> dict:
    def deg(x):
        return [str(c) for c in x] if isinstance(x, tuple) else str(x)

    return {
        "bound": str(report.bound),
        "betti": [[deg(d), str(c)] for d, c in report.betti],
        "mu_within_bound": str(report.mu_within_bound),
        "scan_exhausted_to_bound": report.scan_exhausted_to_bound,
        "complete": report.complete,
    }


@dataclass
class ParsedVerdict:
    """What a JSON verdict document carries, back in Python types."""

    gens: tuple[int, ...]
    variant: str
    decision: Decision
    method: str
    matched_condition: Optional[str]
    generators: list
    frobenius: Optional[int]
    trace: list


def parse_document(doc: dict) -> ParsedVerdict:
    trace = []
    for step in doc["trace"]:
        item = {"op": step["op"], "index": int(step["index"]) - 1}
        if step["op"] == "scale":
            item["factor"] = int(step["factor"])
        else:
            cert = step["certificate"]
            item["certificate"] = None if cert is None else {int(k[1:]) - 1: int(c) for k, c in cert.items()}
        trace.append(item)
    return ParsedVerdict(
        gens=tuple(int(g) for g in doc["input"]["gens"]),
        variant=doc["variant"],
        decision=Decision(doc["verdict"]),
        method=doc["method"],
        matched_condition=doc["matched_condition"],
        generators=[Binomial.from_json(b) for b in doc["generators"]],
        frobenius=None if doc["frobenius"] is None else int(doc["frobenius"]),
        trace=trace,
    )


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# text output
# ---------------------------------------------------------------------------


_LABEL = {Decision.CI: "CI", Decision.NOT_CI: "NotCI", Decision.INCONCLUSIVE: "Inconclusive"}


def verdict_text(v: Verdict, family: Optional[FamilyVerdict] = None) -> str:
    lines = [_LABEL[v.decision], f"  {v.variant} curve {', '.join(map(str, v.gens))}", f"  method: {v.method.value}"]
    if family is not None and family.matched_condition:
        lines.append(f"  condition: {family.matched_condition}")
    if family is not None:
        for h in family.hypothesis_report:
            lines.append(f"  hypothesis {'ok ' if h.holds else 'FAILED'} {h.name}")
    if v.generators:
        lines.append("  generators:")
        lines += [f"    {b}    (degree {b.degree})" for b in v.generators]
    if v.frobenius is not None:
        lines.append(f"  frobenius: {v.frobenius}")
    if v.oracle is not None:
        lines.append(f"  oracle: {v.oracle.mu_within_bound} generators up to {v.oracle.bound}")
    lines += [f"  note: {n}" for n in v.notes]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def parse_gens(text: str) -> CurveSpec:
    try:
        values = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageFailure(f"--gens expects comma-separated integers, got {text!r}")
    if not values:
        raise UsageFailure("--gens needs at least one integer")
    if any(v < 1 for v in values):
        raise InputFailure(f"generators must be positive, got {values}")
    return CurveSpec(values)


_FAMILY_KEYS = {
    "gen-arith": ("d1", "h", "step", "n"),
    "almost": ("d1", "h", "step", "n", "dn"),
    "fib": ("p", "q", "h", "a", "d", "n"),
    "lucas": ("p", "q", "a", "d", "n"),
}


def parse_family(name: str, items: Sequence[str], projective: bool):
    keys = _FAMILY_KEYS[name]
    vals: dict[str, int] = {}
    for item in items:
        k, sep, v = item.partition("=")
        if k == "d" and "step" in keys:
            k = "step"
        if not sep or k not in keys:
            raise UsageFailure(f"family {name} takes {', '.join(k + '=N' for k in keys)}; got {item!r}")
        try:
            vals[k] = int(v)
        except ValueError:
            raise UsageFailure(f"{k} must be an integer, got {v!r}")
    missing = [k for k in keys if k not in vals]
    if missing:
        raise UsageFailure(f"family {name} is missing {', '.join(missing)}")
    bad = [k for k in keys if vals[k] < 1]
    if bad:
        raise InputFailure(f"{', '.join(bad)} must be positive")
    try:
        if name == "gen-arith":
            return GenArith(vals["d1"], vals["h"], vals["step"], vals["n"], projective), vals
        if name == "almost":
            return AlmostArith(vals["d1"], vals["h"], vals["step"], vals["n"] - 1, vals["dn"], projective), vals
        pq = PqParams(vals["p"], vals["q"])
    except ValueError as exc:
        raise InputFailure(str(exc))
    if name == "fib":
        return Fib(pq, vals["h"], vals["a"], vals["d"], vals["n"], projective), vals
    return Lucas(pq, vals["a"], vals["d"], vals["n"], projective), vals


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toric-ci", description="Complete-intersection tests for toric ideals of monomial curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, bound=False):
        p.add_argument("--json", action="store_true", help="emit a JSON document")
        p.add_argument("--strict", action="store_true", help="exit 3 on an inconclusive verdict")
        if bound:
            p.add_argument("--bound", type=int, help="oracle degree bound")

    p = sub.add_parser("affine", help="decide CI for I(A)")
    p.add_argument("--gens", required=True)
    common(p, bound=True)

    p = sub.add_parser("projective", help="decide CI for the projective closure")
    p.add_argument("--gens", required=True)
    common(p)

    p = sub.add_parser("family", help="closed-form verdict for a family member")
    p.add_argument("name", choices=FAMILIES)
    p.add_argument("params", nargs="*", help="key=value parameters")
    p.add_argument("--projective", action="store_true")
    p.add_argument("--fallback", action="store_true", help="run the general algorithm when a hypothesis fails")
    common(p)

    p = sub.add_parser("frobenius", help="Frobenius number of <A>")
    p.add_argument("--gens", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("oracle", help="brute-force minimal generator count")
    p.add_argument("--gens", required=True)
    p.add_argument("--projective", action="store_true")
    common(p, bound=True)

    p = sub.add_parser("sweep", help="family vs general vs oracle over a parameter grid")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--ranges", required=True, help="e.g. d1=2..20,h=1..3,step=1..8,n=3..6")
    p.add_argument("--out", required=True)
    p.add_argument("--projective", action="store_true")
    p.add_argument("--pq", default=";".join(f"{p},{q}" for p, q in PQ_PAIRS), help="p,q pairs separated by ';'")
    p.add_argument("--oracle-max-term", type=int, default=200)
    p.add_argument("--workers", type=int, default=1)
    return parser


def _emit(out, args, verdict: Verdict, family=None, params=None, extra: Optional[dict] = None):
    if args.json:
        doc = verdict_document(verdict, family, params)
        if extra:
            doc.update(extra)
        out.write(dumps(doc))
    else:
        out.write(verdict_text(verdict, family))
        if extra and "fallback" in extra:
            out.write("fallback (general algorithm):\n")
            out.write(verdict_text(extra["_fallback_verdict"]))


def _exit_for(decision: Decision, strict: bool) -> int:
    if decision is Decision.INCONCLUSIVE and strict:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _run(args, out) -> int:
    cmd = args.command
    if cmd in ("affine", "projective"):
        A = parse_gens(args.gens)
        v = affine_ci(A, args.bound) if cmd == "affine" else projective_ci(A)
        _emit(out, args, v)
        return _exit_for(v.decision, args.strict)

    if cmd == "family":
        params, raw = parse_family(args.name, args.params, args.projective)
        try:
            fv = family_ci(params)
        except ValueError as exc:
            raise InputFailure(str(exc))
        final = fv.decision
        extra = None
        if fv.decision is Decision.INCONCLUSIVE and args.fallback:
            A = family_build(params)
            gv = projective_ci(A) if args.projective else affine_ci(A)
            final = gv.decision
            extra = {"fallback": verdict_document(gv), "_fallback_verdict": gv}
        if args.json and extra:
            extra = {"fallback": extra["fallback"]}
        if not args.json and extra:
            out.write(verdict_text(fv.verdict, fv))
            out.write("fallback (general algorithm):\n")
            out.write(verdict_text(extra["_fallback_verdict"]))
        else:
            _emit(out, args, fv.verdict, fv, raw, extra)
        return _exit_for(final, args.strict)

    if cmd == "frobenius":
        A = parse_gens(args.gens)
        try:
            g = frobenius(A)
        except ValueError as exc:
            raise InputFailure(str(exc))
        if args.json:
            out.write(dumps({"input": {"gens": [str(x) for x in A.gens]}, "frobenius": str(g)}))
        else:
            out.write(f"{g}\n")
        return EXIT_OK

    if cmd == "oracle":
        A = parse_gens(args.gens)
        try:
            v = projective_oracle_ci(A, args.bound) if args.projective else oracle_ci(A, args.bound)
        except OracleResourceError as exc:
            out.write(f"oracle gave up: {exc}\n")
            return EXIT_INCONCLUSIVE if args.strict else EXIT_OK
        if args.json:
            out.write(dumps(verdict_document(v)))
        else:
            out.write(verdict_text(v))
            for deg, c in v.oracle.betti:
                out.write(f"    degree {deg}: {c}\n")
        return _exit_for(v.decision, args.strict)

    if cmd == "sweep":
        try:
            ranges = parse_ranges(args.ranges)
            pairs = tuple(tuple(int(x) for x in item.split(",")) for item in args.pq.split(";") if item)
        except ValueError as exc:
            raise UsageFailure(str(exc))
        try:
            for p, q in pairs:
                PqParams(p, q)
            points = list(sweep_points(args.family, ranges, args.projective, pairs))
        except ValueError as exc:
            raise InputFailure(str(exc))
        rows = run_sweep(points, oracle_max_term=args.oracle_max_term, workers=args.workers)
        write_csv(rows, args.out)
        held = [r for r in rows if r.hypotheses_hold]
        agree = sum(r.agree for r in held)
        out.write(f"{len(rows)} points, {len(held)} meeting the hypotheses, {agree} in agreement; wrote {args.out}\n")
        return EXIT_OK
    raise UsageFailure(f"unknown command {cmd}")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return _run(args, out)
    except UsageFailure as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except InputFailure as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
