"""Parameter sweeps comparing family theorems, the general deciders and the oracle."""

from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .arith import PqParams
from .families import AlmostArith, Fib, GenArith, Lucas, family_build, family_ci
from .oracle import OracleResourceError, oracle_ci, projective_oracle_ci
from .reduction import affine_ci, projective_ci
from .semigroup import frobenius
from .verdict import Decision

FAMILIES = ("gen-arith", "almost", "fib", "lucas")
PQ_PAIRS = ((1, 1), (1, 2), (2, 1), (3, 2), (2, 3))

DEFAULT_RANGES = {
    "gen-arith": "d1=2..20,h=1..3,step=1..8,n=3..6",
    "almost": "d1=2..20,h=1..3,step=1..6,n=4..4,dn=1..60",
    "fib": "h=1..3,a=2..10,d=1..6,n=3..5",
    "lucas": "a=2..10,d=1..6,n=3..5",
}


def parse_ranges(text: str) -> dict[str, range]:
    """``"d1=2..20,h=1..3"`` -> {"d1": range(2, 21), "h": range(1, 4)}; a bare value is a one-point range."""
    out: dict[str, range] = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        name, sep, rhs = part.partition("=")
        if not sep:
            raise ValueError(f"range item {part!r} is not name=lo..hi")
        lo, dots, hi = rhs.partition("..")
        lo_i = int(lo)
        hi_i = int(hi) if dots else lo_i
        if hi_i < lo_i:
            raise ValueError(f"empty range {part!r}")
        out[name.strip()] = range(lo_i, hi_i + 1)
    return out


def _grid(ranges: dict[str, range], names: tuple[str, ...]) -> Iterator[dict[str, int]]:
    missing = [n for n in names if n not in ranges]
    if missing:
        raise ValueError(f"missing ranges for {missing}")
    for values in itertools.product(*(ranges[n] for n in names)):
        yield dict(zip(names, values))


def sweep_points(family: str, ranges: dict[str, range], projective: bool = False, pq_pairs=PQ_PAIRS) -> Iterator:
    """Parameter objects over the grid. For gen-arith, n runs up to min(n_hi, d1).

    The arithmetic families accept ``d`` as another name for ``step``.
    """
    if family in ("gen-arith", "almost") and "d" in ranges and "step" not in ranges:
        ranges = {("step" if k == "d" else k): v for k, v in ranges.items()}
    if family == "gen-arith":
        for pt in _grid(ranges, ("d1", "h", "step", "n")):
            if pt["n"] <= pt["d1"]:
                yield GenArith(pt["d1"], pt["h"], pt["step"], pt["n"], projective)
    elif family == "almost":
        for pt in _grid(ranges, ("d1", "h", "step", "n", "dn")):
            yield AlmostArith(pt["d1"], pt["h"], pt["step"], pt["n"] - 1, pt["dn"], projective)
    elif family == "fib":
        for p, q in pq_pairs:
            for pt in _grid(ranges, ("h", "a", "d", "n")):
                yield Fib(PqParams(p, q), pt["h"], pt["a"], pt["d"], pt["n"], projective)
    elif family == "lucas":
        for p, q in pq_pairs:
            for pt in _grid(ranges, ("a", "d", "n")):
                yield Lucas(PqParams(p, q), pt["a"], pt["d"], pt["n"], projective)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass
class SweepRow:
    params: dict
    gens: tuple[int, ...]
    variant: str
    hypotheses_hold: bool
    family: str
    condition: str
    general: str
    general_method: str
    oracle: str  # verdict value, or "skipped"
    frobenius: Optional[int]
    frobenius_ok: Optional[bool]  # closed form == semigroup Frobenius and degree-sum identity
    agree: bool

    def as_csv(self) -> dict:
        out = {f"param_{k}": v for k, v in self.params.items()}
        out.update(
            gens=" ".join(map(str, self.gens)),
            variant=self.variant,
            hypotheses_hold=int(self.hypotheses_hold),
            family_verdict=self.family,
            matched_condition=self.condition,
            general_verdict=self.general,
            general_method=self.general_method,
            oracle_verdict=self.oracle,
            frobenius="" if self.frobenius is None else self.frobenius,
            frobenius_ok="" if self.frobenius_ok is None else int(self.frobenius_ok),
            agree=int(self.agree),
        )
        return out


def params_dict(params) -> dict:
    out = {}
    for k, v in vars(params).items():
        if isinstance(v, PqParams):
            out["p"], out["q"] = v.p, v.q
        elif k != "projective":
            out[k] = v
    return out


def check_frobenius(verdict) -> Optional[bool]:
    """Closed-form g against the degree-sum identity and the Apéry computation.

    Returns None for non-CI verdicts, and also when the identity holds but
    min(A)/e is too large for an Apéry table.
    """
    if verdict.decision is not Decision.CI or verdict.frobenius is None:
        return None
    gens = verdict.gens
    e = math.gcd(*gens)
    n = len(gens)
    gb = verdict.generators or []
    if verdict.variant == "projective":
        gb = [b.dehomogenize(n) for b in gb]
    identity = e * verdict.frobenius == sum(b.affine_value() for b in gb) - sum(gens)
    if not identity or len(gb) != n - 1:
        return False
    if min(gens) // e > 10**6:
        return None
    return frobenius([g // e for g in gens]) == verdict.frobenius


def evaluate_point(params, oracle_max_term: int = 200, check_frob: bool = True, skip_failed: bool = False) -> SweepRow:
    """Family, general and (small terms only) oracle verdicts for one point.

    With ``skip_failed`` the general decider and the oracle are not run on
    points whose family hypotheses fail.
    """
    A = family_build(params)
    fv = family_ci(params)
    hyps = all(h.holds for h in fv.hypothesis_report)
    projective = params.projective
    if skip_failed and not hyps:
        return SweepRow(params_dict(params), A.gens, "projective" if projective else "affine", False,
                        fv.decision.value, "", "skipped", "", "skipped", None, None, False)
    general = projective_ci(A) if projective else affine_ci(A)
    oracle = "skipped"
    if max(A.gens) <= oracle_max_term:
        try:
            ov = projective_oracle_ci(A) if projective else oracle_ci(A)
            oracle = ov.decision.value
        except OracleResourceError:
            pass
    decisions = {fv.decision.value, general.decision.value}
    if oracle != "skipped":
        decisions.add(oracle)
    if not hyps:
        decisions.discard(Decision.INCONCLUSIVE.value)
    agree = len(decisions) == 1 and Decision.INCONCLUSIVE.value not in decisions
    return SweepRow(
        params=params_dict(params),
        gens=A.gens,
        variant="projective" if projective else "affine",
        hypotheses_hold=hyps,
        family=fv.decision.value,
        condition=fv.matched_condition or "",
        general=general.decision.value,
        general_method=general.method.value,
        oracle=oracle,
        frobenius=fv.verdict.frobenius,
        frobenius_ok=check_frobenius(fv.verdict) if check_frob else None,
        agree=agree,
    )


def _eval_star(args):
    return evaluate_point(*args)


def run_sweep(
    points: Iterable,
    oracle_max_term: int = 200,
    workers: Optional[int] = None,
    check_frob: bool = True,
    skip_failed: bool = False,
) -> list[SweepRow]:
    """Evaluate every point; rows come back in point order."""
    jobs = [(p, oracle_max_term, check_frob, skip_failed) for p in points]
    if workers == 1 or len(jobs) < 16:
        return [_eval_star(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval_star, jobs, chunksize=max(1, len(jobs) // 256)))


def write_csv(rows: list[SweepRow], path) -> None:
    if not rows:
        open(path, "w").close()
        return
    dicts = [r.as_csv() for r in rows]
    fields = list(dict.fromkeys(k for d in dicts for k in d))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, quoting=csv.QUOTE_MINIMAL, lineterminator="\n")
        w.writeheader()
        w.writerows(dicts)
