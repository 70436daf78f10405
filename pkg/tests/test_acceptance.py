"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test appends a single PASS/FAIL line that is printed in the pytest
terminal summary.
"""

import io
import itertools
import math
import time
from functools import lru_cache

from conftest import ACCEPTANCE_LINES

from toric_ci.arith import PqParams
from toric_ci.cli import run
from toric_ci.families import AlmostArith, family_ci
from toric_ci.identities import all_violations
from toric_ci.oracle import oracle_ci
from toric_ci.reduction import affine_ci, affine_reduce, projective_ci
from toric_ci.semigroup import frobenius
from toric_ci.sweeps import DEFAULT_RANGES, PQ_PAIRS, parse_ranges, run_sweep, sweep_points
from toric_ci.verdict import Decision

ORACLE_SMALL = 200
ORACLE_SEQUENCE = 10**7


def record(number, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


@lru_cache(maxsize=None)
def sweep(family, projective=False, oracle_max_term=ORACLE_SMALL):
    start = time.perf_counter()
    points = sweep_points(family, parse_ranges(DEFAULT_RANGES[family]), projective)
    rows = run_sweep(points, oracle_max_term=oracle_max_term, workers=1, skip_failed=True)
    return rows, time.perf_counter() - start


def held(rows):
    return [r for r in rows if r.hypotheses_hold]


def full_agreement(rows):
    """Family, general and (where run) oracle verdicts coincide and are definitive."""
    return [r for r in held(rows) if not r.agree]


def test_criterion_1_lucas_example():
    expected = {"11,18,29": "CI", "11,199,322": "NotCI", "11,2207,3571": "CI", "11,24476,39603": "NotCI"}
    start = time.perf_counter()
    got = {}
    for gens in expected:
        out = io.StringIO()
        code = run(["affine", "--gens", gens], out=out, err=io.StringIO())
        got[gens] = (code, out.getvalue().splitlines()[0])
    elapsed = time.perf_counter() - start
    ok = all(got[g] == (0, v) for g, v in expected.items()) and elapsed < 5
    assert record(1, ok, f"{sum(got[g][1] == v for g, v in expected.items())}/4 verdicts, {elapsed:.2f}s (limit 5s)")


def test_criterion_2_gen_arith_sweep():
    rows, elapsed = sweep("gen-arith")
    h = held(rows)
    bad = full_agreement(rows)
    oracle_runs = sum(r.oracle != "skipped" for r in h)
    ok = h and not bad and oracle_runs == len(h) and elapsed < 120
    assert record(2, ok, f"{len(h)} points, {len(bad)} disagreements, oracle on {oracle_runs}, {elapsed:.1f}s (limit 120s)")


def test_criterion_3_almost_sweep():
    rows, elapsed = sweep("almost")
    h = held(rows)
    bad = full_agreement(rows)
    start = time.perf_counter()
    ext = ext_bad = 0
    for d1, hh, step, dn in itertools.product(range(2, 21), range(1, 4), range(1, 7), range(1, 61)):
        fv = family_ci(AlmostArith(d1, hh, step, 4, dn))
        if not all(x.holds for x in fv.hypothesis_report):
            continue
        ext += 1
        general = affine_ci(fv.verdict.gens)
        if fv.decision is not Decision.NOT_CI or general.decision is not Decision.NOT_CI:
            ext_bad += 1
    elapsed += time.perf_counter() - start
    ok = h and not bad and ext and not ext_bad and elapsed < 300
    assert record(
        3,
        ok,
        f"n=4: {len(h)} points, {len(bad)} disagreements; n=5: {ext} points, {ext_bad} not NotCI; {elapsed:.1f}s (limit 300s)",
    )


def test_criterion_4_fibonacci_lucas_sweeps():
    fib_rows, t_fib = sweep("fib", oracle_max_term=ORACLE_SEQUENCE)
    luc_rows, t_luc = sweep("lucas", oracle_max_term=ORACLE_SEQUENCE)
    rows = held(fib_rows) + held(luc_rows)
    bad = [r for r in rows if r.family != r.general or not r.agree]
    by_adn = {}
    for r in held(fib_rows):
        key = (r.params["a"], r.params["step_d"], r.params["n"])
        by_adn.setdefault(key, set()).add(r.family)
    dependent = [k for k, v in by_adn.items() if len(v) > 1]
    oracle_runs = sum(r.oracle != "skipped" for r in rows)
    elapsed = t_fib + t_luc
    ok = rows and not bad and not dependent and elapsed < 300
    assert record(
        4,
        ok,
        f"{len(rows)} points, {len(bad)} disagreements, oracle on {oracle_runs}, "
        f"{len(dependent)} (a,d,n) with p,q,h-dependent verdicts, {elapsed:.1f}s (limit 300s)",
    )


def test_criterion_5_projective_sweeps():
    counts = {}
    bad = 0
    for family in ("gen-arith", "almost", "fib", "lucas"):
        rows, _ = sweep(family, projective=True)
        h = held(rows)
        counts[family] = len(h)
        bad += len(full_agreement(rows))
    witness = affine_ci([4, 9, 10]).decision is Decision.CI and projective_ci([4, 9, 10]).decision is Decision.NOT_CI
    ok = all(counts.values()) and not bad and witness
    detail = ", ".join(f"{k} {v}" for k, v in counts.items())
    assert record(5, ok, f"{detail} points, {bad} disagreements, witness {{4,9,10}} {'ok' if witness else 'wrong'}")


def test_criterion_6_frobenius():
    ci_rows = []
    for family, cap in (("gen-arith", ORACLE_SMALL), ("almost", ORACLE_SMALL), ("fib", ORACLE_SEQUENCE), ("lucas", ORACLE_SEQUENCE)):
        rows, _ = sweep(family, oracle_max_term=cap)
        ci_rows += [r for r in held(rows) if r.family == Decision.CI.value]
    wrong = [r for r in ci_rows if r.frobenius_ok is False]
    identity_only = sum(r.frobenius_ok is None for r in ci_rows)
    spots = frobenius([4, 5, 6]) == 7 and frobenius([8, 10, 12, 15]) == 29 and frobenius([2, 3]) == 1
    ok = ci_rows and not wrong and not identity_only and spots
    assert record(
        6,
        ok,
        f"{len(ci_rows)} CI points, {len(wrong)} mismatches, {identity_only} too large for an Apery table, "
        f"spot values {'ok' if spots else 'wrong'}",
    )


def test_criterion_7_identity_suites():
    start = time.perf_counter()
    found = {pq: all_violations(PqParams(*pq)) for pq in PQ_PAIRS}
    elapsed = time.perf_counter() - start
    total = sum(len(v) for v in found.values())
    per_pair = ", ".join(f"{p},{q}: {len(v)}" for (p, q), v in found.items())
    ok = total == 0 and elapsed < 30
    assert record(7, ok, f"{total} violations ({per_pair}), {elapsed:.1f}s (limit 30s)")


def test_criterion_8_three_generator_equivalence():
    start = time.perf_counter()
    checked = bad = 0
    for A in itertools.combinations(range(1, 31), 3):
        if math.gcd(*A) != 1:
            continue
        checked += 1
        if (oracle_ci(A).decision is Decision.CI) != affine_reduce(A).is_empty:
            bad += 1
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 120
    assert record(8, ok, f"{checked} sets, {bad} disagreements, {elapsed:.1f}s (limit 120s)")
