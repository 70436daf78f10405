"""Scaling/removal reduction and the CI deciders built on it.

Slots are the 0-based positions of the input list. A ``Scale(i, B)``
replaces the value in slot i by B times itself (the substitution
x_i -> x_i^B on the ideal side); a ``Remove(i, cert)`` drops slot i because
its value is an N-combination of the live slots, which contributes one
binomial to the generating set.
"""

from __future__ import annotations

import math
from functools import reduce
from typing import Optional

from .binomial import Binomial
from .oracle import OracleResourceError, oracle_ci
from .semigroup import Certificate, CurveSpec, as_curve, m_index, member, member_bounded, frobenius
from .verdict import Decision, Method, ReductionTrace, Remove, Scale, Verdict

MAX_PASSES = 10_000


def _gcd(values) -> int:
    return reduce(math.gcd, values)


class _State:
    """Live slots and their current values during a reduction."""

    def __init__(self, gens: tuple[int, ...]):
        self.values = list(gens)
        self.live = list(range(len(gens)))

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.values)

    def others(self, slot: int) -> list[int]:
        return [s for s in self.live if s != slot]

    def cert(self, slot: int, counts: dict[int, int], target: int) -> Certificate:
        return Certificate(self.snapshot(), counts, target)

    def drop(self, slot: int):
        self.live.remove(slot)


def _remove_duplicates(state: _State, steps: list):
    first: dict[int, int] = {}
    for s in list(state.live):
        v = state.values[s]
        if v in first:
            steps.append(Remove(s, state.cert(s, {first[v]: 1}, v)))
            state.drop(s)
        else:
            first[v] = s


def _member_over(state: _State, slots: list[int], target: int, bound: Optional[int] = None):
    """Certificate (keyed by slot) that target lies in the span of ``slots``."""
    vals = [state.values[s] for s in slots]
    if bound is None:
        c = member(vals, target)
    else:
        c = member_bounded(vals, target, bound)
    if c is None:
        return None
    return state.cert(-1, {slots[k]: a for k, a in c.coeffs.items()}, target)


def affine_reduce(A) -> ReductionTrace:
    """Apply Scale and Remove steps until neither applies.

    Each pass scans slots in ascending order, first scaling every slot with
    B_i > 1 (recomputed after each step), then removing every slot whose
    value is in the span of the other live slots. A lone remaining slot is
    removed as well, so a reducible input ends with an empty residual.
    """
    A = as_curve(A)
    state = _State(A.gens)
    steps: list = []
    _remove_duplicates(state, steps)
    for _ in range(MAX_PASSES):
        if len(state.live) == 1:
            steps.append(Remove(state.live[0], None))
            state.drop(state.live[0])
            break
        changed = False
        for s in list(state.live):
            g_all = _gcd(state.values[t] for t in state.live)
            B = _gcd(state.values[t] for t in state.others(s)) // g_all
            if B > 1:
                steps.append(Scale(s, B))
                state.values[s] *= B
                changed = True
        for s in list(state.live):
            if len(state.live) == 1:
                break
            cert = _member_over(state, state.others(s), state.values[s])
            if cert is not None:
                steps.append(Remove(s, cert))
                state.drop(s)
                changed = True
        if not changed:
            break
    else:
        raise RuntimeError(f"reduction of {list(A.gens)} did not reach a fixpoint")
    return ReductionTrace(
        initial=A,
        steps=steps,
        residual_slots=tuple(state.live),
        residual_values=tuple(state.values[s] for s in state.live),
    )


def generators_from_trace(trace: ReductionTrace) -> list[Binomial]:
    """One binomial per certified removal, in the variables of the input.

    Each slot carries the product of the Scale factors applied to it so far;
    a removal x_i^{c_i} - prod x_j^{alpha_j c_j} is written with those
    multipliers.
    """
    gens = trace.initial.gens
    factor = [1] * len(gens)
    out = []
    for step in trace.steps:
        if isinstance(step, Scale):
            factor[step.index] *= step.factor
        elif step.certificate is not None:
            i = step.index
            minus = {j: a * factor[j] for j, a in step.certificate.coeffs.items()}
            out.append(Binomial.affine(gens, {i: factor[i]}, minus))
    return out


def _degree_sum_frobenius(gens: tuple[int, ...], binomials: list[Binomial]) -> int:
    e = _gcd(gens)
    total = sum(b.affine_value() for b in binomials) - sum(gens)
    if total % e:
        raise AssertionError(f"degree sum {total} not divisible by gcd {e}")
    return total // e


def no_ic_pair(R) -> Optional[tuple[int, int]]:
    """Positions (i, j) whose critical degrees differ and whose critical
    binomials can each be chosen to involve the other variable."""
    R = as_curve(R)
    crit = [m_index(R, i)[0] * R.gens[i] for i in range(R.n)]
    for i in range(R.n):
        for j in range(i + 1, R.n):
            if crit[i] == crit[j] or crit[i] < R.gens[j] or crit[j] < R.gens[i]:
                continue
            if member(R, crit[i] - R.gens[j], exclude=i) is None:
                continue
            if member(R, crit[j] - R.gens[i], exclude=j) is not None:
                return i, j
    return None


def critical_degrees(R) -> list[int]:
    R = as_curve(R)
    return [m_index(R, i)[0] * R.gens[i] for i in range(R.n)]


def affine_ci(A, oracle_bound: Optional[int] = None) -> Verdict:
    """Decide whether I(A) is a complete intersection.

    An empty residual gives CI with explicit generators; a residual of three
    elements, a crossing pair of critical binomials, or n-1 distinct critical
    degrees give NotCI; anything else goes to the fiber-graph oracle.
    ``oracle_bound`` is in the units of the residual.
    """
    A = as_curve(A)
    trace = affine_reduce(A)
    verdict = Verdict(Decision.CI, Method.EMPTY_REDUCTION, "affine", A.gens, trace=trace)
    if trace.is_empty:
        verdict.generators = generators_from_trace(trace)
        verdict.frobenius = _degree_sum_frobenius(A.gens, verdict.generators)
        return verdict

    R = CurveSpec(trace.residual_values)
    verdict.decision = Decision.NOT_CI
    if R.n == 3:
        verdict.method = Method.PROP_N3
        return verdict
    pair = no_ic_pair(R)
    if pair is not None:
        verdict.method = Method.NO_IC_LEMMA
        i, j = pair
        verdict.notes.append(f"crossing critical binomials at residual slots {trace.residual_slots[i] + 1}, {trace.residual_slots[j] + 1}")
        return verdict
    if len(set(critical_degrees(R))) >= R.n - 1:
        verdict.method = Method.N_MINUS_1_DISTINCT
        return verdict

    verdict.method = Method.ORACLE_COUNT
    try:
        sub = oracle_ci(R.gens, oracle_bound)
    except OracleResourceError as exc:
        verdict.decision = Decision.INCONCLUSIVE
        verdict.notes.append(f"oracle gave up: {exc}")
        return verdict
    verdict.decision = sub.decision
    verdict.oracle = sub.oracle
    verdict.notes.extend(sub.notes)
    if sub.decision is Decision.CI:
        e = _gcd(A.gens)
        verdict.frobenius = frobenius([g // e for g in A.gens])
    return verdict


def projective_ci(A) -> Verdict:
    """Decide whether the projective closure of the curve is a complete intersection.

    Repeatedly removes a non-maximal d_i when B_i * d_i is an N-combination
    of the other live values with coefficient sum at most B_i (B_i recomputed
    on the live set). CI iff only the maximum survives.
    """
    A = as_curve(A)
    n = A.n
    state = _State(A.gens)
    steps: list = []
    _remove_duplicates(state, steps)
    d = max(A.gens)
    binomials = [
        Binomial.projective(A.gens, {s.index: 1}, dict(s.certificate.coeffs))
        for s in steps
    ]
    while len(state.live) > 1:
        removed = False
        for s in list(state.live):
            v = state.values[s]
            if v == d:
                continue
            others = state.others(s)
            B = _gcd(state.values[t] for t in others) // _gcd(state.values[t] for t in state.live)
            cert = _member_over(state, others, B * v, bound=B)
            if cert is None:
                continue
            if B > 1:
                steps.append(Scale(s, B))
            steps.append(Remove(s, cert))
            minus = dict(cert.coeffs)
            slack = B - cert.total
            if slack:
                minus[n] = slack
            binomials.append(Binomial.projective(A.gens, {s: B}, minus))
            state.values[s] = B * v
            state.drop(s)
            removed = True
        if not removed:
            break

    trace = ReductionTrace(
        initial=A,
        steps=steps,
        residual_slots=tuple(state.live),
        residual_values=tuple(state.values[s] for s in state.live),
    )
    verdict = Verdict(Decision.NOT_CI, Method.TABLE1_ALGORITHM, "projective", A.gens, trace=trace)
    if len(state.live) == 1:
        verdict.decision = Decision.CI
        verdict.generators = binomials
        verdict.frobenius = _degree_sum_frobenius(A.gens, [b.dehomogenize(n) for b in binomials])
    return verdict
