"""Closed-form CI verdicts for four structured families of monomial curves.

* generalized arithmetic: d_1, then d_i = h*d_1 + (i-1)*step;
* almost generalized arithmetic: the above for the first n-1 terms plus an
  arbitrary last term;
* (p,q)-Fibonacci terms F_a, F_{ha+d}, F_{ha+2d}, ...;
* (p,q)-Lucas terms L_a, L_{a+d}, L_{a+2d}, ....

Each decider checks its hypotheses first and returns Inconclusive with the
report when one fails. On CI the explicit generators and the Frobenius
number of <A/e> come from closed forms; everything else here is integer
bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from .arith import PqParams, fib, lcm, lucas, val2
from .binomial import Binomial
from .reduction import affine_reduce, generators_from_trace, projective_ci
from .semigroup import CurveSpec, frobenius, is_minimally_generated, member, member_bounded
from .verdict import Decision, Method, Verdict


@dataclass(frozen=True)
class GenArith:
    d1: int
    h: int
    step: int
    n: int
    projective: bool = False


@dataclass(frozen=True)
class AlmostArith:
    """n_seq generalized-arithmetic terms followed by the extra term dn."""

    d1: int
    h: int
    step: int
    n_seq: int
    dn: int
    projective: bool = False

    @property
    def n(self) -> int:
        return self.n_seq + 1


@dataclass(frozen=True)
class Fib:
    pq: PqParams
    h: int
    a: int
    step_d: int
    n: int
    projective: bool = False


@dataclass(frozen=True)
class Lucas:
    pq: PqParams
    a: int
    step_d: int
    n: int
    projective: bool = False


FamilyParams = Union[GenArith, AlmostArith, Fib, Lucas]


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass
class FamilyVerdict:
    verdict: Verdict
    matched_condition: Optional[str] = None
    hypothesis_report: list = field(default_factory=list)

    @property
    def decision(self) -> Decision:
        return self.verdict.decision


def _positive(params, names):
    for name in names:
        v = getattr(params, name)
        if v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v}")


def family_build(params: FamilyParams) -> CurveSpec:
    """The generator list d_1, ..., d_n of the family member."""
    if isinstance(params, GenArith):
        _positive(params, ("d1", "h", "step", "n"))
        return CurveSpec([params.d1] + [params.h * params.d1 + (i - 1) * params.step for i in range(2, params.n + 1)])
    if isinstance(params, AlmostArith):
        _positive(params, ("d1", "h", "step", "n_seq", "dn"))
        head = family_build(GenArith(params.d1, params.h, params.step, params.n_seq))
        return CurveSpec(head.gens + (params.dn,))
    if isinstance(params, Fib):
        _positive(params, ("h", "a", "step_d", "n"))
        idx = [params.a] + [params.h * params.a + (i - 1) * params.step_d for i in range(2, params.n + 1)]
        return CurveSpec([fib(params.pq, k) for k in idx])
    if isinstance(params, Lucas):
        _positive(params, ("a", "step_d", "n"))
        return CurveSpec([lucas(params.pq, params.a + i * params.step_d) for i in range(params.n)])
    raise TypeError(f"unknown family parameters {params!r}")


def _verdict(A: CurveSpec, projective: bool) -> Verdict:
    return Verdict(Decision.NOT_CI, Method.FAMILY_THEOREM, "projective" if projective else "affine", A.gens)


def _inconclusive(A, projective, report) -> FamilyVerdict:
    v = _verdict(A, projective)
    v.decision = Decision.INCONCLUSIVE
    v.notes.extend(f"hypothesis failed: {h.name}" for h in report if not h.holds)
    return FamilyVerdict(v, None, report)


def _ci(A, projective, label, binomials, g, report) -> FamilyVerdict:
    v = _verdict(A, projective)
    v.decision = Decision.CI
    v.generators = binomials
    v.frobenius = g
    return FamilyVerdict(v, label, report)


def _not_ci(A, projective, report, note=None) -> FamilyVerdict:
    v = _verdict(A, projective)
    if note:
        v.notes.append(note)
    return FamilyVerdict(v, None, report)


def _common_hypotheses(A: CurveSpec, need_gcd: bool = True, need_minimal: bool = True) -> list[Hypothesis]:
    e = A.gcd()
    out = []
    if need_gcd:
        out.append(Hypothesis("gcd(A) = 1", e == 1, f"gcd = {e}"))
    out.append(Hypothesis("distinct terms", not A.has_duplicates))
    if need_minimal:
        out.append(Hypothesis("A minimally generates <A>", is_minimally_generated(A)))
    return out


def _degree_sum_g(A: CurveSpec, binomials: list[Binomial], projective: bool) -> int:
    if projective:
        binomials = [b.dehomogenize(A.n) for b in binomials]
    total = sum(b.affine_value() for b in binomials) - sum(A.gens)
    e = A.gcd()
    assert total % e == 0
    return total // e


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise AssertionError(f"{b} does not divide {a}")
    return q


# ---------------------------------------------------------------------------
# generalized arithmetic sequences
# ---------------------------------------------------------------------------


def ci_gen_arith(params: GenArith) -> FamilyVerdict:
    A = family_build(params)
    P = params.projective
    report = _common_hypotheses(A, need_minimal=not P)
    report.append(Hypothesis("n >= 2", params.n >= 2))
    if not all(h.holds for h in report):
        return _inconclusive(A, P, report)
    d = A.gens
    n, h = params.n, params.h
    if n == 2:
        d1, d2 = d
        if P:
            gens = [Binomial.projective(d, {0: d2}, {1: d1, 2: d2 - d1})]
        else:
            gens = [Binomial.affine(d, {0: d2}, {1: d1})]
        return _ci(A, P, "n = 2", gens, d1 * d2 - d1 - d2, report)
    if n != 3 or d[0] % 2:
        return _not_ci(A, P, report)
    if P and h != 1:
        return _not_ci(A, P, report, "not an arithmetic sequence")
    d1, d2, d3 = d
    g = d1 * d3 // 2 - d1 + d2 - d3
    if P:
        gens = [
            Binomial.projective(d, {1: 2}, {0: 1, 2: 1}),
            Binomial.projective(d, {0: d3 // 2}, {2: d1 // 2, 3: d2 - d1}),
        ]
        return _ci(A, P, "n = 3, arithmetic, d1 even", gens, g, report)
    gens = [
        Binomial.affine(d, {1: 2}, {0: h, 2: 1}),
        Binomial.affine(d, {0: d3 // 2}, {2: d1 // 2}),
    ]
    return _ci(A, P, "n = 3, d1 even", gens, g, report)


# ---------------------------------------------------------------------------
# almost generalized arithmetic sequences
# ---------------------------------------------------------------------------


def _remap(b: Binomial, slots: dict[int, int], gens, projective: bool) -> Binomial:
    plus = {slots[i]: e for i, e in b.plus.items()}
    minus = {slots[i]: e for i, e in b.minus.items()}
    if projective:
        return Binomial.projective(gens, plus, minus)
    return Binomial.affine(gens, plus, minus)


def ci_almost_arith(params: AlmostArith) -> FamilyVerdict:
    A = family_build(params)
    P = params.projective
    report = _common_hypotheses(A, need_minimal=not P)
    report.append(Hypothesis("n >= 4", params.n >= 4))
    if not all(h.holds for h in report):
        return _inconclusive(A, P, report)
    if params.n >= 5:
        return _not_ci(A, P, report, "n >= 5")
    if P:
        return _almost_projective(A, report)

    d = A.gens
    d1, d2, d3, d4 = d
    h = params.h
    b = math.gcd(d1, d2)
    if (d1 // b) % 2 == 0:
        cert = member(CurveSpec(d[:3]), b * d4)
        if cert is not None:
            gens = [
                Binomial.affine(d, {3: b}, dict(cert.coeffs)),
                Binomial.affine(d, {1: 2}, {0: h, 2: 1}),
                Binomial.affine(d, {0: _exact_div(d3, 2 * b)}, {2: _exact_div(d1, 2 * b)}),
            ]
            g = d1 * d3 // (2 * b) - d1 + d2 - d3 + (b - 1) * d4
            return _ci(A, False, "condition 1", gens, g, report)
    if d1 % 2 == 0 and d4 % 2 == 0:
        trace = affine_reduce(CurveSpec((d1, d3, d4)))
        if trace.is_empty:
            gens = [Binomial.affine(d, {1: 2}, {0: h, 2: 1})]
            gens += [_remap(bn, {0: 0, 1: 2, 2: 3}, d, False) for bn in generators_from_trace(trace)]
            g = 2 * frobenius((d1 // 2, d3 // 2, d4 // 2)) + d2
            return _ci(A, False, "condition 2", gens, g, report)
    return _not_ci(A, False, report)


def _almost_projective(A: CurveSpec, report) -> FamilyVerdict:
    d = A.gens
    # put the set in the form where {d4, d2, d3} is not arithmetic
    swapped = 2 * d[1] == d[3] + d[2]
    perm = {0: 3, 1: 1, 2: 2, 3: 0, 4: 4} if swapped else {i: i for i in range(5)}
    e = (d[3], d[1], d[2], d[0]) if swapped else d
    d1, d2, d3, d4 = e
    if 2 * d2 != d1 + d3:
        return _not_ci(A, True, report, "first three terms not arithmetic")

    def proj(plus, minus):
        return Binomial.projective(d, {perm[i]: x for i, x in plus.items()}, {perm[i]: x for i, x in minus.items()})

    label = " (after exchanging d1 and d4)" if swapped else ""
    b = math.gcd(d1, d2)
    if (d1 // b) % 2 == 0:
        cert = member_bounded(CurveSpec(e[:3]), b * d4, b)
        if cert is not None:
            minus = dict(cert.coeffs)
            if b - cert.total:
                minus[4] = b - cert.total
            gens = [
                proj({3: b}, minus),
                proj({1: 2}, {0: 1, 2: 1}),
                proj({0: _exact_div(d3, 2 * b)}, {2: _exact_div(d1, 2 * b), 4: _exact_div(d2 - d1, b)}),
            ]
            return _ci(A, True, "condition 1" + label, gens, _degree_sum_g(A, gens, True), report)
    if d1 % 2 == 0 and d4 % 2 == 0:
        sub = projective_ci(CurveSpec((d1, d3, d4)))
        if sub.is_ci:
            gens = [proj({1: 2}, {0: 1, 2: 1})]
            slots = {0: 0, 1: 2, 2: 3, 3: 4}
            for bn in sub.generators:
                gens.append(proj({slots[i]: x for i, x in bn.plus.items()}, {slots[i]: x for i, x in bn.minus.items()}))
            return _ci(A, True, "condition 2" + label, gens, _degree_sum_g(A, gens, True), report)
    return _not_ci(A, True, report)


# ---------------------------------------------------------------------------
# Fibonacci and Lucas terms
# ---------------------------------------------------------------------------


def d3_member_fib(pq: PqParams, h: int, a: int, step_d: int) -> bool:
    """Closed-form test for d_3 in <d_1, d_2> on Fibonacci terms."""
    d = step_d
    return d % 2 == 1 or fib(pq, 2 * d) >= lcm(fib(pq, a), fib(pq, d))


def d3_member_lucas(pq: PqParams, a: int, step_d: int) -> bool:
    """Closed-form test for d_3 in <d_1, d_2> on Lucas terms."""
    d = step_d
    return d % 2 == 1 or fib(pq, 2 * d) >= lcm(lucas(pq, a), fib(pq, d))


def _seq_hypotheses(A: CurveSpec, n: int) -> list[Hypothesis]:
    return [
        Hypothesis("n >= 3", n >= 3),
        Hypothesis("distinct terms", not A.has_duplicates),
    ]


def _two_term_chain(A: CurveSpec, e: int, tail: list[tuple[dict, dict]]) -> list[Binomial]:
    d = A.gens
    out = [Binomial.affine(d, {0: d[1] // e}, {1: d[0] // e})]
    out += [Binomial.affine(d, plus, minus) for plus, minus in tail]
    return out


def _certificate_chain(A: CurveSpec) -> Optional[list[tuple[dict, dict]]]:
    """x_i - x_1^b1 x_2^b2 for i >= 3, from membership certificates."""
    base = CurveSpec(A.gens[:2])
    tail = []
    for i in range(2, A.n):
        cert = member(base, A.gens[i])
        if cert is None:
            return None
        tail.append(({i: 1}, dict(cert.coeffs)))
    return tail


def _recurrence_chain(A: CurveSpec, first_exp: int, qd: int, Ld: int) -> list[tuple[dict, dict]]:
    tail = [({2: 1}, {0: first_exp, 1: Ld})]
    tail += [({i: 1}, {i - 2: qd, i - 1: Ld}) for i in range(3, A.n)]
    return tail


def ci_fibonacci(params: Fib) -> FamilyVerdict:
    A = family_build(params)
    report = _seq_hypotheses(A, params.n)
    if not all(h.holds for h in report):
        return _inconclusive(A, params.projective, report)
    pq, h, a, d, n = params.pq, params.h, params.a, params.step_d, params.n
    D = A.gens
    Fd, F2d = fib(pq, d), fib(pq, 2 * d)
    Ld = lucas(pq, d)
    qd = pq.q**d

    if params.projective:
        if not (n == 3 and h == 1 and d % 2 == 0 and a % (2 * d) == 0):
            return _not_ci(A, True, report)
        d1, d2, d3 = D
        gens = [
            Binomial.projective(D, {0: _exact_div(d3, F2d)}, {2: _exact_div(d1, F2d), 3: _exact_div(d3 - d1, F2d)}),
            Binomial.projective(D, {1: Ld}, {0: qd, 2: 1, 3: Ld - qd - 1}),
        ]
        return _ci(A, True, "n = 3, h = 1, d even, 2d | a", gens, _degree_sum_g(A, gens, True), report)

    e = fib(pq, math.gcd(a, d))
    d1, d2 = D[0], D[1]
    two_gen_g = _exact_div(d1 * d2 // e - d1 - d2, e)
    label = None
    if d % 2 == 1:
        label = "(a) d odd"
    elif d >= a:
        label = "(b) d >= a"
    elif a == 2 * d:
        label = "(c) a = 2d"
    elif math.gcd(a, d) == a - d and a % 2 == 1:
        label = "(d) gcd(a, d) = a - d, a odd"
    if label is not None:
        if d % 2 == 1:
            tail = _recurrence_chain(A, _exact_div(qd * fib(pq, h * a), d1), qd, Ld)
        else:
            tail = _certificate_chain(A)
            if tail is None:
                raise AssertionError(f"terms of {list(D)} not in <d1, d2> under {label}")
        return _ci(A, False, label, _two_term_chain(A, e, tail), two_gen_g, report)
    if n == 3 and a % (2 * d) == 0:
        d3 = D[2]
        gens = [
            Binomial.affine(D, {0: _exact_div(d3, F2d)}, {2: _exact_div(d1, F2d)}),
            Binomial.affine(D, {1: Ld}, {0: _exact_div(qd * fib(pq, h * a), d1), 2: 1}),
        ]
        g = _exact_div(d1 * d3 // F2d - d1 + (Ld - 1) * d2 - d3, Fd)
        return _ci(A, False, "(e) n = 3, 2d | a", gens, g, report)
    return _not_ci(A, False, report)


def ci_lucas(params: Lucas) -> FamilyVerdict:
    A = family_build(params)
    report = _seq_hypotheses(A, params.n)
    if not all(h.holds for h in report):
        return _inconclusive(A, params.projective, report)
    pq, a, d, n = params.pq, params.a, params.step_d, params.n
    D = A.gens
    Ld = lucas(pq, d)
    qd = pq.q**d
    p_odd, q_odd = pq.p % 2 == 1, pq.q % 2 == 1
    ratio_odd = a % d == 0 and (a // d) % 2 == 1

    if params.projective:
        if not (n == 3 and d % 2 == 0 and p_odd and ratio_odd and (not q_odd or d % 3 != 0)):
            return _not_ci(A, True, report)
        d1, d2, d3 = D
        gens = [
            Binomial.projective(D, {0: _exact_div(d3, Ld)}, {2: _exact_div(d1, Ld), 3: _exact_div(d3 - d1, Ld)}),
            Binomial.projective(D, {1: Ld}, {0: qd, 2: 1, 3: Ld - qd - 1}),
        ]
        return _ci(A, True, "n = 3, d even, p and a/d odd, q even or 3 does not divide d", gens, _degree_sum_g(A, gens, True), report)

    e = A.gcd()
    d1, d2 = D[0], D[1]
    two_gen_g = _exact_div(d1 * d2 // e - d1 - d2, e)
    label = None
    if d % 2 == 1:
        label = "(a) d odd"
    elif d >= a:
        label = "(b) d >= a"
    elif math.gcd(a, d) == a - d and val2(d) > val2(a) >= 1:
        label = "(c) gcd(a, d) = a - d, [d]_2 > [a]_2 >= 1"
    if label is not None:
        if d % 2 == 1:
            tail = _recurrence_chain(A, qd, qd, Ld)
        else:
            tail = _certificate_chain(A)
            if tail is None:
                raise AssertionError(f"terms of {list(D)} not in <d1, d2> under {label}")
        return _ci(A, False, label, _two_term_chain(A, e, tail), two_gen_g, report)
    if n == 3 and p_odd and ratio_odd and not q_odd:
        label = "(d) n = 3, p and a/d odd, q even"
    elif n == 3 and d % 3 != 0 and p_odd and q_odd and ratio_odd:
        label = "(e) n = 3, 3 does not divide d, p, q, a/d odd"
    if label is None:
        return _not_ci(A, False, report)
    d3 = D[2]
    gens = [
        Binomial.affine(D, {0: _exact_div(d3, Ld)}, {2: _exact_div(d1, Ld)}),
        Binomial.affine(D, {1: Ld}, {0: qd, 2: 1}),
    ]
    g = d1 * d3 // Ld - d1 + (Ld - 1) * d2 - d3
    return _ci(A, False, label, gens, g, report)


def family_ci(params: FamilyParams) -> FamilyVerdict:
    """Dispatch to the decider for the family of ``params``."""
    if isinstance(params, GenArith):
        return ci_gen_arith(params)
    if isinstance(params, AlmostArith):
        return ci_almost_arith(params)
    if isinstance(params, Fib):
        return ci_fibonacci(params)
    if isinstance(params, Lucas):
        return ci_lucas(params)
    raise TypeError(f"unknown family parameters {params!r}")
