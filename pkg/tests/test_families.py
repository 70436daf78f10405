import math

import pytest
from hypothesis import given, strategies as st

from toric_ci.arith import PqParams
from toric_ci.families import (
    AlmostArith,
    Fib,
    GenArith,
    Lucas,
    d3_member_fib,
    d3_member_lucas,
    family_build,
    family_ci,
)
from toric_ci.reduction import affine_ci, projective_ci
from toric_ci.semigroup import frobenius, member
from toric_ci.sweeps import PQ_PAIRS
from toric_ci.verdict import Decision, Method

ONE = PqParams(1, 1)
CI, NOT = Decision.CI, Decision.NOT_CI
pq_pairs = st.sampled_from([PqParams(p, q) for p, q in PQ_PAIRS])


def exps(b):
    return tuple(sorted(b.plus.items())), tuple(sorted(b.minus.items()))


def exp_set(pairs):
    return {(tuple(sorted(p.items())), tuple(sorted(m.items()))) for p, m in pairs}


def test_build():
    assert family_build(GenArith(4, 1, 1, 3)).gens == (4, 5, 6)
    assert family_build(Fib(ONE, 1, 4, 2, 3)).gens == (3, 8, 21)
    assert family_build(Lucas(ONE, 5, 1, 3)).gens == (11, 18, 29)
    assert family_build(AlmostArith(8, 1, 2, 3, 15)).gens == (8, 10, 12, 15)
    with pytest.raises(ValueError):
        family_build(GenArith(0, 1, 1, 3))


def test_gen_arith():
    v = family_ci(GenArith(4, 1, 1, 3))
    assert v.decision is CI and v.verdict.frobenius == 7 and v.verdict.method is Method.FAMILY_THEOREM
    assert {(b.degree) for b in v.verdict.generators} == {10, 12}
    assert family_ci(GenArith(5, 1, 1, 3)).decision is NOT
    assert family_ci(GenArith(4, 2, 1, 3, projective=True)).decision is NOT
    assert family_ci(GenArith(4, 1, 1, 3, projective=True)).decision is CI


def test_gen_arith_hypothesis_failure_is_reported():
    v = family_ci(GenArith(6, 1, 2, 3))
    assert v.decision is Decision.INCONCLUSIVE and v.matched_condition is None
    assert any(not h.holds for h in v.hypothesis_report)


def test_almost_arith():
    v = family_ci(AlmostArith(8, 1, 2, 3, 15))
    assert v.decision is CI and v.matched_condition == "condition 1" and v.verdict.frobenius == 29
    v = family_ci(AlmostArith(8, 1, 3, 3, 20))
    assert v.decision is CI and v.matched_condition == "condition 2" and v.verdict.frobenius == 37
    assert family_ci(AlmostArith(8, 1, 3, 4, 21)).decision is NOT


def test_fibonacci():
    v = family_ci(Fib(ONE, 1, 3, 2, 3))
    assert v.verdict.gens == (2, 5, 13) and v.matched_condition.startswith("(d)")
    v = family_ci(Fib(ONE, 1, 8, 2, 3))
    assert v.verdict.gens == (21, 55, 144) and v.matched_condition.startswith("(e)")
    assert {exps(b) for b in v.verdict.generators} == exp_set([({0: 48}, {2: 7}), ({1: 3}, {0: 1, 2: 1})])
    assert family_ci(Fib(ONE, 1, 9, 2, 3)).decision is NOT
    assert family_ci(Fib(ONE, 1, 8, 2, 4)).decision is NOT
    v = family_ci(Fib(ONE, 1, 4, 2, 3, projective=True))
    assert v.decision is CI
    assert {exps(b) for b in v.verdict.generators} == exp_set([({0: 7}, {2: 1, 3: 6}), ({1: 3}, {0: 1, 2: 1, 3: 1})])


def test_lucas():
    v = family_ci(Lucas(ONE, 5, 1, 3))
    assert v.decision is CI and v.matched_condition.startswith("(a)")
    v = family_ci(Lucas(ONE, 6, 2, 3))
    assert v.verdict.gens == (18, 47, 123) and v.matched_condition.startswith("(e)")
    assert family_ci(Lucas(ONE, 4, 2, 3)).decision is NOT
    assert family_ci(Lucas(ONE, 6, 2, 3, projective=True)).decision is CI


def test_lucas_h_dependence_example():
    # {L_5, L_5h+1, L_5h+2}: CI for h = 1, 3 and not for h = 2, 4
    from toric_ci.arith import lucas

    for h, want in ((1, CI), (2, NOT), (3, CI), (4, NOT)):
        A = [lucas(ONE, 5), lucas(ONE, 5 * h + 1), lucas(ONE, 5 * h + 2)]
        assert affine_ci(A).decision is want


def test_d3_member_examples():
    assert d3_member_fib(ONE, 1, 4, 2)
    assert not d3_member_fib(ONE, 1, 8, 2)
    assert d3_member_fib(PqParams(2, 3), 2, 7, 3)


@given(pq_pairs, st.integers(1, 3), st.integers(2, 10), st.integers(1, 6))
def test_d3_member_fib_matches_membership(pq, h, a, d):
    A = family_build(Fib(pq, h, a, d, 5)).gens
    assert d3_member_fib(pq, h, a, d) == (member(A[:2], A[2]) is not None)
    if d3_member_fib(pq, h, a, d):
        assert all(member(A[:2], x) is not None for x in A[2:])


@given(pq_pairs, st.integers(2, 10), st.integers(1, 6))
def test_d3_member_lucas_matches_membership(pq, a, d):
    A = family_build(Lucas(pq, a, d, 5)).gens
    assert d3_member_lucas(pq, a, d) == (member(A[:2], A[2]) is not None)
    if d3_member_lucas(pq, a, d):
        assert all(member(A[:2], x) is not None for x in A[2:])


def _check_generators(fv):
    v = fv.verdict
    P = v.variant == "projective"
    n = len(v.gens)
    for b in v.generators:
        assert b.is_homogeneous_for(v.gens, projective=P)
        assert not set(b.plus) & set(b.minus)
    affine = [b.dehomogenize(n) if P else b for b in v.generators]
    e = math.gcd(*v.gens)
    assert e * v.frobenius == sum(b.affine_value() for b in affine) - sum(v.gens)
    assert v.frobenius == frobenius([g // e for g in v.gens])


@given(
    st.one_of(
        st.builds(GenArith, st.integers(2, 12), st.integers(1, 3), st.integers(1, 6), st.integers(3, 5), st.booleans()),
        st.builds(AlmostArith, st.integers(2, 12), st.integers(1, 3), st.integers(1, 6), st.just(3), st.integers(1, 40), st.booleans()),
        st.builds(Fib, pq_pairs, st.integers(1, 3), st.integers(2, 8), st.integers(1, 5), st.integers(3, 4), st.booleans()),
        st.builds(Lucas, pq_pairs, st.integers(2, 8), st.integers(1, 5), st.integers(3, 4), st.booleans()),
    )
)
def test_family_matches_general_algorithm(params):
    fv = family_ci(params)
    assert (fv.matched_condition is not None) == (fv.decision is CI)
    if fv.decision is Decision.INCONCLUSIVE:
        return
    A = family_build(params)
    general = projective_ci(A) if params.projective else affine_ci(A)
    assert fv.decision is general.decision
    if fv.decision is CI and max(A.gens) // math.gcd(*A.gens) < 10**6:
        _check_generators(fv)


@pytest.mark.parametrize("a", range(2, 11))
@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("n", (3, 4, 5))
def test_fibonacci_verdict_independent_of_p_q_h(a, d, n):
    seen = set()
    for p, q in PQ_PAIRS:
        for h in (1, 2, 3):
            fv = family_ci(Fib(PqParams(p, q), h, a, d, n))
            if all(x.holds for x in fv.hypothesis_report):
                seen.add(fv.decision)
    assert len(seen) <= 1
