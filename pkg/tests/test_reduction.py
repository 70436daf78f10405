import itertools
import math
import random

import pytest
from hypothesis import assume, given, strategies as st

from toric_ci.reduction import affine_ci, affine_reduce, generators_from_trace, projective_ci
from toric_ci.semigroup import b_index, frobenius, member
from toric_ci.verdict import Decision, Method, Remove, Scale

small_sets = st.lists(st.integers(2, 30), min_size=2, max_size=4)


@pytest.mark.parametrize(
    "gens,decision",
    [
        ((11, 18, 29), Decision.CI),
        ((11, 199, 322), Decision.NOT_CI),
        ((11, 2207, 3571), Decision.CI),
        ((11, 24476, 39603), Decision.NOT_CI),
        ((4, 6, 9), Decision.CI),
        ((3, 5, 7), Decision.NOT_CI),
    ],
)
def test_known_affine_verdicts(gens, decision):
    assert affine_ci(gens).decision is decision


def test_lucas_triple_generators_and_frobenius():
    v = affine_ci([11, 18, 29])
    assert v.method is Method.EMPTY_REDUCTION
    assert len(v.generators) == 2 and v.frobenius == 169
    assert {b.degree for b in v.generators} == {29, 198}


def test_three_element_residual_is_prop_n3():
    v = affine_ci([3, 5, 7])
    assert v.method is Method.PROP_N3 and v.trace.residual == (3, 5, 7)


def test_projective_witness():
    assert affine_ci([4, 9, 10]).decision is Decision.CI
    assert projective_ci([4, 9, 10]).decision is Decision.NOT_CI


def test_projective_known():
    v = projective_ci([2, 3])
    assert v.decision is Decision.CI and v.generators[0].degree == (6, 3)
    assert projective_ci([3, 5, 7]).decision is Decision.NOT_CI
    assert projective_ci([4, 5, 6]).decision is Decision.CI


def test_duplicates_removed_with_unit_binomial():
    t = affine_reduce([6, 6, 10, 15])
    first = t.steps[0]
    assert isinstance(first, Remove) and first.index == 1 and first.certificate.coeffs == {0: 1}
    assert affine_ci([6, 6, 10, 15]).decision is affine_ci([6, 10, 15]).decision


def _check_ci(v):
    gens = v.gens
    n = len(gens)
    assert len(v.generators) == n - 1
    total = 0
    for b in v.generators:
        assert b.is_homogeneous_for(gens, projective=v.variant == "projective")
        assert not set(b.plus) & set(b.minus)
        total += (b.dehomogenize(n) if v.variant == "projective" else b).affine_value()
    e = math.gcd(*gens)
    assert e * v.frobenius == total - sum(gens)
    assert v.frobenius == frobenius([g // e for g in gens])


@given(small_sets)
def test_ci_outputs_are_consistent(gens):
    assume(len(set(gens)) == len(gens))
    for v in (affine_ci(gens), projective_ci(gens)):
        if v.decision is Decision.CI and v.generators is not None:
            _check_ci(v)


@given(small_sets, st.sampled_from([2, 3, 5]))
def test_scale_invariance(gens, c):
    assert affine_ci(gens).decision is affine_ci([c * g for g in gens]).decision
    assert projective_ci(gens).decision is projective_ci([c * g for g in gens]).decision


@given(small_sets, st.randoms())
def test_permutation_invariance(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert affine_ci(gens).decision is affine_ci(shuffled).decision
    assert projective_ci(gens).decision is projective_ci(shuffled).decision


@given(small_sets)
def test_residual_is_a_fixpoint(gens):
    t = affine_reduce(gens)
    t.replay()
    R = list(t.residual)
    if R:
        for i, r in enumerate(R):
            others = R[:i] + R[i + 1 :]
            assert b_index(R, i) == 1
            assert member(others, r) is None


def _random_order_residual(gens, rnd):
    """Apply Scale/Remove in a random order until stuck; return the residual multiset."""
    live = list(gens)
    while len(live) > 1:
        moves = []
        for i, v in enumerate(live):
            others = live[:i] + live[i + 1 :]
            B = math.gcd(*others) // math.gcd(*live)
            if B > 1:
                moves.append(("scale", i, B))
            if member(others, v) is not None:
                moves.append(("remove", i, None))
        if not moves:
            return sorted(live)
        op, i, B = rnd.choice(moves)
        if op == "scale":
            live[i] *= B
        else:
            live.pop(i)
    return []


@given(small_sets, st.randoms())
def test_residual_independent_of_step_order(gens, rnd):
    t = affine_reduce(gens)
    assert sorted(t.residual) == _random_order_residual(gens, rnd)


@given(small_sets)
def test_projective_ci_implies_affine_ci(gens):
    if projective_ci(gens).decision is Decision.CI:
        assert affine_ci(gens).decision is Decision.CI


def test_generators_follow_scale_factors():
    t = affine_reduce([4, 6, 9])
    assert any(isinstance(s, Scale) for s in t.steps)
    gens = generators_from_trace(t)
    assert all(b.is_homogeneous_for((4, 6, 9)) for b in gens)
