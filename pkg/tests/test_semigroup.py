import math

import pytest
from hypothesis import assume, given, strategies as st

from toric_ci.arith import UsageError
from toric_ci.semigroup import (
    Certificate,
    CurveSpec,
    apery_set,
    b_index,
    frobenius,
    is_minimally_generated,
    m_index,
    member,
    member_bounded,
    minimal_generators,
)

small_sets = st.lists(st.integers(2, 40), min_size=2, max_size=5)


def gaps_frobenius(gens):
    """Largest integer missing from the span, by marking every reachable value."""
    top = (min(gens) - 1) * (max(gens) - 1) + max(gens)
    reach = [False] * (top + 1)
    reach[0] = True
    for t in range(1, top + 1):
        reach[t] = any(t >= g and reach[t - g] for g in gens)
    missing = [t for t in range(top + 1) if not reach[t]]
    return missing[-1] if missing else -1


def test_b_index():
    assert b_index([4, 6, 9], 0) == 3
    assert b_index([4, 6, 9], 2) == 2
    assert b_index([2, 3], 0) == 3
    with pytest.raises(UsageError):
        b_index([5], 0)


def test_member_examples():
    c = member([11, 18], 40)
    assert c is not None and c.target == 40
    assert member([3, 5, 7], 4) is None
    assert member([3, 5, 7], 0).coeffs == {}


def test_member_bounded_examples():
    c = member_bounded([4, 6], 10, 2)
    assert c is not None and c.total <= 2
    assert member_bounded([4, 10], 18, 2) is None
    assert member_bounded([4, 10], 18, 3) is not None
    assert member_bounded([7, 9], 0, 0).coeffs == {}


def test_m_index_examples():
    m, c = m_index([4, 6, 9], 0)
    assert m == 3 and c.target == 12 and 0 not in c.coeffs
    m, c = m_index([4, 6, 9], 2)
    assert m == 2 and c.target == 18
    assert m_index([2, 3], 0)[0] == 3


def test_frobenius_examples():
    assert frobenius([4, 5, 6]) == 7
    assert frobenius([2, 3]) == 1
    assert frobenius([8, 10, 12, 15]) == 29
    assert max(apery_set([8, 10, 12, 15])) == 37
    assert frobenius([1, 5]) == -1
    with pytest.raises(UsageError):
        frobenius([4, 6])


def test_minimal_generators_examples():
    assert minimal_generators([4, 6, 8, 9]).gens == (4, 6, 9)
    assert minimal_generators([2, 3]).gens == (2, 3)
    assert minimal_generators([4, 5, 6, 15]).gens == (4, 5, 6)


def test_certificate_checks_itself():
    with pytest.raises(Exception):
        Certificate((4, 6), {0: 1}, 7)


def test_curve_rejects_nonpositive():
    with pytest.raises(UsageError):
        CurveSpec([0, 3])


@given(small_sets, st.integers(0, 300))
def test_member_certificate_verifies(gens, t):
    c = member(gens, t)
    if c is not None:
        assert sum(a * gens[j] for j, a in c.coeffs.items()) == t


@given(small_sets, st.integers(0, 200), st.integers(0, 8))
def test_member_bounded_respects_bound(gens, t, B):
    c = member_bounded(gens, t, B)
    if c is not None:
        assert c.total <= B
        assert sum(a * gens[j] for j, a in c.coeffs.items()) == t
    if B >= t // min(gens) and member(gens, t) is not None:
        assert c is not None


@given(small_sets)
def test_frobenius_against_gap_enumeration(gens):
    assume(math.gcd(*gens) == 1)
    g = frobenius(gens)
    assert g == gaps_frobenius(gens)
    if g >= 0:
        assert member(gens, g) is None
    assert all(member(gens, t) is not None for t in range(g + 1, g + max(gens) + 1))


@given(small_sets, st.data())
def test_m_index_is_minimal(gens, data):
    assume(len(set(gens)) == len(gens))
    i = data.draw(st.integers(0, len(gens) - 1))
    m, c = m_index(gens, i)
    others = [g for j, g in enumerate(gens) if j != i]
    assert i not in c.coeffs and c.target == m * gens[i]
    assert member(others, m * gens[i]) is not None
    assert all(member(others, k * gens[i]) is None for k in range(1, m))


@given(small_sets, st.randoms())
def test_minimal_generators_idempotent_and_order_free(gens, rnd):
    mg = minimal_generators(gens)
    assert minimal_generators(mg).gens == mg.gens
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert sorted(minimal_generators(shuffled).gens) == sorted(mg.gens)


@given(st.integers(2, 25), st.integers(1, 3), st.integers(1, 8), st.integers(2, 8))
def test_generalized_arithmetic_minimal_iff_n_at_most_d1(d1, h, step, n):
    gens = [d1] + [h * d1 + k * step for k in range(1, n)]
    assume(math.gcd(*gens) == 1)
    assert is_minimally_generated(gens) == (n <= d1)
