"""Numerical semigroup primitives over a finite generator list.

Membership questions are answered with certificates (explicit coefficient
vectors) so that every "t is in the span" claim can be re-checked by the
caller. When the smallest generator is small enough we precompute Apéry
tables with the round-robin algorithm; otherwise we fall back to a
depth-first search whose coefficient ranges are cut down with the usual
lcm-exchange argument.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .arith import UsageError, gcd_many

# Above this modulus Apéry tables are not built (memory and pure-Python time).
APERY_LIMIT = 10**6

# m_index builds one table (or runs one Dijkstra) per call, so it can afford a
# larger modulus than the cached membership tables.
M_INDEX_LIMIT = 10**7

INF = float("inf")


@dataclass(frozen=True)
class CurveSpec:
    """The generator list A = (d_1, ..., d_n) of an affine monomial curve."""

    gens: tuple[int, ...]

    def __init__(self, gens: Iterable[int]):
        gens = tuple(int(g) for g in gens)
        if not gens:
            raise UsageError("a curve needs at least one generator")
        if any(g < 1 for g in gens):
            raise UsageError(f"generators must be positive integers, got {list(gens)}")
        object.__setattr__(self, "gens", gens)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __getitem__(self, i):
        return self.gens[i]

    @property
    def n(self) -> int:
        return len(self.gens)

    @property
    def has_duplicates(self) -> bool:
        return len(set(self.gens)) != len(self.gens)

    def values(self) -> tuple[int, ...]:
        """Distinct generator values in ascending order."""
        return tuple(sorted(set(self.gens)))

    def gcd(self) -> int:
        return gcd_many(self.gens)

    def without(self, i: int) -> "CurveSpec":
        return CurveSpec(self.gens[:i] + self.gens[i + 1 :])


def as_curve(A) -> CurveSpec:
    return A if isinstance(A, CurveSpec) else CurveSpec(A)


@dataclass(frozen=True)
class Certificate:
    """Witness that ``target`` equals sum(coeffs[j] * gens[j]).

    ``coeffs`` is keyed by position in ``gens``. The identity is checked when
    the certificate is built.
    """

    gens: tuple[int, ...]
    coeffs: Mapping[int, int]
    target: int

    def __post_init__(self):
        coeffs = {int(j): int(c) for j, c in self.coeffs.items() if c}
        if any(c < 0 for c in coeffs.values()):
            raise ValueError(f"negative coefficient in certificate {coeffs}")
        if any(not 0 <= j < len(self.gens) for j in coeffs):
            raise ValueError(f"certificate index out of range: {coeffs}")
        total = sum(c * self.gens[j] for j, c in coeffs.items())
        if total != self.target:
            raise ValueError(f"certificate sums to {total}, expected {self.target}")
        object.__setattr__(self, "coeffs", dict(sorted(coeffs.items())))

    @property
    def total(self) -> int:
        """Sum of the coefficients."""
        return sum(self.coeffs.values())

    def by_value(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for j, c in self.coeffs.items():
            out[self.gens[j]] = out.get(self.gens[j], 0) + c
        return out

    def uses(self, j: int) -> bool:
        return self.coeffs.get(j, 0) > 0


# ---------------------------------------------------------------------------
# Apéry tables
# ---------------------------------------------------------------------------


def _round_robin_add(table: list, m: int, a: int) -> list:
    """Return the Apéry table mod m after adjoining generator a (Böcker-Lipták)."""
    new = list(table)
    d = math.gcd(a, m)
    step = a % m
    period = m // d
    for p in range(d):
        best, r = INF, -1
        for s in range(p, m, d):
            if new[s] < best:
                best, r = new[s], s
        if best == INF:
            continue
        val = best
        for _ in range(period - 1):
            val += a
            r += step
            if r >= m:
                r -= m
            cur = new[r]
            if cur < val:
                val = cur
            else:
                new[r] = val
    return new


@lru_cache(maxsize=32)
def apery_prefix_tables(gens: tuple[int, ...]) -> tuple[tuple, ...]:
    """Apéry tables of every prefix of ``gens`` (ascending) modulo gens[0].

    Entry k is the table of <gens[0], ..., gens[k]>: the smallest element of
    that semigroup in each residue class, or INF if the class is empty.
    """
    m = gens[0]
    table = [INF] * m
    table[0] = 0
    out = [tuple(table)]
    for a in gens[1:]:
        table = _round_robin_add(table, m, a)
        out.append(tuple(table))
    return tuple(out)


def apery_set(A) -> list[int]:
    """Apéry set of <A> with respect to min(A) (gcd(A) must be 1)."""
    vals = as_curve(A).values()
    if gcd_many(vals) != 1:
        raise UsageError(f"Apéry set needs gcd 1, got gcd {gcd_many(vals)}")
    if vals[0] > APERY_LIMIT:
        raise UsageError(f"modulus {vals[0]} exceeds APERY_LIMIT={APERY_LIMIT}")
    return list(apery_prefix_tables(vals)[-1])


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


def _two_gen_max_y(t: int, u: int, v: int) -> tuple[int, int] | None:
    """Solve t = x*u + y*v over N with y as large as possible."""
    c = math.gcd(u, v)
    if t % c:
        return None
    uc, vc, tc = u // c, v // c, t // c
    y = (tc * pow(vc, -1, uc)) % uc if uc > 1 else 0
    if y * v > t:
        return None
    y += ((t - y * v) // (v * uc)) * uc
    return (t - y * v) // u, y


def _member_values(vals: tuple[int, ...], t: int) -> dict[int, int] | None:
    """Representation of t over the ascending distinct values ``vals``."""
    if t == 0:
        return {}
    vals = tuple(v for v in vals if v <= t)
    if not vals:
        return None
    g = gcd_many(vals)
    if t % g:
        return None
    if g > 1:
        sol = _member_values(tuple(v // g for v in vals), t // g)
        return None if sol is None else {v * g: c for v, c in sol.items()}

    m = vals[0]
    tables = apery_prefix_tables(vals) if m <= APERY_LIMIT else None
    if tables is not None and t < tables[-1][t % m]:
        return None

    failed: set[tuple[int, int]] = set()

    def search(k: int, r: int) -> dict[int, int] | None:
        if r == 0:
            return {}
        if k == 0:
            return {vals[0]: r // m} if r % m == 0 else None
        if k == 1:
            sol = _two_gen_max_y(r, m, vals[1])
            return None if sol is None else {vals[0]: sol[0], vals[1]: sol[1]}
        if (k, r) in failed:
            return None
        a = vals[k]
        top = r // a
        if tables is not None:
            below = tables[k - 1]
            for c in range(top, -1, -1):
                rest = r - c * a
                if rest >= below[rest % m]:
                    sub = search(k - 1, rest)
                    if sub is not None:
                        sub[a] = c
                        return sub
        else:
            # if c works then so does c - L (L*a is a multiple of m), so some
            # c in [0, L) works whenever any does
            window = m // math.gcd(m, a)
            for c in range(min(top, window - 1), -1, -1):
                sub = search(k - 1, r - c * a)
                if sub is not None:
                    sub[a] = c
                    return sub
        failed.add((k, r))
        return None

    return search(len(vals) - 1, t)


def _index_map(A: CurveSpec, exclude: int | None = None) -> dict[int, int]:
    """First position of each value in A, optionally skipping one position."""
    pos: dict[int, int] = {}
    for j, v in enumerate(A.gens):
        if j != exclude and v not in pos:
            pos[v] = j
    return pos


def _certificate(A: CurveSpec, counts: dict[int, int], t: int, exclude=None) -> Certificate:
    pos = _index_map(A, exclude)
    return Certificate(A.gens, {pos[v]: c for v, c in counts.items() if c}, t)


def member(A, t: int, exclude: int | None = None) -> Certificate | None:
    """Certificate that t lies in the N-span of A, or None.

    With ``exclude`` set, the generator at that position is not used (this is
    how "d_i in the span of the others" is asked). Certificates index into
    ``A.gens``.
    """
    A = as_curve(A)
    if t < 0:
        raise UsageError(f"membership target must be nonnegative, got {t}")
    pos = _index_map(A, exclude)
    counts = _member_values(tuple(sorted(pos)), t)
    if counts is None:
        return None
    return _certificate(A, counts, t, exclude)


def member_bounded(A, t: int, B: int, exclude: int | None = None) -> Certificate | None:
    """Certificate for t with coefficient total at most B, or None.

    Depth-first over generators in descending value, largest counts first,
    pruned whenever the residual cannot be covered by the remaining budget.
    """
    A = as_curve(A)
    if t < 0 or B < 0:
        raise UsageError(f"member_bounded needs t, B >= 0, got t={t}, B={B}")
    pos = _index_map(A, exclude)
    vals = tuple(sorted((v for v in pos if v <= t), reverse=True))
    failed: set[tuple[int, int, int]] = set()

    def search(k: int, r: int, budget: int) -> dict[int, int] | None:
        if r == 0:
            return {}
        if k == len(vals) or budget == 0 or r > budget * vals[k]:
            return None
        if (k, r, budget) in failed:
            return None
        a = vals[k]
        for c in range(min(r // a, budget), -1, -1):
            sub = search(k + 1, r - c * a, budget - c)
            if sub is not None:
                if c:
                    sub[a] = c
                return sub
        failed.add((k, r, budget))
        return None

    counts = search(0, t, B)
    if counts is None:
        return None
    return _certificate(A, counts, t, exclude)


# ---------------------------------------------------------------------------
# indices B_i and m_i
# ---------------------------------------------------------------------------


def b_index(A, i: int) -> int:
    """gcd of the generators other than position i, over gcd of all of them."""
    A = as_curve(A)
    if A.n < 2:
        raise UsageError("b_index needs at least two generators")
    return gcd_many(A.without(i).gens) // A.gcd()


def _first_multiple_in_span(others: tuple[int, ...], d: int, bound: int) -> int | None:
    """Smallest b in [1, bound] with b*d in <others>, via an Apéry table."""
    g = gcd_many(others)
    vals = tuple(sorted({v // g for v in others}))
    table = apery_prefix_tables(vals)[-1]
    m = vals[0]
    step = g // math.gcd(g, d)
    for b in range(step, bound + 1, step):
        v = b * d // g
        if v >= table[v % m]:
            return b
    return None


def _shortest_return(others: tuple[int, ...], d: int) -> int:
    """Smallest positive element of <others> divisible by d (Dijkstra mod d)."""
    dist: dict[int, int] = {}
    heap = [(v, v % d) for v in set(others)]
    heapq.heapify(heap)
    while heap:
        val, r = heapq.heappop(heap)
        if r in dist:
            continue
        dist[r] = val
        if r == 0:
            return val
        for v in others:
            s = (r + v) % d
            if s not in dist:
                heapq.heappush(heap, (val + v, s))
    raise AssertionError("unreachable: some multiple of d always lies in the span")


def m_index(A, i: int) -> tuple[int, Certificate]:
    """Least b >= 1 with b*d_i in the N-span of the other generators."""
    A = as_curve(A)
    if A.n < 2:
        raise UsageError("m_index needs at least two generators")
    d = A.gens[i]
    others = tuple(sorted(set(A.without(i).gens)))
    if d in others:
        return 1, member(A, d, exclude=i)
    # b*d_i = lcm(d_i, d_j) is always reachable
    bound = min(v // math.gcd(v, d) for v in others)
    g = gcd_many(others)
    modulus = others[0] // g

    if modulus <= M_INDEX_LIMIT and modulus <= d:
        b = _first_multiple_in_span(others, d, bound)
    elif d <= M_INDEX_LIMIT:
        b = _shortest_return(others, d) // d
    elif modulus <= M_INDEX_LIMIT:
        b = _first_multiple_in_span(others, d, bound)
    else:
        b = next(b for b in range(1, bound + 1) if member(A, b * d, exclude=i) is not None)
    cert = member(A, b * d, exclude=i)
    assert cert is not None
    return b, cert


# ---------------------------------------------------------------------------
# Frobenius number and minimal generators
# ---------------------------------------------------------------------------


def frobenius(A) -> int:
    """Largest integer outside <A>; -1 when 1 is a generator."""
    vals = as_curve(A).values()
    if gcd_many(vals) != 1:
        raise UsageError(f"Frobenius number needs gcd 1, got gcd {gcd_many(vals)}")
    if vals[0] == 1:
        return -1
    return max(apery_set(vals)) - vals[0]


def minimal_generators(A) -> CurveSpec:
    """The minimal generating subset of <A>, ascending."""
    vals = as_curve(A).values()
    keep = [v for k, v in enumerate(vals) if _member_values(vals[:k], v) is None]
    return CurveSpec(keep)


def is_minimally_generated(A) -> bool:
    A = as_curve(A)
    return not A.has_duplicates and minimal_generators(A).values() == A.values()


def in_span(values: Sequence[int], t: int) -> bool:
    return _member_values(tuple(sorted(set(values))), t) is not None
