"""Exhaustive checks of the gcd, divisibility and ordering identities of
(p,q)-Fibonacci and Lucas sequences over small index ranges.

Each checker yields one ``Violation`` per failing instance, so an empty
result means the identity holds over the whole range.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .arith import PqParams, SeqKind, fib, gcd_closed, lucas

GCD_RANGE = range(1, 13)
DIVISIBLE_RANGE = range(1, 13)
SHIFT_RANGE = range(1, 11)
ORDER_RANGE = range(2, 11)


@dataclass(frozen=True)
class Violation:
    identity: str
    pq: tuple[int, int]
    args: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.identity} fails at (p,q)={self.pq} args={self.args} {self.detail}".rstrip()


def _seqs(pq: PqParams) -> dict[str, Callable[[int], int]]:
    return {"F": lambda k: fib(pq, k), "L": lambda k: lucas(pq, k)}


def gcd_rules(pq: PqParams) -> Iterator[Violation]:
    """Closed-form gcd of two terms against the direct gcd."""
    kinds = {"F": SeqKind.FIBONACCI, "L": SeqKind.LUCAS}
    seq = _seqs(pq)
    for (ka, kb), a, b in itertools.product((("F", "F"), ("L", "L"), ("L", "F")), GCD_RANGE, GCD_RANGE):
        want = math.gcd(seq[ka](a), seq[kb](b))
        got = gcd_closed(pq, kinds[ka], a, kinds[kb], b)
        if got != want:
            yield Violation(f"gcd({ka}_a,{kb}_b)", (pq.p, pq.q), (a, b), f"closed {got} direct {want}")


def divisibility(pq: PqParams) -> Iterator[Violation]:
    F, L = fib, lucas
    key = (pq.p, pq.q)
    for a, b in itertools.product(DIVISIBLE_RANGE, DIVISIBLE_RANGE):
        if b % a == 0 and F(pq, b) % F(pq, a):
            yield Violation("a|b => F_a|F_b", key, (a, b))
        exception = pq.p == 1 and b == 1 and a == 2
        if F(pq, b) % F(pq, a) == 0 and b % a and not exception:
            yield Violation("F_a|F_b => a|b", key, (a, b))
        if a >= 2:
            odd_quotient = b % a == 0 and (b // a) % 2 == 1
            if (L(pq, b) % L(pq, a) == 0) != odd_quotient:
                yield Violation("L_a|L_b <=> b/a odd", key, (a, b))
        if b % 2 == 0:
            if math.gcd(L(pq, a), L(pq, a + b)) != math.gcd(L(pq, a), F(pq, b)):
                yield Violation("gcd(L_a,L_a+b) = gcd(L_a,F_b)", key, (a, b))


def shift_identities(pq: PqParams) -> Iterator[Violation]:
    p, q = pq.p, pq.q
    F = _seqs(pq)["F"]
    L = _seqs(pq)["L"]
    key = (p, q)
    R = SHIFT_RANGE
    for name, U in _seqs(pq).items():
        for a, b in itertools.product(R, R):
            if U(a + b) != F(a) * U(b + 1) + q * F(a - 1) * U(b):
                yield Violation(f"addition ({name})", key, (a, b))
            if U(a + 2 * b) + (-1) ** b * q**b * U(a) != L(b) * U(a + b):
                yield Violation(f"L_b recurrence ({name})", key, (a, b))
        for a, b, c, d, e in itertools.product(R, R, R, R, R):
            if a + b != c + d or e > min(a, b, c, d):
                continue
            lhs = F(a) * U(b) - F(c) * U(d)
            rhs = (-1) ** e * q**e * (F(a - e) * U(b - e) - F(c - e) * U(d - e))
            if lhs != rhs:
                yield Violation(f"index shift ({name})", key, (a, b, c, d, e))
    for a in R:
        if not (L(a) * F(a) == F(2 * a) and L(a) == F(a + 1) + q * F(a - 1)):
            yield Violation("L_a = F_2a/F_a = F_a+1 + q F_a-1", key, (a,))


def orderings(pq: PqParams) -> Iterator[Violation]:
    q = pq.q
    F = _seqs(pq)["F"]
    L = _seqs(pq)["L"]
    key = (pq.p, pq.q)
    R = ORDER_RANGE
    for name, U in _seqs(pq).items():
        for a, b in itertools.product(R, R):
            lo, hi = q**b * U(a), U(a + 2 * b)
            equality_allowed = a == 0 and U(1) == 0 and b == 1
            if lo > hi or (lo == hi) != equality_allowed:
                yield Violation(f"q^b U_a <= U_a+2b ({name})", key, (a, b))
            if not U(a + b - 2) < F(a) * U(b) < U(a + b - 1):
                yield Violation(f"U_a+b-2 < F_a U_b < U_a+b-1 ({name})", key, (a, b))
        for a, b, c, d in itertools.product(R, R, R, R):
            if a + b < c + d and not F(a) * U(b) < F(c) * U(d):
                yield Violation(f"F_a U_b < F_c U_d ({name})", key, (a, b, c, d))
            if a < c and a < d and a + b == c + d:
                if (F(a) * U(b) < F(c) * U(d)) != (a % 2 == 0):
                    yield Violation(f"F_a U_b < F_c U_d iff a even ({name})", key, (a, b, c, d))
    for a in R:
        if not L(a) < F(a + 2):
            yield Violation("L_a < F_a+2", key, (a,))
    for a, b in itertools.product(R, R):
        if not L(a + b - 1) < L(a) * L(b) < min(L(a + b + 1), 2 * L(a + b)):
            yield Violation("L_a+b-1 < L_a L_b < min(L_a+b+1, 2 L_a+b)", key, (a, b))
        if a <= b:
            prod, target = L(a) * L(b), L(a + b)
            if (a % 2 == 1 and not prod < target) or (a % 2 == 0 and not prod > target):
                yield Violation("L_a L_b vs L_a+b by parity of a", key, (a, b))


SUITES = {
    "gcd rules": gcd_rules,
    "divisibility": divisibility,
    "shift identities": shift_identities,
    "orderings": orderings,
}


def all_violations(pq: PqParams) -> list[Violation]:
    return [v for check in SUITES.values() for v in check(pq)]
