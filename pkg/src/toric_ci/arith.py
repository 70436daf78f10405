"""Exact integer helpers and (p,q)-Fibonacci / Lucas sequences.

Everything here works on Python ints, so terms with hundreds of digits are
fine. Nothing is ever approximated in floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable


class UsageError(ValueError):
    """Raised when an operation is called outside its domain."""


class SeqKind(enum.Enum):
    FIBONACCI = "fibonacci"
    LUCAS = "lucas"


@dataclass(frozen=True)
class PqParams:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise UsageError(f"p and q must be positive, got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise UsageError(f"p and q must be coprime, got p={self.p}, q={self.q}")


def gcd_many(values: Iterable[int]) -> int:
    values = list(values)
    if not values:
        raise UsageError("gcd_many needs at least one value")
    if any(v < 1 for v in values):
        raise UsageError(f"gcd_many expects positive integers, got {values}")
    return reduce(math.gcd, values)


def lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def val2(a: int) -> int:
    """2-adic valuation: the largest t with 2**t dividing a."""
    if a < 1:
        raise UsageError(f"val2 expects a positive integer, got {a}")
    return (a & -a).bit_length() - 1


@lru_cache(maxsize=None)
def _terms(p: int, q: int, kind: SeqKind, upto: int) -> tuple[int, ...]:
    x, y = (0, 1) if kind is SeqKind.FIBONACCI else (2, p)
    out = [x, y]
    while len(out) <= upto:
        x, y = y, p * y + q * x
        out.append(y)
    return tuple(out)


def seq_term(pq: PqParams, kind: SeqKind, k: int) -> int:
    """k-th term of the (p,q)-Fibonacci or (p,q)-Lucas sequence."""
    if k < 0:
        raise UsageError(f"sequence index must be nonnegative, got {k}")
    # cache whole prefixes in blocks of 64 so sweeps reuse them
    upto = (k // 64 + 1) * 64
    return _terms(pq.p, pq.q, kind, upto)[k]


def fib(pq: PqParams, k: int) -> int:
    return seq_term(pq, SeqKind.FIBONACCI, k)


def lucas(pq: PqParams, k: int) -> int:
    return seq_term(pq, SeqKind.LUCAS, k)


def gcd_closed(pq: PqParams, kind_a: SeqKind, a: int, kind_b: SeqKind, b: int) -> int:
    """gcd of two sequence terms from the closed-form case analysis.

    Only the closed form is evaluated; agreement with a direct gcd is a test
    matter. Mixed pairs are normalised to (Lucas, Fibonacci).
    """
    if a < 1 or b < 1:
        raise UsageError(f"gcd_closed expects positive indices, got a={a}, b={b}")
    if kind_a is SeqKind.FIBONACCI and kind_b is SeqKind.LUCAS:
        return gcd_closed(pq, kind_b, b, kind_a, a)

    d = math.gcd(a, b)
    p_odd, q_odd = pq.p % 2 == 1, pq.q % 2 == 1

    if kind_a is SeqKind.FIBONACCI:
        return fib(pq, d)

    if kind_b is SeqKind.LUCAS:
        if val2(a) == val2(b):
            return lucas(pq, d)
        if p_odd and q_odd and d % 3 == 0:
            return 2
        if not p_odd and q_odd:
            return 2
        return 1

    # gcd(L_a, F_b)
    if val2(a) < val2(b):
        return lucas(pq, d)
    if p_odd and q_odd and d % 3 == 0:
        return 2
    if not p_odd and b % 2 == 0 and q_odd:
        return 2
    return 1
