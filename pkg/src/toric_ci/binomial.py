"""Binomials x^plus - x^minus with their A-degree (affine) or A*-degree (projective)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

Degree = Union[int, tuple[int, int]]


def _clean(exps: Mapping[int, int]) -> dict[int, int]:
    out = {int(i): int(e) for i, e in exps.items() if e}
    if any(e < 0 for e in out.values()):
        raise ValueError(f"negative exponent in {exps}")
    return dict(sorted(out.items()))


def affine_degree(gens: Sequence[int], exps: Mapping[int, int]) -> int:
    return sum(e * gens[i] for i, e in exps.items())


def projective_vectors(gens: Sequence[int]) -> list[tuple[int, int]]:
    """a_i = (d_i, d - d_i) for each generator, then a_{n+1} = (0, d)."""
    d = max(gens)
    return [(g, d - g) for g in gens] + [(0, d)]


def projective_degree(gens: Sequence[int], exps: Mapping[int, int]) -> tuple[int, int]:
    vecs = projective_vectors(gens)
    return (
        sum(e * vecs[i][0] for i, e in exps.items()),
        sum(e * vecs[i][1] for i, e in exps.items()),
    )


@dataclass(frozen=True)
class Binomial:
    """x^plus - x^minus; variable indices are 0-based positions in the input.

    In the projective setting position n (one past the last generator) is the
    homogenizing variable.
    """

    plus: Mapping[int, int]
    minus: Mapping[int, int]
    degree: Degree

    def __post_init__(self):
        plus, minus = _clean(self.plus), _clean(self.minus)
        if set(plus) & set(minus):
            raise ValueError(f"supports overlap: {plus} vs {minus}")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @classmethod
    def affine(cls, gens: Sequence[int], plus, minus) -> "Binomial":
        deg = affine_degree(gens, plus)
        if affine_degree(gens, minus) != deg:
            raise ValueError(f"not A-homogeneous: {plus} vs {minus} over {list(gens)}")
        return cls(plus, minus, deg)

    @classmethod
    def projective(cls, gens: Sequence[int], plus, minus) -> "Binomial":
        deg = projective_degree(gens, plus)
        if projective_degree(gens, minus) != deg:
            raise ValueError(f"not homogeneous: {plus} vs {minus} over {list(gens)}")
        return cls(plus, minus, deg)

    def is_homogeneous_for(self, gens: Sequence[int], projective: bool = False) -> bool:
        fn = projective_degree if projective else affine_degree
        return fn(gens, self.plus) == fn(gens, self.minus) == self.degree

    def dehomogenize(self, n: int) -> "Binomial":
        """Set the homogenizing variable x_{n+1} to 1; the degree keeps its first coordinate."""
        plus = {i: e for i, e in self.plus.items() if i != n}
        minus = {i: e for i, e in self.minus.items() if i != n}
        deg = self.degree[0] if isinstance(self.degree, tuple) else self.degree
        return Binomial(plus, minus, deg)

    def affine_value(self) -> int:
        return self.degree[0] if isinstance(self.degree, tuple) else self.degree

    def __str__(self):
        return f"{_monomial(self.plus)} - {_monomial(self.minus)}"

    def to_json(self) -> dict:
        deg = self.degree
        return {
            "plus": {f"x{i + 1}": str(e) for i, e in self.plus.items()},
            "minus": {f"x{i + 1}": str(e) for i, e in self.minus.items()},
            "degree": [str(c) for c in deg] if isinstance(deg, tuple) else str(deg),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "Binomial":
        def exps(m):
            return {int(k[1:]) - 1: int(v) for k, v in m.items()}

        deg = doc["degree"]
        deg = tuple(int(c) for c in deg) if isinstance(deg, list) else int(deg)
        return cls(exps(doc["plus"]), exps(doc["minus"]), deg)


def _monomial(exps: Mapping[int, int]) -> str:
    if not exps:
        return "1"
    return "*".join(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}" for i, e in exps.items())
