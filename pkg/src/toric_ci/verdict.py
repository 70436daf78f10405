"""Reduction traces and CI verdicts shared by the deciders and the oracle."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .arith import gcd_many
from .binomial import Binomial
from .semigroup import Certificate, CurveSpec


class Decision(enum.Enum):
    CI = "ci"
    NOT_CI = "not_ci"
    INCONCLUSIVE = "inconclusive"


class Method(enum.Enum):
    EMPTY_REDUCTION = "empty_reduction"
    PROP_N3 = "prop_n3"
    NO_IC_LEMMA = "no_ic_lemma"
    N_MINUS_1_DISTINCT = "n_minus_1_distinct"
    ORACLE_COUNT = "oracle_count"
    FAMILY_THEOREM = "family_theorem"
    TABLE1_ALGORITHM = "table1_algorithm"


@dataclass(frozen=True)
class Scale:
    index: int
    factor: int

    def __post_init__(self):
        if self.factor < 2:
            raise ValueError(f"scale factor must be at least 2, got {self.factor}")

    def to_json(self):
        return {"op": "scale", "index": self.index + 1, "factor": str(self.factor)}


@dataclass(frozen=True)
class Remove:
    """Drop slot ``index``; ``certificate`` writes its current value over the live
    slots (None for the final lone generator, which needs no binomial)."""

    index: int
    certificate: Optional[Certificate]

    def to_json(self):
        cert = None
        if self.certificate is not None:
            cert = {f"x{j + 1}": str(c) for j, c in self.certificate.coeffs.items()}
        return {"op": "remove", "index": self.index + 1, "certificate": cert}


ReductionStep = Union[Scale, Remove]


@dataclass
class ReductionTrace:
    initial: CurveSpec
    steps: list = field(default_factory=list)
    residual_slots: tuple[int, ...] = ()
    residual_values: tuple[int, ...] = ()

    @property
    def residual(self) -> tuple[int, ...]:
        return self.residual_values

    @property
    def is_empty(self) -> bool:
        return not self.residual_slots

    def replay(self) -> dict[int, int]:
        """Re-run the steps from ``initial``; return {slot: value} of what is left.

        Every removal certificate is re-checked against the state at that step.
        """
        live = dict(enumerate(self.initial.gens))
        for step in self.steps:
            if isinstance(step, Scale):
                live[step.index] *= step.factor
                continue
            cert = step.certificate
            if cert is None:
                if set(live) != {step.index}:
                    raise ValueError("lone-generator removal with other slots alive")
            else:
                used = set(cert.coeffs)
                if step.index in used or not used <= set(live):
                    raise ValueError(f"certificate uses dead or removed slots: {step}")
                if any(cert.gens[j] != live[j] for j in used) or cert.target != live[step.index]:
                    raise ValueError(f"certificate does not match state at {step}")
            del live[step.index]
        return live

    def to_json(self):
        return [s.to_json() for s in self.steps]


@dataclass
class Verdict:
    decision: Decision
    method: Method
    variant: str  # "affine" or "projective"
    gens: tuple[int, ...]
    trace: Optional[ReductionTrace] = None
    generators: Optional[list[Binomial]] = None
    frobenius: Optional[int] = None
    oracle: Optional[object] = None  # OracleReport when the oracle was consulted
    notes: list[str] = field(default_factory=list)

    @property
    def is_ci(self) -> bool:
        return self.decision is Decision.CI

    @property
    def e(self) -> int:
        return gcd_many(self.gens)
