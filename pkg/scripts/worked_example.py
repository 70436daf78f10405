"""Walk through the Lucas triples {L_5, L_5h+1, L_5h+2} for h = 1..4.

For each set, print the reduction trace and the affine verdict. For CI
sets, also print the generators and the Frobenius number, plus the oracle
count whenever the terms are small enough.
"""

from toric_ci.arith import PqParams, lucas
from toric_ci.oracle import OracleResourceError, oracle_ci
from toric_ci.reduction import affine_ci
from toric_ci.verdict import Scale


def describe(step):
    if isinstance(step, Scale):
        return f"scale x{step.index + 1} by {step.factor}"
    if step.certificate is None:
        return f"drop x{step.index + 1} (last one left)"
    combo = " + ".join(f"{c}*{step.certificate.gens[j]}" for j, c in step.certificate.coeffs.items())
    return f"remove x{step.index + 1}: {step.certificate.target} = {combo}"


def main():
    pq = PqParams(1, 1)
    for h in range(1, 5):
        A = [lucas(pq, 5), lucas(pq, 5 * h + 1), lucas(pq, 5 * h + 2)]
        v = affine_ci(A)
        print(f"h = {h}: A = {A}")
        for step in v.trace.steps:
            print(f"    {describe(step)}")
        print(f"    verdict {v.decision.value} ({v.method.value})")
        for b in v.generators or []:
            print(f"    generator {b}  degree {b.degree}")
        if v.frobenius is not None:
            print(f"    frobenius {v.frobenius}")
        if max(A) <= 5000:
            try:
                o = oracle_ci(A)
                print(f"    oracle: {o.oracle.mu_within_bound} minimal generators, verdict {o.decision.value}")
            except OracleResourceError as exc:
                print(f"    oracle skipped: {exc}")
        print()


if __name__ == "__main__":
    main()
