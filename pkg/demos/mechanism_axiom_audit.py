"""Audit proxy mechanisms against the four delegation axioms.

The ballot-containment mechanism passes proxy availability, independence
of irrelevant proxies, proxy monotonicity, and zero regret at every desk
scale bound.  Each of its neighbours trades exactly one axiom away, and
the checkers hand back a concrete counterexample profile when they fail.
"""

from proxyvote.axioms import check_iip, check_pa, check_pm, check_zr
from proxyvote.mechanisms import (
    SUBSET,
    SUBSET_IF_ALL_LINEAR_AGREE,
    SUBSET_LINEAR_STRICT,
    TRIV,
    UNIV,
    MechanismSpec,
)

CHECKS = (
    ("proxy availability", check_pa),
    ("independence of irrelevant proxies", check_iip),
    ("proxy monotonicity", check_pm),
    ("zero regret", check_zr),
)

N, M = 3, 3


def audit(kind):
    g = MechanismSpec(kind)
    print(f"mechanism {kind!r} at n={N}, m={M}")
    for label, check in CHECKS:
        report = check(g, N, M)
        print(f"  {label:36s} {report.verdict.upper()}")
        if not report.passed():
            w = report.witness
            keys = ", ".join(sorted(k for k in w if k not in ("m", "n", "mechanism")))
            print(f"    witness fields: {keys}")
    print()


def main():
    for kind in (SUBSET, TRIV, UNIV, SUBSET_LINEAR_STRICT,
                 SUBSET_IF_ALL_LINEAR_AGREE):
        audit(kind)


if __name__ == "__main__":
    main()
