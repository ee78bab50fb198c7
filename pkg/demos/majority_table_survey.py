"""Survey every resolute rule at three voters, two alternatives.

With two alternatives there are 8 linear profiles, so exactly 256 rules,
each a lookup table from profiles to winners.  Under the containment
mechanism, demanding proxy vote anonymity, neutrality, and both
monotonicity directions leaves a single survivor, and its table is
pointwise equal to majority rule.  Under two alternatives no strictly
partial ballot exists, so the finding holds for every proxy mechanism.
"""

import itertools

from proxyvote.axioms import (
    check_pv_anonymity,
    check_pv_neutrality,
    check_pvam,
    check_pvdm,
)
from proxyvote.cli import TableRule
from proxyvote.election import MajorityRule
from proxyvote.mechanisms import SUBSET, MechanismSpec
from proxyvote.orders import enumerate_linear_orders

N, M = 3, 2


def main():
    orders = enumerate_linear_orders(M)
    profiles = list(itertools.product(orders, repeat=N))
    g = MechanismSpec(SUBSET)
    checks = (
        ("pvam", lambda f: check_pvam(f, g, N, M)),
        ("pvdm", lambda f: check_pvdm(f, g, N, M)),
        ("anonymity", lambda f: check_pv_anonymity(f, g, N, M, strategy="direct")),
        ("neutrality", lambda f: check_pv_neutrality(f, g, N, M, strategy="direct")),
    )

    survivors = []
    failures = {name: 0 for name, _ in checks}
    for code in range(2 ** len(profiles)):
        table = {p: (code >> k) & 1 for k, p in enumerate(profiles)}
        f = TableRule(table)
        for name, check in checks:
            if not check(f).passed():
                failures[name] += 1  # first failing axiom only
                break
        else:
            survivors.append((code, table))

    print(f"{len(profiles)} profiles, {2 ** len(profiles)} candidate rules")
    for name, _ in checks:
        print(f"  eliminated at {name}: {failures[name]}")
    print(f"  survivors: {len(survivors)}")

    (code, table), = survivors
    maj = MajorityRule()
    agreed = all(table[p] == maj.winner(list(p)) for p in profiles)
    print(f"survivor table code {code}, equals majority rule pointwise: {agreed}")
    for p in profiles:
        tops = "".join("ab"[b.top()] for b in p)
        print(f"  tops {tops} -> winner {'ab'[table[p]]}")


if __name__ == "__main__":
    main()
