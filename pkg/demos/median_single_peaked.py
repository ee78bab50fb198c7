"""Median rule: immune to ballot lies, open to report games.

On a single-peaked domain the phantom-median rule admits no useful
linear-ballot misreport at desk scale, searched exhaustively.  With
proxies the report does double duty: it is also what the containment
mechanism reads when deciding who may delegate to whom.  A voter whose
sincere report extends nobody's partial ballot can switch to one that
extends everybody's, collect all the delegations, and drag the median
to her side, even though every ballot in sight stays single peaked.
"""

from proxyvote.election import MedianRule, build_delegation_graph, resolve_gurus
from proxyvote.manipulation import construct_thm6, find_gs
from proxyvote.mechanisms import SUBSET, MechanismSpec
from proxyvote.orders import LinearOrder

ALT = "abc"
AXIS = (0, 1, 2)


def word(order):
    return "".join(ALT[a] for a in order.ranking)


def main():
    rule = MedianRule(axis=AXIS, phantom_peaks=(0, 0))

    hit = find_gs(rule, 3, 3, domain=("single_peaked", AXIS))
    print(f"axis a-b-c, phantoms at a: linear-ballot manipulation search -> {hit}")

    inst = construct_thm6(3, rule)
    g = MechanismSpec(SUBSET)
    i = inst.manipulator
    print(f"\npartial-report instance, manipulator voter {i}:")
    for tag, p_i, d_i in (("sincere", inst.profile.P[i], inst.profile.D[i]),
                          ("deviant", inst.deviant_p, inst.deviant_d)):
        P = list(inst.profile.P)
        D = list(inst.profile.D)
        P[i], D[i] = p_i, d_i
        pvp = type(inst.profile)(tuple(P), inst.profile.S, tuple(D))
        assign = resolve_gurus(build_delegation_graph(g, pvp), pvp)
        edges = sorted(f"{ALT[x]}>{ALT[y]}" for x, y in p_i.edges)
        casts = " ".join(word(b) for b in assign.cast)
        w = rule.winner(assign.cast)
        cyc = f", cycle {sorted(assign.cycle_members)}" if assign.cycle_members else ""
        print(f"  {tag}: reports {{{', '.join(edges)}}}, gurus {list(assign.guru)}"
              f"{cyc}, casts {casts}, median {ALT[w]}")
    print(f"  true preference has {ALT[inst.winner_deviant]} over"
          f" {ALT[inst.winner_truthful]}: gain confirmed {inst.verify(rule, g)}")


if __name__ == "__main__":
    main()
