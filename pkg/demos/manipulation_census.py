"""Count manipulation opportunities for small scoring elections.

Three searches at three voters, three alternatives:

  gs   a voter swaps her linear ballot and prefers the new winner
  iia  a gs deviation that also keeps the two winners' relative order
       in both of her ballots
  pc   a voter swaps only her proxy ranking under the containment
       mechanism and her partial ballot ranks the new winner higher

Every gs hit here is already order preserving, so the first two counts
agree rule by rule.  Proxy-choice manipulation needs partial ballots to
bite: Borda and plurality admit none at this size, while veto has 450,
the first of which works by closing a delegation cycle.
"""

from proxyvote.election import (
    borda,
    build_delegation_graph,
    make_profile,
    plurality,
    resolve_gurus,
    veto,
)
from proxyvote.manipulation import find_gs, find_iia, find_pc
from proxyvote.mechanisms import SUBSET, MechanismSpec
from proxyvote.orders import LinearOrder

ALT = "abc"
N, M = 3, 3


def word(order):
    return "".join(ALT[a] for a in order.ranking)


def main():
    tb = LinearOrder((0, 1, 2))
    g = MechanismSpec(SUBSET)

    print(f"counts at n={N}, m={M}")
    print(f"  {'rule':9s} {'gs':>5s} {'iia':>5s} {'pc':>5s}")
    for name, make in (("borda", borda), ("plurality", plurality), ("veto", veto)):
        f = make(M, tb)
        gs = find_gs(f, N, M, count=True)
        iia = find_iia(f, N, M, count=True)
        pc = find_pc(f, g, N, M, count=True)
        print(f"  {name:9s} {gs:5d} {iia:5d} {pc:5d}")

    f = veto(M, tb)
    inst = find_pc(f, g, N, M)
    print("\nfirst veto proxy-choice instance:")
    print(f"  manipulator: voter {inst.manipulator}")
    for i, p in enumerate(inst.profile.P):
        edges = sorted(f"{ALT[x]}>{ALT[y]}" for x, y in p.edges)
        print(f"  voter {i}: ballot {{{', '.join(edges)}}}, default {word(inst.profile.D[i])}")
    i = inst.manipulator
    for tag, s_i, w in (("sincere", inst.profile.S[i], inst.winner_truthful),
                        ("deviant", inst.deviant_s, inst.winner_deviant)):
        S = list(inst.profile.S)
        S[i] = s_i
        pvp = make_profile(inst.profile.P, S, inst.profile.D)
        assign = resolve_gurus(build_delegation_graph(g, pvp), pvp)
        casts = " ".join(word(b) for b in assign.cast)
        cyc = f", cycle {sorted(assign.cycle_members)}" if assign.cycle_members else ""
        print(f"  {tag}: proxy ranking {list(s_i.ranking)}, gurus {list(assign.guru)}"
              f"{cyc}, casts {casts}, winner {ALT[w]}")
    print(f"  voter {i} ranks {ALT[inst.winner_deviant]} over"
          f" {ALT[inst.winner_truthful]}, replay confirms: {inst.verify(f, g)}")


if __name__ == "__main__":
    main()
