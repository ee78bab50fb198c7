"""No positional scoring rule is addition monotonic with proxies.

Voter 0 holds an empty ballot, so the containment mechanism lets her
delegate to anyone; her proxy ranking sends the vote to a b>a>c voter.
Committing to the single comparison a>b, a statement FOR the current
winner a, shrinks her permitted proxies to the c>a>b camp, and the
filler seats are tuned so that one switched cast flips the outcome
from a to c.  Shown here for Borda at 14 voters, then for all four
parity and tiebreak branches across Borda, plurality, and veto.
"""

from collections import Counter

from proxyvote.election import borda, build_delegation_graph, plurality, resolve_gurus, veto
from proxyvote.manipulation import construct_thm3
from proxyvote.mechanisms import SUBSET, MechanismSpec
from proxyvote.orders import LinearOrder

ALT = "abc"


def score_table(rule, casts):
    scores = Counter()
    for b in casts:
        for pos, alt in enumerate(b.ranking):
            scores[alt] += rule.weights[pos]
    return [scores[a] for a in range(3)]


def casts_of(pvp):
    g = MechanismSpec(SUBSET)
    return resolve_gurus(build_delegation_graph(g, pvp), pvp).cast


def main():
    rule = borda(3, LinearOrder((0, 1, 2)))
    built = construct_thm3(14, rule)

    print("Borda, 14 voters, branch", built.branch)
    for tag, pvp in (("sincere", built.sincere), ("after adding a>b", built.deviant)):
        casts = casts_of(pvp)
        counts = Counter("".join(ALT[a] for a in b.ranking) for b in casts)
        s = score_table(rule, casts)
        shape = ", ".join(f"{c}x {w}" for w, c in sorted(counts.items()))
        print(f"  {tag}: casts {shape}")
        print(f"    scores a={s[0]} b={s[1]} c={s[2]}")
    print(f"  winner moves {ALT[built.winners[0]]} -> {ALT[built.winners[1]]}\n")

    rules = (("borda", borda), ("plurality", plurality), ("veto", veto))
    print("all branches:")
    for name, make in rules:
        for tb_word, tb in (("abc", LinearOrder((0, 1, 2))),
                            ("cab", LinearOrder((2, 0, 1)))):
            r = make(3, tb)
            for n in (14, 15):
                b = construct_thm3(n, r)
                print(f"  {name:9s} n={n} tiebreak {tb_word}: branch {b.branch:7s}"
                      f" winners {ALT[b.winners[0]]} -> {ALT[b.winners[1]]}")


if __name__ == "__main__":
    main()
