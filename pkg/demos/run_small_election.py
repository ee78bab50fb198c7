"""Walk through one small proxy election from ballots to winner.

Four voters, three alternatives (a, b, c).  Two voters submit strictly
partial ballots and end up delegating; the other two hold linear ballots
and keep their own votes.  A second scene puts two voters into a
delegation cycle so their default ballots get cast instead.
"""

from proxyvote.election import (
    borda,
    build_delegation_graph,
    make_profile,
    resolve_gurus,
)
from proxyvote.mechanisms import SUBSET, MechanismSpec
from proxyvote.orders import LinearOrder, transitive_closure

ALT = "abc"


def lin(word):
    return LinearOrder(tuple(ALT.index(ch) for ch in word))


def partial(*pairs):
    edges = ((ALT.index(x), ALT.index(y)) for x, y in pairs)
    return transitive_closure(edges, len(ALT))


def show(title, pvp, g, f):
    graph = build_delegation_graph(g, pvp)
    assign = resolve_gurus(graph, pvp)
    print(title)
    for i in range(pvp.n):
        ballot = sorted(f"{ALT[x]}>{ALT[y]}" for x, y in pvp.P[i].edges)
        hop = "keeps own vote" if graph.out[i] == i else f"delegates to voter {graph.out[i]}"
        casts = "".join(ALT[a] for a in assign.cast[i].ranking)
        print(f"  voter {i}: ballot {{{', '.join(ballot)}}}, {hop},"
              f" guru {assign.guru[i]}, casts {casts}")
    if assign.cycle_members:
        print(f"  cycle members {sorted(assign.cycle_members)} fall back on their defaults")
    print(f"  borda winner: {ALT[f.winner(assign.cast)]}")
    print()


def main():
    f = borda(3, lin("abc"))
    g = MechanismSpec(SUBSET)

    # scene 1: two partial ballots find gurus whose ballots extend them
    pvp = make_profile(
        P=[partial(("a", "b")), lin("abc").as_partial_order(),
           lin("cab").as_partial_order(), partial(("c", "b"))],
        S=[LinearOrder((2, 1, 0, 3)), LinearOrder((1, 0, 2, 3)),
           LinearOrder((2, 0, 1, 3)), LinearOrder((3, 2, 1, 0))],
        D=[lin("abc"), lin("abc"), lin("cab"), lin("cba")],
    )
    show("chain delegation", pvp, g, f)

    # scene 2: voters 1 and 2 share a strictly partial ballot, so each
    # permits the other; they form a 2-cycle and cast defaults
    pvp = make_profile(
        P=[lin("bac").as_partial_order(), partial(("a", "b")),
           partial(("a", "b")), lin("cba").as_partial_order()],
        S=[LinearOrder((0, 1, 2, 3)), LinearOrder((2, 0, 1, 3)),
           LinearOrder((1, 0, 2, 3)), LinearOrder((3, 0, 1, 2))],
        D=[lin("bac"), lin("acb"), lin("abc"), lin("cba")],
    )
    show("delegation cycle", pvp, g, f)


if __name__ == "__main__":
    main()
