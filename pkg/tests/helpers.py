"""Independent oracles shared by the test modules.

Everything here recomputes results from first principles (reachability,
permutation filtering, direct position counting) so library outputs are
checked against a second, unrelated code path.
"""

from __future__ import annotations

import itertools

from proxyvote.orders import LinearOrder, PartialOrder


def reachability_closure(edges, m):
    """Closure by graph reachability; returns None when a cycle appears."""
    adj = {a: set() for a in range(m)}
    for a, b in edges:
        adj[a].add(b)
    closed = set()
    for src in range(m):
        seen = set()
        stack = [src]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if src in seen:
            return None
        closed |= {(src, t) for t in seen}
    return frozenset(closed)


def all_pair_assignments(m, states=3):
    """Edge sets over unordered pairs; states=3 keeps them antisymmetric,
    states=4 adds the both-edges (conflicting) assignment."""
    pairs = list(itertools.combinations(range(m), 2))
    for combo in itertools.product(range(states), repeat=len(pairs)):
        edges = set()
        for (a, b), s in zip(pairs, combo):
            if s in (1, 3):
                edges.add((a, b))
            if s in (2, 3):
                edges.add((b, a))
        yield edges


def extensions_by_filter(p: PartialOrder):
    """Linear extensions as a plain filter over all m! permutations."""
    out = []
    for perm in itertools.permutations(range(p.m)):
        lin = LinearOrder(perm)
        if p.edges <= lin.edge_set():
            out.append(lin)
    return out


def positional_scores(weights, ballots):
    """Direct position count, independent of the scoring implementation."""
    m = len(weights)
    scores = [0] * m
    for b in ballots:
        for pos, alt in enumerate(b.ranking):
            scores[alt] += weights[pos]
    return scores
