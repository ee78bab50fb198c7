"""The proxy vote pipeline.

A profile bundles three things per voter: a partial-order ballot P_i, a
ranking S_i over voters (whom she most wants as a delegate), and a default
linear ballot D_i extending P_i.  A mechanism turns P into permitted-proxy
sets, each voter's out-edge goes to her S_i-best permitted proxy, and the
resulting functional graph resolves to one guru per voter.  Cycles of
length two or more fall back on defaults: every member keeps her own vote
and casts D_i.  A resolute rule then aggregates the ballots the gurus cast.

JSON forms:
  profile   {"m": int, "P": [[[a,b],...],...], "S": [[...],...], "D": [[...],...]}
  rule      {"type": "scoring", "weights": [...], "tiebreak": [...]}
            {"type": "majority"}
            {"type": "median", "axis": [...], "phantoms": [...]}
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .mechanisms import MechanismSpec, permitted_proxies
from .orders import (
    Axis,
    LinearOrder,
    PartialOrder,
    is_single_peaked_ballot,
    is_subset,
    linear_order_from_json,
    linear_order_to_json,
    partial_order_from_json,
    partial_order_to_json,
)


class ElectionError(ValueError):
    pass


class NotSinglePeaked(ElectionError):
    """A ballot handed to the median rule is not single-peaked on its axis."""


@dataclass(frozen=True)
class ProxyVoteProfile:
    """Per-voter triple (P_i, S_i, D_i); each P_i must be contained in D_i."""

    P: tuple
    S: tuple
    D: tuple

    def __post_init__(self):
        if not (len(self.P) == len(self.S) == len(self.D)):
            raise ElectionError("P, S, D must have one entry per voter")
        n = len(self.P)
        if n == 0:
            raise ElectionError("empty profile")
        m = self.P[0].m
        for i in range(n):
            if self.P[i].m != m:
                raise ElectionError(f"ballot {i} has wrong alternative count")
            if sorted(self.S[i].ranking) != list(range(n)):
                raise ElectionError(f"S[{i}] is not a ranking of the voters")
            if sorted(self.D[i].ranking) != list(range(m)):
                raise ElectionError(f"D[{i}] is not a ranking of the alternatives")
            if not self.P[i].edges <= self.D[i].edge_set():
                raise ElectionError(f"D[{i}] does not extend P[{i}]")

    @property
    def n(self) -> int:
        return len(self.P)

    @property
    def m(self) -> int:
        return self.P[0].m


def make_profile(
    P: Sequence[PartialOrder], S: Sequence[LinearOrder], D: Sequence[LinearOrder]
) -> ProxyVoteProfile:
    return ProxyVoteProfile(tuple(P), tuple(S), tuple(D))


@dataclass(frozen=True)
class DelegationGraph:
    """Functional graph: out[i] is whom voter i hands her vote to (i itself
    when she keeps it)."""

    out: tuple


@dataclass(frozen=True)
class GuruAssignment:
    guru: tuple
    cast: tuple
    cycle_members: frozenset


def build_delegation_graph(
    g: MechanismSpec, pvp: ProxyVoteProfile
) -> DelegationGraph:
    """One out-edge per voter: her S_i-best permitted proxy.

    An empty permitted set, or the singleton {i}, keeps the vote at i.
    """
    out = []
    for i in range(pvp.n):
        permit = permitted_proxies(g, pvp.P, i)
        if not permit or permit == frozenset((i,)):
            out.append(i)
        else:
            out.append(pvp.S[i].restrict_top(permit))
    return DelegationGraph(tuple(out))


def _resolve_core(P: Sequence[PartialOrder], out_edges: Sequence[int],
                  D: Sequence[LinearOrder]):
    """Cycle cutting and guru lookup on raw tuples.

    Returns (guru, cast, cycle_members).  Kept free of profile objects so
    the exhaustive checkers can call it in tight loops.
    """
    n = len(P)
    out = list(out_edges)

    # detect cycles of length >= 2 and cut them into self-loops
    cycle_members = set()
    color = [0] * n  # 0 new, 1 on current path, 2 settled
    for start in range(n):
        if color[start]:
            continue
        path = []
        v = start
        while color[v] == 0:
            color[v] = 1
            path.append(v)
            v = out[v]
        if color[v] == 1 and out[v] != v:
            cyc = path[path.index(v):]
            cycle_members.update(cyc)
        for u in path:
            color[u] = 2
    for v in cycle_members:
        out[v] = v

    def own_cast(i: int) -> LinearOrder:
        if i in cycle_members:
            return D[i]
        return P[i].to_linear() if P[i].is_linear() else D[i]

    guru: list = [None] * n
    for start in range(n):
        path = []
        v = start
        while out[v] != v and guru[v] is None:
            path.append(v)
            v = out[v]
        top = guru[v] if guru[v] is not None else v
        guru[start] = top
        for u in path:
            guru[u] = top

    casts = {v: own_cast(v) for v in set(guru)}
    return tuple(guru), tuple(casts[guru[i]] for i in range(n)), frozenset(cycle_members)


def resolve_gurus(R: DelegationGraph, pvp: ProxyVoteProfile) -> GuruAssignment:
    """Collapse the delegation graph to one guru per voter.

    Voters on a cycle of length >= 2 become their own gurus and cast their
    defaults.  A voter who keeps her vote casts P_i when it is linear, D_i
    otherwise.  Everyone else inherits the first self-looping voter on her
    delegation path.
    """
    guru, cast, cycle_members = _resolve_core(pvp.P, R.out, pvp.D)
    return GuruAssignment(guru=guru, cast=cast, cycle_members=cycle_members)


# ---------------------------------------------------------------------------
# resolute aggregators


@dataclass(frozen=True)
class ScoringRule:
    """Positional scoring with an explicit tiebreak ranking.

    weights must be non-increasing non-negative integers with
    weights[0] > weights[-1]; ties in total score go to the alternative the
    tiebreak ranks higher.
    """

    weights: tuple
    tiebreak: LinearOrder

    def __post_init__(self):
        w = self.weights
        if len(w) != self.tiebreak.m:
            raise ElectionError("weights and tiebreak disagree on m")
        if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
            raise ElectionError("weights must be non-increasing")
        if w[-1] < 0 or w[0] <= w[-1]:
            raise ElectionError("need weights[0] > weights[-1] >= 0")
        if any(not isinstance(x, int) for x in w):
            raise ElectionError("weights must be integers; see make_scoring_rule")

    def winner(self, ballots: Sequence[LinearOrder]) -> int:
        return scoring_winner(self, ballots)


def make_scoring_rule(weights: Sequence, tiebreak: LinearOrder) -> ScoringRule:
    """Build a ScoringRule, scaling rational weights to integers."""
    fracs = [Fraction(w) for w in weights]
    scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
    return ScoringRule(tuple(int(f * scale) for f in fracs), tiebreak)


def borda(m: int, tiebreak: LinearOrder) -> ScoringRule:
    return ScoringRule(tuple(range(m - 1, -1, -1)), tiebreak)


def plurality(m: int, tiebreak: LinearOrder) -> ScoringRule:
    return ScoringRule((1,) + (0,) * (m - 1), tiebreak)


def veto(m: int, tiebreak: LinearOrder) -> ScoringRule:
    return ScoringRule((1,) * (m - 1) + (0,), tiebreak)


def scoring_winner(rule: ScoringRule, ballots: Sequence[LinearOrder]) -> int:
    m = rule.tiebreak.m
    score = [0] * m
    for b in ballots:
        for pos, a in enumerate(b.ranking):
            score[a] += rule.weights[pos]
    # among score ties the tiebreak-highest wins
    return max(range(m), key=lambda a: (score[a], -rule.tiebreak.rank(a)))


@dataclass(frozen=True)
class MajorityRule:
    """Two alternatives, odd voter count: most first places wins outright."""

    def winner(self, ballots: Sequence[LinearOrder]) -> int:
        return majority_winner(ballots)


def majority_winner(ballots: Sequence[LinearOrder]) -> int:
    if len(ballots) % 2 == 0:
        raise ElectionError("majority rule needs an odd number of voters")
    if any(b.m != 2 for b in ballots):
        raise ElectionError("majority rule needs exactly two alternatives")
    tops = sum(1 for b in ballots if b.top() == 0)
    return 0 if 2 * tops > len(ballots) else 1


@dataclass(frozen=True)
class MedianRule:
    """Median of voter peaks plus n-1 phantom peaks along a fixed axis."""

    axis: Axis
    phantom_peaks: tuple

    def __post_init__(self):
        if any(p not in self.axis for p in self.phantom_peaks):
            raise ElectionError("phantom peak off the axis")

    def winner(self, ballots: Sequence[LinearOrder]) -> int:
        return median_winner(self, ballots)


def median_winner(rule: MedianRule, ballots: Sequence[LinearOrder]) -> int:
    n = len(ballots)
    if len(rule.phantom_peaks) != n - 1:
        raise ElectionError(
            f"need {n - 1} phantom peaks for {n} voters, got {len(rule.phantom_peaks)}"
        )
    pos = {a: k for k, a in enumerate(rule.axis)}
    points = []
    for b in ballots:
        if not is_single_peaked_ballot(b, rule.axis):
            raise NotSinglePeaked(f"ballot {list(b.ranking)} on axis {list(rule.axis)}")
        points.append(pos[b.top()])
    points.extend(pos[p] for p in rule.phantom_peaks)
    points.sort()
    return rule.axis[points[n - 1]]  # middle of 2n-1 points


def run_proxy_vote(f, g: MechanismSpec, pvp: ProxyVoteProfile) -> int:
    """Winner of the proxy vote: f applied to the ballots the gurus cast."""
    assign = resolve_gurus(build_delegation_graph(g, pvp), pvp)
    return f.winner(assign.cast)


# ---------------------------------------------------------------------------
# JSON


def profile_to_json(pvp: ProxyVoteProfile) -> dict:
    return {
        "m": pvp.m,
        "P": [partial_order_to_json(p) for p in pvp.P],
        "S": [linear_order_to_json(s) for s in pvp.S],
        "D": [linear_order_to_json(d) for d in pvp.D],
    }


def profile_from_json(doc: dict) -> ProxyVoteProfile:
    m = doc["m"]
    return make_profile(
        [partial_order_from_json(p, m) for p in doc["P"]],
        [linear_order_from_json(s) for s in doc["S"]],
        [linear_order_from_json(d) for d in doc["D"]],
    )


def rule_to_json(rule) -> dict:
    if isinstance(rule, ScoringRule):
        return {
            "type": "scoring",
            "weights": list(rule.weights),
            "tiebreak": linear_order_to_json(rule.tiebreak),
        }
    if isinstance(rule, MajorityRule):
        return {"type": "majority"}
    if isinstance(rule, MedianRule):
        return {
            "type": "median",
            "axis": list(rule.axis),
            "phantoms": list(rule.phantom_peaks),
        }
    raise ElectionError(f"unknown rule object {rule!r}")


def rule_from_json(doc: dict):
    t = doc["type"]
    if t == "scoring":
        return make_scoring_rule(doc["weights"], linear_order_from_json(doc["tiebreak"]))
    if t == "majority":
        return MajorityRule()
    if t == "median":
        return MedianRule(tuple(doc["axis"]), tuple(doc["phantoms"]))
    raise ElectionError(f"unknown rule type {t!r}")
