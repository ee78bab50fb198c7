"""Partial and linear preference orders represented as explicit edge sets.

A ballot over alternatives 0..m-1 is a set of pairwise comparisons
("edges") (a, b), read "a is strictly preferred to b".  A valid ballot is
irreflexive, antisymmetric and transitively closed; the complete ones are
linear orders.  Closure is a membership condition, not something applied
silently: {a>b, b>c} without a>c is rejected by `make_partial_order` and
only `transitive_closure` builds the closed superset.

Alternatives and voters are dense 0-based integers.  The same machinery
serves orders over voters (proxy rankings) by reading indices as voter
ids.  JSON forms: a partial order is a sorted list of [above, below]
pairs, a linear order is its ranking list, best first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

Alternative = int
Voter = int
Edge = tuple[int, int]


class OrderError(ValueError):
    """Base class for malformed-order errors."""


class NotClosed(OrderError):
    """Edge set is not transitively closed."""


class Conflict(OrderError):
    """Edge set contains both (a, b) and (b, a)."""


class CycleDetected(OrderError):
    """Transitive closure would force a symmetric pair."""


class LimitExceeded(OrderError):
    """Enumeration request above the guarded size limit."""


@dataclass(frozen=True)
class PartialOrder:
    """A transitively closed, irreflexive, antisymmetric edge set.

    Attributes
    ----------
    m : int
        Number of alternatives; edges use indices in [0, m).
    edges : frozenset of (above, below) pairs
    """

    m: int
    edges: frozenset

    def __contains__(self, edge: Edge) -> bool:
        return tuple(edge) in self.edges

    def is_empty(self) -> bool:
        return not self.edges

    def is_linear(self) -> bool:
        return len(self.edges) == self.m * (self.m - 1) // 2

    def is_strictly_partial(self) -> bool:
        """Neither empty nor linear: the ballot forces delegation."""
        return bool(self.edges) and not self.is_linear()

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def to_linear(self) -> "LinearOrder":
        if not self.is_linear():
            raise OrderError("order is not linear: %r" % (sorted(self.edges),))
        wins = {a: 0 for a in range(self.m)}
        for a, _ in self.edges:
            wins[a] += 1
        ranking = sorted(range(self.m), key=lambda a: -wins[a])
        return LinearOrder(tuple(ranking))


@dataclass(frozen=True)
class LinearOrder:
    """A complete ranking, best first.

    Used both for ballots over alternatives and for proxy preferences over
    voters (indices are then voter ids).
    """

    ranking: tuple

    @property
    def m(self) -> int:
        return len(self.ranking)

    def rank(self, x: int) -> int:
        return self.ranking.index(x)

    def prefers(self, a: int, b: int) -> bool:
        return self.ranking.index(a) < self.ranking.index(b)

    def top(self) -> int:
        return self.ranking[0]

    def edge_set(self) -> frozenset:
        r = self.ranking
        return frozenset(
            (r[i], r[j]) for i in range(len(r)) for j in range(i + 1, len(r))
        )

    def as_partial_order(self) -> PartialOrder:
        return PartialOrder(len(self.ranking), self.edge_set())

    def restrict_top(self, allowed: Iterable[int]) -> int:
        """Highest-ranked member of `allowed`."""
        members = set(allowed)
        for x in self.ranking:
            if x in members:
                return x
        raise OrderError("restriction to an empty set")


def _check_edges(edges: Iterable[Edge], m: int) -> set:
    out = set()
    for e in edges:
        a, b = e
        if a == b:
            raise Conflict("reflexive edge (%d, %d)" % (a, b))
        if not (0 <= a < m and 0 <= b < m):
            raise OrderError("edge (%d, %d) out of range for m=%d" % (a, b, m))
        out.add((a, b))
    for a, b in out:
        if (b, a) in out:
            raise Conflict("both (%d, %d) and (%d, %d) present" % (a, b, b, a))
    return out


def make_partial_order(edges: Iterable[Edge], m: int) -> PartialOrder:
    """Validate an edge set as a partial order.

    Rejects rather than repairs: an edge set that is irreflexive and
    antisymmetric but not transitively closed raises NotClosed.
    """
    out = _check_edges(edges, m)
    for (a, b), (c, d) in itertools.product(out, repeat=2):
        if b == c and (a, d) not in out:
            raise NotClosed("missing (%d, %d) implied by (%d, %d) and (%d, %d)"
                            % (a, d, a, b, c, d))
    return PartialOrder(m, frozenset(out))


def transitive_closure(edges: Iterable[Edge], m: int) -> PartialOrder:
    """Smallest transitively closed superset of `edges`.

    Raises CycleDetected if the closure would need both (a, b) and (b, a),
    i.e. the input contains a preference cycle.
    """
    closed = set()
    for e in edges:
        a, b = e
        if a == b:
            raise CycleDetected("reflexive edge (%d, %d)" % (a, b))
        if not (0 <= a < m and 0 <= b < m):
            raise OrderError("edge (%d, %d) out of range for m=%d" % (a, b, m))
        closed.add((a, b))
    changed = True
    while changed:
        changed = False
        new = set()
        for (a, b), (c, d) in itertools.product(closed, repeat=2):
            if b == c and (a, d) not in closed:
                new.add((a, d))
        if new:
            closed |= new
            changed = True
    for a, b in closed:
        if a == b or (b, a) in closed:
            raise CycleDetected("cycle through %d and %d" % (a, b))
    return PartialOrder(m, frozenset(closed))


def is_subset(p: PartialOrder, q: PartialOrder) -> bool:
    """True iff every edge of p is present in q."""
    return p.edges <= q.edges


def agree(p: PartialOrder, q: PartialOrder) -> frozenset:
    """Edges of p that q shares.  Edges q is silent on are excluded."""
    return frozenset(e for e in p.edges if e in q.edges)


def disagree(p: PartialOrder, q: PartialOrder) -> frozenset:
    """Edges (a, b) of p whose reverse (b, a) is in q."""
    return frozenset((a, b) for (a, b) in p.edges if (b, a) in q.edges)


def apply_alt_bijection(psi: Sequence[int], order):
    """Rename alternatives edge-wise: a>b becomes psi[a]>psi[b].

    Accepts a PartialOrder or a LinearOrder and returns the same type.
    """
    if isinstance(order, LinearOrder):
        return LinearOrder(tuple(psi[x] for x in order.ranking))
    return PartialOrder(order.m, frozenset((psi[a], psi[b]) for a, b in order.edges))


def permute_profile_voters(psi: Sequence[int], profile: Sequence, content: str = "fixed") -> list:
    """Reindex a profile by voters: entry i of the output is entry psi[i]
    of the input.

    With content="voters" the entries are themselves orders over voters
    (proxy rankings) and their content is renamed through psi as well, so
    the new entry at i ranks psi[j] wherever entry psi[i] ranked j.
    """
    if content not in ("fixed", "voters"):
        raise ValueError("content must be 'fixed' or 'voters'")
    out = []
    for i in range(len(profile)):
        entry = profile[psi[i]]
        if content == "voters":
            entry = apply_alt_bijection(psi, entry)
        out.append(entry)
    return out


def inverse_permutation(psi: Sequence[int]) -> tuple:
    inv = [0] * len(psi)
    for i, x in enumerate(psi):
        inv[x] = i
    return tuple(inv)


def linear_extensions(p: PartialOrder) -> list:
    """All linear orders containing p, lexicographically by ranking.

    Enumerated by backtracking over available maximal elements, which
    yields rankings in increasing lexicographic order directly.
    """
    m = p.m
    above = {a: set() for a in range(m)}  # above[x] = alternatives ranked over x
    for a, b in p.edges:
        above[b].add(a)
    out = []
    placed = []

    def extend(remaining: set):
        if not remaining:
            out.append(LinearOrder(tuple(placed)))
            return
        for x in sorted(remaining):
            if above[x] & remaining:
                continue  # something unplaced must precede x
            placed.append(x)
            remaining.discard(x)
            extend(remaining)
            remaining.add(x)
            placed.pop()

    extend(set(range(m)))
    return out


def enumerate_linear_orders(m: int) -> list:
    """All m! rankings in lexicographic order."""
    return [LinearOrder(p) for p in itertools.permutations(range(m))]


def enumerate_partial_orders(m: int) -> list:
    """Every partial order over m alternatives, deterministically ordered.

    Guarded at m <= 5 (counts grow as 1, 1, 3, 19, 219, 4231).  Output is
    sorted lexicographically on the sorted edge tuple, so the empty order
    comes first.
    """
    if m > 5:
        raise LimitExceeded("enumerate_partial_orders guarded at m <= 5")
    pairs = list(itertools.combinations(range(m), 2))
    found = []
    # 3 states per unordered pair: absent, (a, b), (b, a)
    for states in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = set()
        for (a, b), s in zip(pairs, states):
            if s == 1:
                edges.add((a, b))
            elif s == 2:
                edges.add((b, a))
        if _is_closed(edges):
            found.append(PartialOrder(m, frozenset(edges)))
    found.sort(key=lambda p: tuple(sorted(p.edges)))
    return found


def _is_closed(edges: set) -> bool:
    for (a, b), (c, d) in itertools.product(edges, repeat=2):
        if b == c and (a, d) not in edges:
            return False
    return True


# ---------------------------------------------------------------------------
# Single-peakedness

Axis = tuple


def canonical_axis(axis: Sequence[int]) -> tuple:
    """An axis equals its reverse; report the lexicographically smaller."""
    fwd = tuple(axis)
    rev = tuple(reversed(fwd))
    return min(fwd, rev)


def peak(ballot: LinearOrder, axis: Sequence[int] | None = None) -> int:
    """The ballot's top choice (the peak position on any axis)."""
    return ballot.ranking[0]


def is_single_peaked_ballot(ballot: LinearOrder, axis: Sequence[int]) -> bool:
    """Strict decline on both sides of the peak along the axis."""
    pos = {x: q for q, x in enumerate(axis)}
    p = pos[ballot.ranking[0]]
    for q in range(p, 0, -1):  # leftward from the peak
        if not ballot.prefers(axis[q], axis[q - 1]):
            return False
    for q in range(p, len(axis) - 1):  # rightward
        if not ballot.prefers(axis[q], axis[q + 1]):
            return False
    return True


def is_single_peaked(profile: Sequence[LinearOrder], axis: Sequence[int]) -> bool:
    return all(is_single_peaked_ballot(b, axis) for b in profile)


def find_axis(profile: Sequence[LinearOrder]) -> tuple | None:
    """First axis (lexicographic, reverse-deduplicated) making the profile
    single-peaked, or None."""
    if not profile:
        return None
    m = profile[0].m
    for axis in itertools.permutations(range(m)):
        if axis > tuple(reversed(axis)):
            continue  # an axis and its reverse are the same axis
        if is_single_peaked(profile, axis):
            return axis
    return None


# ---------------------------------------------------------------------------
# JSON forms

def partial_order_to_json(p: PartialOrder) -> list:
    return [[a, b] for a, b in sorted(p.edges)]


def partial_order_from_json(pairs: Iterable, m: int) -> PartialOrder:
    return make_partial_order({(int(a), int(b)) for a, b in pairs}, m)


def linear_order_to_json(l: LinearOrder) -> list:
    return list(l.ranking)


def linear_order_from_json(ranking: Iterable) -> LinearOrder:
    r = tuple(int(x) for x in ranking)
    if sorted(r) != list(range(len(r))):
        raise OrderError("ranking %r is not a permutation" % (list(ranking),))
    return LinearOrder(r)
