"""Shared enumeration internals for the checkers and finders.

Every reduction here is exact: a quantifier is replaced only when the
dropped variable provably cannot affect the checked condition beyond the
cases kept.  The main ones:

  * S_i influences an election only through the out-edge it selects, so
    sweeping per-voter out-edge choices (`out_targets`) with one realizing
    S per choice covers every S-profile.
  * The delegation graph never depends on D, so D can be instantiated
    after the graph structure is fixed.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .election import _resolve_core, make_profile
from .mechanisms import MechanismSpec, permitted_proxies
from .orders import (
    LinearOrder,
    PartialOrder,
    apply_alt_bijection,
    enumerate_linear_orders,
    enumerate_partial_orders,
    inverse_permutation,
    linear_extensions,
)


def out_targets(g: MechanismSpec, P: Sequence[PartialOrder], i: int) -> tuple:
    """The out-edges voter i can realize as S_i varies."""
    permit = permitted_proxies(g, P, i)
    if not permit or permit == frozenset((i,)):
        return (i,)
    return tuple(sorted(permit))


def select_out(order: LinearOrder, permit: frozenset, seat: int) -> int:
    """The out-edge an explicit S entry selects from a permitted set."""
    if not permit or permit == frozenset((seat,)):
        return seat
    return order.restrict_top(permit)


def s_for_target(target: int, n: int) -> LinearOrder:
    """Lexicographically first voter ranking that puts `target` on top."""
    return LinearOrder((target,) + tuple(v for v in range(n) if v != target))


def all_P(n: int, m: int):
    return itertools.product(enumerate_partial_orders(m), repeat=n)


def all_S(n: int):
    return itertools.product(enumerate_linear_orders(n), repeat=n)


def all_D(P: Sequence[PartialOrder]):
    return itertools.product(*(linear_extensions(p) for p in P))


def d_repair(new_p: PartialOrder, old_d: LinearOrder) -> LinearOrder:
    """Default ballot for a changed P_i: keep the old one when it still
    extends the new ballot, else the lexicographically first extension."""
    if new_p.edges <= old_d.edge_set():
        return old_d
    return linear_extensions(new_p)[0]


class WinnerMemo:
    """Winner cache keyed by (ballots, out-edges, defaults).

    One instance per checker invocation; f is fixed for its lifetime.
    """

    def __init__(self, f):
        self.f = f
        self.cache: dict = {}
        self.casts: dict = {}

    def resolve(self, P: tuple, out: tuple, D: tuple):
        key = (P, out, D)
        got = self.casts.get(key)
        if got is None:
            got = _resolve_core(P, out, D)
            self.casts[key] = got
        return got

    def winner(self, P: tuple, out: tuple, D: tuple) -> int:
        key = (P, out, D)
        got = self.cache.get(key)
        if got is None:
            got = self.f.winner(self.resolve(P, out, D)[1])
            self.cache[key] = got
        return got


def relocate_seats(entries: Sequence, psi: Sequence[int]) -> tuple:
    """Move entry i to seat psi[i], contents untouched."""
    out = [None] * len(entries)
    for i, e in enumerate(entries):
        out[psi[i]] = e
    return tuple(out)


def transform_profile_voters(pvp, psi: Sequence[int]):
    """Voter bijection psi applied to a full profile.

    Voter i's triple moves to seat psi[i]; her proxy ranking is renamed so
    it still refers to the same people; ballots and defaults are over
    alternatives and keep their content.
    """
    P2 = relocate_seats(pvp.P, psi)
    S2 = relocate_seats([apply_alt_bijection(psi, s) for s in pvp.S], psi)
    D2 = relocate_seats(pvp.D, psi)
    return make_profile(P2, S2, D2)


def transform_profile_alts(pvp, psi: Sequence[int]):
    """Alternative bijection psi: renames ballot and default content,
    leaves voters and proxy rankings alone."""
    P2 = tuple(apply_alt_bijection(psi, p) for p in pvp.P)
    D2 = tuple(apply_alt_bijection(psi, d) for d in pvp.D)
    return make_profile(P2, pvp.S, D2)


def relocate_P(P: Sequence[PartialOrder], psi: Sequence[int]) -> tuple:
    return relocate_seats(P, psi)


def voter_bijections(n: int) -> list:
    return sorted(itertools.permutations(range(n)))


def alt_bijections(m: int) -> list:
    return sorted(itertools.permutations(range(m)))


class Budget:
    """Work counter so a checker can refuse oversized sweeps mid-run."""

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1):
        self.used += amount
        if self.used > self.limit:
            from .axioms import BoundsExceeded

            raise BoundsExceeded(
                f"enumeration exceeded the {self.limit:,} evaluation budget; "
                "rerun with force=True or a smaller n, m"
            )
