"""Permitted-proxy rules.

A mechanism maps a profile of partial-order ballots and a voter to the set
of proxies that voter may delegate to.  Three clauses hold for every
mechanism, whatever its kind: a voter with an empty ballot may delegate to
anyone else, a voter with a linear ballot keeps her own vote, and a voter
with a strictly partial ballot never appears in her own permitted set.
The kinds only differ on the strictly partial case.

JSON form: {"kind": str, "dictator_map": [int, ...]?, "network": [[a, b], ...]?}
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .orders import LimitExceeded, PartialOrder, enumerate_partial_orders, is_subset

TRIV = "triv"
UNIV = "univ"
SUBSET = "subset"
DICTATOR = "dictator"
SUBSET_LINEAR_STRICT = "subset_linear_strict"
SUBSET_IF_ALL_LINEAR_AGREE = "subset_if_all_linear_agree"

BUILTIN_KINDS = (
    TRIV,
    UNIV,
    SUBSET,
    DICTATOR,
    SUBSET_LINEAR_STRICT,
    SUBSET_IF_ALL_LINEAR_AGREE,
)

# custom strictly-partial handlers, keyed by kind name
_CUSTOM: dict[str, Callable[[Sequence[PartialOrder], int], Iterable[int]]] = {}


class MechanismError(Exception):
    """Raised for unknown kinds or malformed mechanism parameters."""


def register_mechanism(
    kind: str, handler: Callable[[Sequence[PartialOrder], int], Iterable[int]]
) -> None:
    """Register a custom kind.

    The handler is consulted only for strictly partial ballots and receives
    (profile, voter); the three definitional clauses stay enforced around it,
    so the voter herself and non-neighbours are discarded from its result.
    """
    if kind in BUILTIN_KINDS:
        raise MechanismError(f"cannot override builtin kind {kind!r}")
    _CUSTOM[kind] = handler


def make_network(pairs: Iterable[Sequence[int]]) -> frozenset[tuple[int, int]]:
    """Normalize an undirected edge list to sorted irreflexive pairs."""
    out = set()
    for a, b in pairs:
        if a == b:
            raise MechanismError(f"network loop at voter {a}")
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


def network_neighbours(network: frozenset[tuple[int, int]], i: int) -> frozenset[int]:
    return frozenset(b if a == i else a for a, b in network if i in (a, b))


@dataclass(frozen=True)
class MechanismSpec:
    """A permitted-proxy rule: an enumerated kind plus its parameters.

    dictator_map gives voter i's sole delegate; entry i must differ from i.
    When omitted for the dictator kind, voter i gets (i + 1) mod n.
    network, when present, restricts the strictly partial case to i's
    neighbours; it never touches the empty-ballot or linear-ballot clauses.
    """

    kind: str
    dictator_map: Optional[tuple[int, ...]] = None
    network: Optional[frozenset[tuple[int, int]]] = None

    def __post_init__(self):
        if self.kind not in BUILTIN_KINDS and self.kind not in _CUSTOM:
            raise MechanismError(f"unknown mechanism kind {self.kind!r}")
        if self.dictator_map is not None:
            for i, j in enumerate(self.dictator_map):
                if i == j:
                    raise MechanismError(f"dictator_map sends voter {i} to herself")
        if self.network is not None:
            for a, b in self.network:
                if a == b:
                    raise MechanismError(f"network loop at voter {a}")


def permitted_proxies(
    g: MechanismSpec, P: Sequence[PartialOrder], i: int
) -> frozenset[int]:
    """The set of proxies voter i may delegate to under mechanism g."""
    n = len(P)
    if not 0 <= i < n:
        raise ValueError(f"voter {i} out of range for n={n}")
    p = P[i]
    others = frozenset(j for j in range(n) if j != i)
    if p.is_empty():
        return others
    if p.is_linear():
        return frozenset((i,))

    if g.kind == TRIV:
        result = frozenset()
    elif g.kind == UNIV:
        result = others
    elif g.kind == SUBSET:
        result = frozenset(j for j in others if is_subset(p, P[j]))
    elif g.kind == DICTATOR:
        if g.dictator_map is None:
            result = frozenset(((i + 1) % n,))
        else:
            if len(g.dictator_map) != n:
                raise MechanismError(
                    f"dictator_map has {len(g.dictator_map)} entries, profile has {n}"
                )
            result = frozenset((g.dictator_map[i],))
    elif g.kind == SUBSET_LINEAR_STRICT:
        result = frozenset(
            j for j in others if P[j].is_linear() and p.edges < P[j].edges
        )
    elif g.kind == SUBSET_IF_ALL_LINEAR_AGREE:
        if all(is_subset(p, P[j]) for j in others if P[j].is_linear()):
            result = frozenset(j for j in others if is_subset(p, P[j]))
        else:
            result = frozenset()
    else:
        result = frozenset(_CUSTOM[g.kind](P, i)) - {i}

    if g.network is not None:
        result &= network_neighbours(g.network, i)
    return result


def m2_unique_mechanism_check(
    kinds: Sequence[MechanismSpec], n: int, m: int = 2
) -> bool:
    """True iff all listed mechanisms agree on every (profile, voter) pair.

    With two alternatives every ballot is empty or linear, so the clauses
    leave the kinds nothing to differ on; at larger m they diverge.
    """
    pool = enumerate_partial_orders(m)
    if len(pool) ** n > 500_000:
        raise LimitExceeded(f"profile space {len(pool)}^{n} too large")
    for profile in itertools.product(pool, repeat=n):
        for i in range(n):
            sets = {permitted_proxies(g, profile, i) for g in kinds}
            if len(sets) > 1:
                return False
    return True


def mechanism_to_json(g: MechanismSpec) -> dict:
    doc: dict = {"kind": g.kind}
    if g.dictator_map is not None:
        doc["dictator_map"] = list(g.dictator_map)
    if g.network is not None:
        doc["network"] = [list(e) for e in sorted(g.network)]
    return doc


def mechanism_from_json(doc: dict) -> MechanismSpec:
    kind = doc["kind"]
    dmap = doc.get("dictator_map")
    network = doc.get("network")
    return MechanismSpec(
        kind=kind,
        dictator_map=None if dmap is None else tuple(dmap),
        network=None if network is None else make_network(network),
    )
