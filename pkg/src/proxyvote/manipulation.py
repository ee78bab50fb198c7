"""Brute-force manipulation finders and constructive counterexamples.

The finders sweep every profile within bounds and return the first
instance in enumeration order (or a total count).  Ballot-choice
quantifiers over proxy rankings are collapsed to reachable out-edge
classes, exactly as in the checkers; counts are therefore tallies over
that reduced enumeration.  The constructors build specific election pairs
with known winners and verify them through the full pipeline before
returning.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from ._sweep import (
    Budget,
    WinnerMemo,
    d_repair,
    out_targets,
    s_for_target,
)
from .axioms import DEFAULT_BUDGET, check_f_uvai, uvai_padding
from .election import (
    ProxyVoteProfile,
    build_delegation_graph,
    make_profile,
    profile_from_json,
    profile_to_json,
    resolve_gurus,
    rule_from_json,
    rule_to_json,
    run_proxy_vote,
    MedianRule,
)
from .mechanisms import (
    SUBSET,
    MechanismSpec,
    mechanism_from_json,
    mechanism_to_json,
    permitted_proxies,
)
from .orders import (
    LinearOrder,
    PartialOrder,
    enumerate_linear_orders,
    enumerate_partial_orders,
    is_single_peaked_ballot,
    linear_extensions,
    linear_order_from_json,
    linear_order_to_json,
    make_partial_order,
    partial_order_from_json,
    partial_order_to_json,
)


class ConstructionError(Exception):
    """The requested construction falls outside its case table or fails
    its own verification."""


@dataclass(frozen=True)
class ManipulationInstance:
    """A verified strategic deviation.

    For kinds "gs" and "iia" the base is a linear ballot profile and the
    deviation a replacement ballot.  For "pc" the base is a full proxy
    vote profile and the deviation a proxy ranking; for "pm" it is a
    replacement ballot plus the repaired default that keeps the profile
    well formed.
    """

    kind: str
    manipulator: int
    winner_truthful: int
    winner_deviant: int
    ballots: Optional[tuple] = None
    deviant_ballot: Optional[LinearOrder] = None
    profile: Optional[ProxyVoteProfile] = None
    deviant_s: Optional[LinearOrder] = None
    deviant_p: Optional[PartialOrder] = None
    deviant_d: Optional[LinearOrder] = None

    def verify(self, f, g=None) -> bool:
        """Replay both elections and the preference conditions."""
        i = self.manipulator
        wt, wd = self.winner_truthful, self.winner_deviant
        if self.kind in ("gs", "iia"):
            L = self.ballots
            L2 = L[:i] + (self.deviant_ballot,) + L[i + 1:]
            if f.winner(L) != wt or f.winner(L2) != wd:
                return False
            if not L[i].prefers(wd, wt):
                return False
            if self.kind == "iia":
                if self.deviant_ballot == L[i]:
                    return False
                if not self.deviant_ballot.prefers(wd, wt):
                    return False
            return True
        if g is None:
            raise ValueError("verifying a %s instance needs the mechanism" % self.kind)
        pvp = self.profile
        if self.kind == "pc":
            S2 = pvp.S[:i] + (self.deviant_s,) + pvp.S[i + 1:]
            dev = make_profile(pvp.P, S2, pvp.D)
        elif self.kind == "pm":
            P2 = pvp.P[:i] + (self.deviant_p,) + pvp.P[i + 1:]
            D2 = pvp.D[:i] + (self.deviant_d,) + pvp.D[i + 1:]
            dev = make_profile(P2, pvp.S, D2)
        else:
            raise ValueError(self.kind)
        if run_proxy_vote(f, g, pvp) != wt or run_proxy_vote(f, g, dev) != wd:
            return False
        return (wd, wt) in pvp.P[i]

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "manipulator": self.manipulator,
            "winner_truthful": self.winner_truthful,
            "winner_deviant": self.winner_deviant,
        }
        if self.ballots is not None:
            doc["ballots"] = [linear_order_to_json(b) for b in self.ballots]
        if self.deviant_ballot is not None:
            doc["deviant_ballot"] = linear_order_to_json(self.deviant_ballot)
        if self.profile is not None:
            doc["profile"] = profile_to_json(self.profile)
        if self.deviant_s is not None:
            doc["deviant_s"] = linear_order_to_json(self.deviant_s)
        if self.deviant_p is not None:
            doc["deviant_p"] = partial_order_to_json(self.deviant_p)
        if self.deviant_d is not None:
            doc["deviant_d"] = linear_order_to_json(self.deviant_d)
        return doc


def instance_from_json(doc: dict) -> ManipulationInstance:
    kw = {
        "kind": doc["kind"],
        "manipulator": doc["manipulator"],
        "winner_truthful": doc["winner_truthful"],
        "winner_deviant": doc["winner_deviant"],
    }
    if "ballots" in doc:
        kw["ballots"] = tuple(linear_order_from_json(b) for b in doc["ballots"])
    if "deviant_ballot" in doc:
        kw["deviant_ballot"] = linear_order_from_json(doc["deviant_ballot"])
    if "profile" in doc:
        kw["profile"] = profile_from_json(doc["profile"])
        m = kw["profile"].m
        if "deviant_p" in doc:
            kw["deviant_p"] = partial_order_from_json(doc["deviant_p"], m)
    if "deviant_s" in doc:
        kw["deviant_s"] = linear_order_from_json(doc["deviant_s"])
    if "deviant_d" in doc:
        kw["deviant_d"] = linear_order_from_json(doc["deviant_d"])
    return ManipulationInstance(**kw)


# ---------------------------------------------------------------------------
# domains


def _domain_orders(m: int, domain) -> list:
    """Ballots admissible as cast votes under the domain restriction."""
    orders = enumerate_linear_orders(m)
    if domain == "all":
        return orders
    tag, axis = domain
    if tag != "single_peaked":
        raise ValueError("unknown domain %r" % (domain,))
    axis = tuple(axis)
    return [l for l in orders if is_single_peaked_ballot(l, axis)]


def _domain_filter(domain):
    """Predicate on a single cast ballot, None when unrestricted."""
    if domain == "all":
        return None
    axis = tuple(domain[1])
    cache = {}

    def ok(ballot):
        got = cache.get(ballot)
        if got is None:
            got = is_single_peaked_ballot(ballot, axis)
            cache[ballot] = got
        return got

    return ok


# ---------------------------------------------------------------------------
# finders (each scan runs over partition blocks; see _scan_partitioned)


def _gs_scan(f, g, n, m, domain, limit, firsts, count, iia=False):
    orders = _domain_orders(m, domain)
    budget = Budget(limit)
    hits, first = 0, None
    for fi in firsts:
        for rest in itertools.product(orders, repeat=n - 1):
            L = (orders[fi],) + rest
            w1 = f.winner(L)
            for i in range(n):
                for dev in orders:
                    if dev == L[i]:
                        continue
                    budget.spend()
                    L2 = L[:i] + (dev,) + L[i + 1:]
                    w2 = f.winner(L2)
                    if not L[i].prefers(w2, w1):
                        continue
                    if iia and not dev.prefers(w2, w1):
                        continue
                    hits += 1
                    if first is None:
                        first = ManipulationInstance(
                            kind="iia" if iia else "gs",
                            manipulator=i,
                            winner_truthful=w1,
                            winner_deviant=w2,
                            ballots=L,
                            deviant_ballot=dev,
                        )
                        if not count:
                            return hits, first
    return hits, first


def _iia_scan(f, g, n, m, domain, limit, firsts, count):
    return _gs_scan(f, g, n, m, domain, limit, firsts, count, iia=True)


def _pc_scan(f, g, n, m, domain, limit, firsts, count):
    pool = enumerate_partial_orders(m)
    budget = Budget(limit)
    memo = WinnerMemo(f)
    hits, first = 0, None
    for fi in firsts:
        for rest in itertools.product(pool, repeat=n - 1):
            P = (pool[fi],) + rest
            targets = [out_targets(g, P, v) for v in range(n)]
            exts = [linear_extensions(p) for p in P]
            for combo in itertools.product(*targets):
                for i in range(n):
                    if len(targets[i]) < 2:
                        continue
                    for t2 in targets[i]:
                        if t2 == combo[i]:
                            continue
                        out2 = combo[:i] + (t2,) + combo[i + 1:]
                        for D in itertools.product(*exts):
                            budget.spend()
                            w1 = memo.winner(P, combo, D)
                            w2 = memo.winner(P, out2, D)
                            if w2 == w1 or (w2, w1) not in P[i]:
                                continue
                            hits += 1
                            if first is None:
                                S = tuple(
                                    s_for_target(combo[v], n) for v in range(n)
                                )
                                first = ManipulationInstance(
                                    kind="pc",
                                    manipulator=i,
                                    winner_truthful=w1,
                                    winner_deviant=w2,
                                    profile=make_profile(P, S, D),
                                    deviant_s=s_for_target(t2, n),
                                )
                                if not count:
                                    return hits, first
    return hits, first


def _pm_scan(f, g, n, m, domain, limit, firsts, count):
    pool = enumerate_partial_orders(m)
    s_orders = enumerate_linear_orders(n)
    sp_ok = _domain_filter(domain)
    budget = Budget(limit)
    memo = WinnerMemo(f)
    hits, first = 0, None

    def casts_admissible(P, out, D):
        if sp_ok is None:
            return True
        cast = memo.resolve(P, out, D)[1]
        return all(sp_ok(b) for b in cast)

    for fi in firsts:
        for rest in itertools.product(pool, repeat=n - 1):
            P = (pool[fi],) + rest
            exts = [linear_extensions(p) for p in P]
            if sp_ok is not None:
                exts = [[d for d in e if sp_ok(d)] for e in exts]
                if not all(exts):
                    continue
            permits1 = [permitted_proxies(g, P, v) for v in range(n)]
            for i in range(n):
                for p2 in pool:
                    if p2 == P[i]:
                        continue
                    Pdev = P[:i] + (p2,) + P[i + 1:]
                    permits2 = [permitted_proxies(g, Pdev, v) for v in range(n)]
                    pair_opts = []
                    for v in range(n):
                        seen = {}
                        for s in s_orders:
                            t1 = _select(s, permits1[v], v)
                            t2 = _select(s, permits2[v], v)
                            seen.setdefault((t1, t2), s)
                        pair_opts.append(sorted(seen.items()))
                    for joint in itertools.product(*pair_opts):
                        out1 = tuple(pair[0][0] for pair in joint)
                        out2 = tuple(pair[0][1] for pair in joint)
                        for D in itertools.product(*exts):
                            budget.spend()
                            d2 = d_repair(p2, D[i])
                            if sp_ok is not None and not sp_ok(d2):
                                continue
                            D2 = D[:i] + (d2,) + D[i + 1:]
                            if not casts_admissible(P, out1, D):
                                continue
                            if not casts_admissible(Pdev, out2, D2):
                                continue
                            w1 = memo.winner(P, out1, D)
                            w2 = memo.winner(Pdev, out2, D2)
                            if w2 == w1 or (w2, w1) not in P[i]:
                                continue
                            hits += 1
                            if first is None:
                                S = tuple(pair[1] for pair in joint)
                                first = ManipulationInstance(
                                    kind="pm",
                                    manipulator=i,
                                    winner_truthful=w1,
                                    winner_deviant=w2,
                                    profile=make_profile(P, S, D),
                                    deviant_p=p2,
                                    deviant_d=d2,
                                )
                                if not count:
                                    return hits, first
    return hits, first


def _select(order, permit, seat):
    if not permit or permit == frozenset((seat,)):
        return seat
    return order.restrict_top(permit)


_SCANS = {
    "gs": (_gs_scan, lambda m, domain: len(_domain_orders(m, domain))),
    "iia": (_iia_scan, lambda m, domain: len(_domain_orders(m, domain))),
    "pc": (_pc_scan, lambda m, domain: len(enumerate_partial_orders(m))),
    "pm": (_pm_scan, lambda m, domain: len(enumerate_partial_orders(m))),
}


def _scan_chunk(payload):
    kind, rule, mech, n, m, domain, per, idx, count = payload
    f = rule_from_json(rule)
    g = mechanism_from_json(mech) if mech is not None else None
    scan = _SCANS[kind][0]
    return scan(f, g, n, m, domain, per, [idx], count)


def _scan_partitioned(kind, f, g, n, m, domain, limit, workers, count):
    scan, width = _SCANS[kind]
    nchunks = width(m, domain)
    per = max(1, limit // max(nchunks, 1))
    if workers <= 1:
        total, first = 0, None
        for idx in range(nchunks):
            hits, inst = scan(f, g, n, m, domain, per, [idx], count)
            total += hits
            if inst is not None and first is None:
                first = inst
                if not count:
                    break
        return total, first
    try:
        rule = rule_to_json(f)
    except Exception:
        raise ValueError(
            "workers > 1 requires a rule that serializes to JSON; "
            "run with workers=1 for ad-hoc rule objects"
        )
    mech = mechanism_to_json(g) if g is not None else None
    payloads = [
        (kind, rule, mech, n, m, domain, per, idx, count)
        for idx in range(nchunks)
    ]
    total, first = 0, None
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for hits, inst in ex.map(_scan_chunk, payloads):
            total += hits
            if inst is not None and first is None:
                first = inst
                if not count:
                    break
    return total, first


def find_gs(f, n: int, m: int, domain="all", limit: int = DEFAULT_BUDGET,
            workers: int = 1, count: bool = False):
    """First profile where one voter gains by misreporting her ballot."""
    total, first = _scan_partitioned("gs", f, None, n, m, domain, limit,
                                     workers, count)
    return total if count else first


def find_iia(f, n: int, m: int, limit: int = DEFAULT_BUDGET,
             workers: int = 1, count: bool = False):
    """Gainful misreport that keeps the voter's ranking of both winners.

    Needs at least three alternatives: with two, keeping the relative
    order of the winners contradicts gaining from the swap.
    """
    if m <= 2:
        raise ValueError("this manipulation form requires m > 2")
    total, first = _scan_partitioned("iia", f, None, n, m, "all", limit,
                                     workers, count)
    return total if count else first


def find_pc(f, g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET,
            workers: int = 1, count: bool = False):
    """First election where switching proxies alone helps the voter."""
    total, first = _scan_partitioned("pc", f, g, n, m, "all", limit,
                                     workers, count)
    return total if count else first


def find_pm(f, g: MechanismSpec, n: int, m: int, domain="all",
            limit: int = DEFAULT_BUDGET, workers: int = 1,
            count: bool = False):
    """First election where misreporting the partial ballot helps.

    Deviations range over every other partial order; the default is
    repaired lexicographically when the new ballot needs it.  On a
    single-peaked domain both the sincere and deviant cast profiles, all
    defaults, and the repaired default must be single-peaked.
    """
    total, first = _scan_partitioned("pm", f, g, n, m, domain, limit,
                                     workers, count)
    return total if count else first


# ---------------------------------------------------------------------------
# constructions


@dataclass(frozen=True)
class Thm3Construction:
    """A scoring-rule election pair where one added comparison flips the
    winner from the first alternative to the third."""

    sincere: ProxyVoteProfile
    deviant: ProxyVoteProfile
    winners: tuple
    branch: str

    def to_json(self) -> dict:
        return {
            "sincere": profile_to_json(self.sincere),
            "deviant": profile_to_json(self.deviant),
            "winners": list(self.winners),
            "branch": self.branch,
        }


_BCA = LinearOrder((1, 2, 0))
_ACB = LinearOrder((0, 2, 1))
_CAB = LinearOrder((2, 0, 1))
_ABC = LinearOrder((0, 1, 2))
_BAC = LinearOrder((1, 0, 2))


def _thm3_fillers(n: int, weights, prefers_ac: bool) -> tuple:
    """Filler ballots (seats 3 and up) per the four-branch case table."""
    s1, s2, s3 = weights
    if prefers_ac:
        if n % 2 == 0:
            half = (n - 6) // 2
            return ("ac_even",
                    [_BCA] * 2 + [_ACB] + [_CAB] * half + [_ACB] * half)
        branch, base = _thm3_fillers(n - 1, weights, True)
        extra = _BAC if (s1 > s2 == s3) else _ACB
        return ("ac_odd", base + [extra])
    if n % 2 == 1:
        half = (n - 7) // 2
        return ("ca_odd",
                [_BCA] * 2 + [_ACB] + [_ABC] + [_CAB] * half + [_ACB] * half)
    branch, base = _thm3_fillers(n - 1, weights, False)
    extra = _BCA if s1 > s2 else _ACB
    return ("ca_even", base + [extra])


def construct_thm3(n: int, rule) -> Thm3Construction:
    """Election pair on n voters showing a scoring rule is not addition
    monotonic under the ballot-containment mechanism.

    Voter 0 starts with an empty ballot and delegates to a voter casting
    b>a>c; committing to a>b shrinks her permitted proxies so she lands
    on a voter casting c>a>b instead, and the filler ballots make that
    single switched cast move the outcome from a to c.
    """
    if n < 14:
        raise ConstructionError("the filler arithmetic needs n >= 14")
    if len(rule.weights) != 3:
        raise ConstructionError("three alternatives only")
    prefers_ac = rule.tiebreak.prefers(0, 2)
    branch, fillers = _thm3_fillers(n, rule.weights, prefers_ac)
    if 3 + len(fillers) != n:
        raise ConstructionError("filler table bug for n=%d" % n)

    empty = make_partial_order(set(), 3)
    P_sin = (empty, _BAC.as_partial_order(), _CAB.as_partial_order()) + tuple(
        b.as_partial_order() for b in fillers
    )
    P_dev = (make_partial_order({(0, 1)}, 3),) + P_sin[1:]
    S = tuple(
        LinearOrder((1, 2, 0) + tuple(range(3, n))) if v == 0
        else LinearOrder(tuple(range(n)))
        for v in range(n)
    )
    D = (_CAB, _BAC, _CAB) + tuple(fillers)
    g = MechanismSpec(SUBSET)
    sincere = make_profile(P_sin, S, D)
    deviant = make_profile(P_dev, S, D)

    assign = resolve_gurus(build_delegation_graph(g, sincere), sincere)
    if assign.cast[0] != _BAC:
        raise ConstructionError("expected the delegate casting b>a>c")
    assign = resolve_gurus(build_delegation_graph(g, deviant), deviant)
    if assign.cast[0] != _CAB:
        raise ConstructionError("expected the delegate casting c>a>b")
    w1 = run_proxy_vote(rule, g, sincere)
    w2 = run_proxy_vote(rule, g, deviant)
    if (w1, w2) != (0, 2):
        raise ConstructionError(
            "branch %s does not elect (a, c) under this tiebreak: got (%d, %d)"
            % (branch, w1, w2)
        )
    return Thm3Construction(sincere, deviant, (0, 2), branch)


def construct_thm5(f, iia: ManipulationInstance) -> ManipulationInstance:
    """Lift a ranking-preserving manipulation to a proxy-choice one.

    Appends one voter per possible ranking, gives the manipulator the
    single commitment a>b, and points her proxy ranking at the voter
    whose ballot matches her sincere (then deviant) ballot.
    """
    if iia.kind != "iia":
        raise ConstructionError("input instance must be of the iia kind")
    i = iia.manipulator
    L = iia.ballots
    if iia.deviant_ballot == L[i]:
        raise ConstructionError("identity deviation is not an instance")
    n, m = len(L), L[0].m
    rep = check_f_uvai(f, n, m)
    if not rep.passed():
        raise ConstructionError("rule is not invariant to uniform additions")
    a, b = iia.winner_deviant, iia.winner_truthful

    pad = tuple(uvai_padding(m))
    seats = L + pad
    N = n + len(pad)
    j = next(v for v in range(N) if v != i and seats[v] == L[i])
    k = next(v for v in range(N) if v != i and seats[v] == iia.deviant_ballot)

    p_i = make_partial_order({(a, b)}, m)
    P = tuple(
        p_i if v == i else seats[v].as_partial_order() for v in range(N)
    )
    S = tuple(
        s_for_target(j, N) if v == i else LinearOrder(tuple(range(N)))
        for v in range(N)
    )
    D = tuple(
        linear_extensions(p_i)[0] if v == i else seats[v] for v in range(N)
    )
    dev_s = s_for_target(k, N)
    pvp = make_profile(P, S, D)
    g = MechanismSpec(SUBSET)
    inst = ManipulationInstance(
        kind="pc",
        manipulator=i,
        winner_truthful=b,
        winner_deviant=a,
        profile=pvp,
        deviant_s=dev_s,
    )
    if not inst.verify(f, g):
        raise ConstructionError("lifted elections do not reproduce (b, a)")
    return inst


def construct_thm6(n: int, rule: MedianRule) -> ManipulationInstance:
    """A single-peaked election where misreporting helps under the median.

    All other voters commit only to c>b (in axis terms) and would
    delegate to voter 0 if allowed; sincerely they fall into a cycle and
    cast defaults peaking at the leftmost alternative, and voter 0's
    switch to c>a>b hands everyone her ballot, moving the median.
    """
    if n < 2:
        raise ConstructionError("needs at least two voters")
    if not isinstance(rule, MedianRule):
        raise ConstructionError("rule must be a median rule with phantoms")
    if len(rule.axis) != 3:
        raise ConstructionError("three alternatives only")
    if len(rule.phantom_peaks) != n - 1:
        raise ConstructionError("rule must carry exactly n-1 phantom peaks")
    a, c, b = rule.axis
    if a not in rule.phantom_peaks:
        raise ConstructionError(
            "needs at least one phantom peak at the leftmost alternative"
        )
    p_i = LinearOrder((b, c, a))
    p_other = make_partial_order({(c, b)}, 3)
    P = (p_i.as_partial_order(),) + (p_other,) * (n - 1)
    S = tuple(LinearOrder(tuple(range(n))) for _ in range(n))
    D = (p_i,) + (LinearOrder((a, c, b)),) * (n - 1)
    dev_p = LinearOrder((c, a, b))
    pvp = make_profile(P, S, D)
    inst = ManipulationInstance(
        kind="pm",
        manipulator=0,
        winner_truthful=a,
        winner_deviant=c,
        profile=pvp,
        deviant_p=dev_p.as_partial_order(),
        deviant_d=d_repair(dev_p.as_partial_order(), p_i),
    )
    if not inst.verify(rule, MechanismSpec(SUBSET)):
        raise ConstructionError("constructed elections do not elect (a, c)")
    return inst
