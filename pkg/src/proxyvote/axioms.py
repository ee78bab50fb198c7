"""Exhaustive property checkers for rules, mechanisms, and their pairing.

Each checker quantifies over every profile within its bounds and returns a
CheckReport: verdict "pass", or "fail" carrying a witness that can be
replayed with `replay_witness`.  Checkers never sample; when a quantifier
is collapsed (S to out-edge classes, D to an extension-intersection
argument, or a pair property to its single-sided legs) the reduction is
exact at the stated bounds and recorded in the report's notes.

Conventions for the voter-bijection properties: voter i's data moves to
seat psi[i], her proxy ranking is renamed to keep referring to the same
people, and ballot content stays put.  Alternative bijections rename
ballot and default content and leave voters alone.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence

from ._sweep import (
    Budget,
    WinnerMemo,
    all_D,
    all_P,
    alt_bijections,
    d_repair,
    out_targets,
    relocate_P,
    relocate_seats,
    s_for_target,
    select_out,
    transform_profile_alts,
    transform_profile_voters,
    voter_bijections,
)
from .election import (
    _resolve_core,
    build_delegation_graph,
    make_profile,
    profile_from_json,
    profile_to_json,
    resolve_gurus,
    rule_from_json,
    rule_to_json,
    run_proxy_vote,
)
from .mechanisms import (
    MechanismSpec,
    mechanism_from_json,
    mechanism_to_json,
    permitted_proxies,
)
from .orders import (
    LinearOrder,
    OrderError,
    PartialOrder,
    agree,
    apply_alt_bijection,
    disagree,
    enumerate_linear_orders,
    enumerate_partial_orders,
    is_subset,
    linear_extensions,
    linear_order_from_json,
    linear_order_to_json,
    make_partial_order,
    partial_order_to_json,
)

DEFAULT_BUDGET = 1_000_000_000
# above this nominal quantifier size the pair checkers try composition first
DIRECT_CUTOFF = 5_000_000


class BoundsExceeded(Exception):
    """The requested enumeration is larger than the allowed budget."""


@dataclass
class CheckReport:
    property: str
    scope: dict
    verdict: str  # "pass" | "fail"
    witness: Optional[dict] = None
    notes: str = ""

    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        doc = {
            "property": self.property,
            "scope": self.scope,
            "verdict": self.verdict,
            "witness": self.witness,
        }
        if self.notes:
            doc["notes"] = self.notes
        return doc


def _pass(prop, scope, notes=""):
    return CheckReport(prop, scope, "pass", None, notes)


def _fail(prop, scope, witness, notes=""):
    return CheckReport(prop, scope, "fail", witness, notes)


def _ballots_doc(ballots) -> list:
    return [linear_order_to_json(b) for b in ballots]


def _rule_doc(f) -> Optional[dict]:
    try:
        return rule_to_json(f)
    except Exception:
        return None


def _election_doc(pvp, g, f, winner) -> dict:
    doc = {
        "profile": profile_to_json(pvp),
        "mechanism": mechanism_to_json(g),
        "winner": winner,
    }
    rule = _rule_doc(f)
    if rule is not None:
        doc["rule"] = rule
    return doc


# ---------------------------------------------------------------------------
# properties of the aggregation rule alone


def check_f_anonymity(f, n: int, m: int, limit: int = DEFAULT_BUDGET) -> CheckReport:
    """f must ignore the order of the ballot list."""
    orders = enumerate_linear_orders(m)
    scope = {"n": n, "m": m, "profiles": len(orders) ** n, "bijections": factorial(n)}
    budget = Budget(limit)
    for L in itertools.product(orders, repeat=n):
        w = f.winner(L)
        for psi in voter_bijections(n):
            budget.spend()
            L2 = tuple(L[psi[i]] for i in range(n))
            w2 = f.winner(L2)
            if w2 != w:
                return _fail(
                    "f_anonymity",
                    scope,
                    {
                        "ballots": _ballots_doc(L),
                        "psi": list(psi),
                        "ballots_permuted": _ballots_doc(L2),
                        "winner": w,
                        "winner_permuted": w2,
                        "rule": _rule_doc(f),
                    },
                )
    return _pass("f_anonymity", scope)


def check_f_neutrality(f, n: int, m: int, limit: int = DEFAULT_BUDGET) -> CheckReport:
    """Renaming alternatives must rename the winner the same way."""
    orders = enumerate_linear_orders(m)
    scope = {"n": n, "m": m, "profiles": len(orders) ** n, "bijections": factorial(m)}
    budget = Budget(limit)
    for L in itertools.product(orders, repeat=n):
        w = f.winner(L)
        for psi in alt_bijections(m):
            budget.spend()
            L2 = tuple(apply_alt_bijection(psi, b) for b in L)
            w2 = f.winner(L2)
            if w2 != psi[w]:
                return _fail(
                    "f_neutrality",
                    scope,
                    {
                        "ballots": _ballots_doc(L),
                        "psi": list(psi),
                        "ballots_renamed": _ballots_doc(L2),
                        "winner": w,
                        "winner_renamed": w2,
                        "rule": _rule_doc(f),
                    },
                )
    return _pass("f_neutrality", scope)


def check_f_weak_monotonicity(
    f, n: int, m: int, limit: int = DEFAULT_BUDGET
) -> CheckReport:
    """Lifting the current winner one adjacent place never dethrones it."""
    orders = enumerate_linear_orders(m)
    scope = {"n": n, "m": m, "profiles": len(orders) ** n}
    budget = Budget(limit)
    for L in itertools.product(orders, repeat=n):
        a = f.winner(L)
        for i in range(n):
            budget.spend()
            pos = L[i].rank(a)
            if pos == 0:
                continue
            r = list(L[i].ranking)
            b = r[pos - 1]
            r[pos - 1], r[pos] = r[pos], r[pos - 1]
            L2 = L[:i] + (LinearOrder(tuple(r)),) + L[i + 1:]
            w2 = f.winner(L2)
            if w2 != a:
                return _fail(
                    "f_weak_monotonicity",
                    scope,
                    {
                        "ballots": _ballots_doc(L),
                        "voter": i,
                        "lifted": a,
                        "over": b,
                        "ballots_after": _ballots_doc(L2),
                        "winner": a,
                        "winner_after": w2,
                        "rule": _rule_doc(f),
                    },
                )
    return _pass("f_weak_monotonicity", scope)


def uvai_padding(m: int) -> list:
    """One ballot per possible ranking, in lexicographic order."""
    return enumerate_linear_orders(m)


def check_f_uvai(f, n: int, m: int, limit: int = DEFAULT_BUDGET) -> CheckReport:
    """Appending one voter per possible ranking must not move the winner."""
    orders = enumerate_linear_orders(m)
    pad = uvai_padding(m)
    scope = {"n": n, "m": m, "profiles": len(orders) ** n, "padding": len(pad)}
    budget = Budget(limit)
    for L in itertools.product(orders, repeat=n):
        budget.spend()
        w = f.winner(L)
        w2 = f.winner(L + tuple(pad))
        if w2 != w:
            return _fail(
                "f_uvai",
                scope,
                {
                    "ballots": _ballots_doc(L),
                    "ballots_augmented": _ballots_doc(L + tuple(pad)),
                    "winner": w,
                    "winner_augmented": w2,
                    "rule": _rule_doc(f),
                },
            )
    return _pass("f_uvai", scope)


# ---------------------------------------------------------------------------
# properties of the proxy mechanism alone


def _profile_doc(P) -> list:
    return [partial_order_to_json(p) for p in P]


def check_g_anonymity(
    g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET
) -> CheckReport:
    """Permitted sets must follow the voters when voters are renamed."""
    scope = {"n": n, "m": m, "profiles": len(enumerate_partial_orders(m)) ** n}
    budget = Budget(limit)
    for P in all_P(n, m):
        permits = [permitted_proxies(g, P, i) for i in range(n)]
        for psi in voter_bijections(n):
            P2 = relocate_P(P, psi)
            for i in range(n):
                budget.spend()
                lhs = frozenset(psi[j] for j in permits[i])
                rhs = permitted_proxies(g, P2, psi[i])
                if lhs != rhs:
                    return _fail(
                        "g_anonymity",
                        scope,
                        {
                            "m": m,
                            "profile_P": _profile_doc(P),
                            "psi": list(psi),
                            "voter": i,
                            "permitted": sorted(permits[i]),
                            "permitted_renamed": sorted(lhs),
                            "permitted_transformed": sorted(rhs),
                            "mechanism": mechanism_to_json(g),
                        },
                    )
    return _pass("g_anonymity", scope)


def check_g_neutrality(
    g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET
) -> CheckReport:
    """Permitted sets must not react to renaming the alternatives."""
    pool = enumerate_partial_orders(m)
    scope = {"n": n, "m": m, "profiles": len(pool) ** n}
    budget = Budget(limit)
    maps = {
        psi: {p: apply_alt_bijection(psi, p) for p in pool}
        for psi in alt_bijections(m)
    }
    for P in all_P(n, m):
        permits = [permitted_proxies(g, P, i) for i in range(n)]
        for psi, table in maps.items():
            P2 = tuple(table[p] for p in P)
            for i in range(n):
                budget.spend()
                rhs = permitted_proxies(g, P2, i)
                if permits[i] != rhs:
                    return _fail(
                        "g_neutrality",
                        scope,
                        {
                            "m": m,
                            "profile_P": _profile_doc(P),
                            "psi": list(psi),
                            "voter": i,
                            "permitted": sorted(permits[i]),
                            "permitted_transformed": sorted(rhs),
                            "mechanism": mechanism_to_json(g),
                        },
                    )
    return _pass("g_neutrality", scope)


def check_pa(
    g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET
) -> CheckReport:
    """Every ballot must admit SOME completion with a nonempty permitted set."""
    pool = enumerate_partial_orders(m)
    scope = {"n": n, "m": m, "ballots": len(pool)}
    budget = Budget(limit)
    for i in range(n):
        for p in pool:
            found = False
            for rest in itertools.product(pool, repeat=n - 1):
                budget.spend()
                P = rest[:i] + (p,) + rest[i:]
                if permitted_proxies(g, P, i):
                    found = True
                    break
            if not found:
                return _fail(
                    "pa",
                    scope,
                    {
                        "m": m,
                        "n": n,
                        "voter": i,
                        "ballot": partial_order_to_json(p),
                        "mechanism": mechanism_to_json(g),
                    },
                )
    return _pass("pa", scope)


def check_iip(
    g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET
) -> CheckReport:
    """j's membership in i's permitted set may depend only on P_i and P_j.

    Grouping all profiles by the (P_i, P_j) pair and requiring constant
    membership inside each group is the definition verbatim: two profiles
    agree on (P_i, P_j) exactly when they sit in the same group.
    """
    pool = enumerate_partial_orders(m)
    scope = {"n": n, "m": m, "profiles": len(pool) ** n}
    budget = Budget(limit)
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            seen: dict = {}
            for P in all_P(n, m):
                budget.spend()
                member = j in permitted_proxies(g, P, i)
                key = (P[i], P[j])
                prev = seen.get(key)
                if prev is None:
                    seen[key] = (member, P)
                elif prev[0] != member:
                    return _fail(
                        "iip",
                        scope,
                        {
                            "m": m,
                            "voter": i,
                            "candidate": j,
                            "profile_1": _profile_doc(prev[1]),
                            "member_1": prev[0],
                            "profile_2": _profile_doc(P),
                            "member_2": member,
                            "mechanism": mechanism_to_json(g),
                        },
                    )
    return _pass("iip", scope)


def check_pm(
    g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET
) -> CheckReport:
    """Anyone who agrees with the voter at least as much as some permitted
    proxy, and disagrees no more, must be permitted too."""
    scope = {"n": n, "m": m, "profiles": len(enumerate_partial_orders(m)) ** n}
    budget = Budget(limit)
    for P in all_P(n, m):
        for i in range(n):
            permit = permitted_proxies(g, P, i)
            for j in permit - {i}:
                ag_j = agree(P[i], P[j])
                dis_j = disagree(P[i], P[j])
                for k in range(n):
                    if k == i:
                        continue
                    budget.spend()
                    if (
                        ag_j <= agree(P[i], P[k])
                        and disagree(P[i], P[k]) <= dis_j
                        and k not in permit
                    ):
                        return _fail(
                            "pm",
                            scope,
                            {
                                "m": m,
                                "profile_P": _profile_doc(P),
                                "voter": i,
                                "permitted_j": j,
                                "dominating_k": k,
                                "permitted": sorted(permit),
                                "mechanism": mechanism_to_json(g),
                            },
                        )
    return _pass("pm", scope)


def check_zr(
    g: MechanismSpec, n: int, m: int, limit: int = DEFAULT_BUDGET, workers: int = 1
) -> CheckReport:
    """No guru may ever cast a ballot conflicting with the voter's own.

    Exact reductions: S matters only through the out-edges it selects, so
    out-edge combinations stand in for all S-profiles; and since a
    default-casting guru j ranges over exactly the linear extensions of
    P_j, whose intersection is P_j itself, "every D is safe" for voter i
    is equivalent to P_i being contained in P_j.
    """
    pool = enumerate_partial_orders(m)
    scope = {"n": n, "m": m, "profiles": len(pool) ** n}
    notes = "S swept via out-edge classes; D via extension-intersection identity"
    budget = Budget(limit)
    for P in all_P(n, m):
        targets = [out_targets(g, P, i) for i in range(n)]
        lex_D = tuple(linear_extensions(p)[0] for p in P)
        for combo in itertools.product(*targets):
            budget.spend()
            guru, cast, cyc = _resolve_core(P, combo, lex_D)
            for i in range(n):
                j = guru[i]
                if j == i or is_subset(P[i], P[j]):
                    continue
                # realize the violation concretely: an S per out-edge and
                # the first default of P_j that drops an edge of P_i
                S = tuple(s_for_target(combo[v], n) for v in range(n))
                D = list(lex_D)
                if not P[i].edges <= cast[i].edge_set():
                    bad_d = lex_D[j]
                else:
                    bad_d = next(
                        d
                        for d in linear_extensions(P[j])
                        if not P[i].edges <= d.edge_set()
                    )
                D[j] = bad_d
                pvp = make_profile(P, S, tuple(D))
                assign = resolve_gurus(build_delegation_graph(g, pvp), pvp)
                missing = sorted(P[i].edges - assign.cast[i].edge_set())[0]
                return _fail(
                    "zr",
                    scope,
                    {
                        "profile": profile_to_json(pvp),
                        "mechanism": mechanism_to_json(g),
                        "voter": i,
                        "guru": assign.guru[i],
                        "cast": linear_order_to_json(assign.cast[i]),
                        "missing_edge": list(missing),
                    },
                    notes,
                )
    return _pass("zr", scope, notes)


# ---------------------------------------------------------------------------
# properties of the (rule, mechanism) pair


def _nominal_pair_space(n: int, m: int, bijections: int) -> int:
    pool = len(enumerate_partial_orders(m))
    return (pool ** n) * (factorial(n) ** n) * bijections


def _pv_witness(prop, psi, pvp1, w1, pvp2, w2, g, f):
    return {
        "psi": list(psi),
        "election": _election_doc(pvp1, g, f, w1),
        "election_transformed": _election_doc(pvp2, g, f, w2),
    }


def _P_block(m: int, n: int, first_idx: int):
    """All profiles whose first ballot is pool[first_idx]; the partition
    unit for parallel checkers."""
    pool = enumerate_partial_orders(m)
    first = pool[first_idx]
    if n == 1:
        yield (first,)
        return
    for rest in itertools.product(pool, repeat=n - 1):
        yield (first,) + rest


def _pv_anonymity_sweep(f, g, n, m, limit, firsts, extra=None) -> Optional[dict]:
    """Exhaustive sweep over the given partition blocks; witness or None.

    S_i affects both elections only through the pair (own out-edge,
    transformed out-edge), so the per-voter reachable pairs replace the
    n!^n S-space exactly.
    """
    s_orders = enumerate_linear_orders(n)
    memo = WinnerMemo(f)
    budget = Budget(limit)
    for P in itertools.chain.from_iterable(_P_block(m, n, fi) for fi in firsts):
        exts = [linear_extensions(p) for p in P]
        permits1 = [permitted_proxies(g, P, i) for i in range(n)]
        for psi in voter_bijections(n):
            P2 = relocate_P(P, psi)
            permits2 = [permitted_proxies(g, P2, k) for k in range(n)]
            pair_opts = []
            for i in range(n):
                k = psi[i]
                seen: dict = {}
                for s in s_orders:
                    t1 = select_out(s, permits1[i], i)
                    t2 = select_out(apply_alt_bijection(psi, s), permits2[k], k)
                    seen.setdefault((t1, t2), s)
                pair_opts.append(sorted(seen.items()))
            for joint in itertools.product(*pair_opts):
                out1 = tuple(pair[0][0] for pair in joint)
                out2 = [0] * n
                for i in range(n):
                    out2[psi[i]] = joint[i][0][1]
                out2 = tuple(out2)
                for D in itertools.product(*exts):
                    budget.spend()
                    D2 = relocate_seats(D, psi)
                    w1 = memo.winner(P, out1, D)
                    w2 = memo.winner(P2, out2, D2)
                    if w1 != w2:
                        S = tuple(pair[1] for pair in joint)
                        pvp1 = make_profile(P, S, D)
                        pvp2 = transform_profile_voters(pvp1, psi)
                        return _pv_witness(
                            "pv_anonymity", psi, pvp1, w1, pvp2, w2, g, f
                        )
    return None


def _pv_neutrality_sweep(f, g, n, m, limit, firsts, extra=None) -> Optional[dict]:
    """Exhaustive sweep for the alternative-renaming property."""
    s_orders = enumerate_linear_orders(n)
    pool = enumerate_partial_orders(m)
    memo = WinnerMemo(f)
    budget = Budget(limit)
    maps = {
        psi: {p: apply_alt_bijection(psi, p) for p in pool}
        for psi in alt_bijections(m)
    }
    for P in itertools.chain.from_iterable(_P_block(m, n, fi) for fi in firsts):
        exts = [linear_extensions(p) for p in P]
        permits1 = [permitted_proxies(g, P, i) for i in range(n)]
        for psi, table in maps.items():
            P2 = tuple(table[p] for p in P)
            permits2 = [permitted_proxies(g, P2, i) for i in range(n)]
            pair_opts = []
            for i in range(n):
                seen: dict = {}
                for s in s_orders:
                    t1 = select_out(s, permits1[i], i)
                    t2 = select_out(s, permits2[i], i)
                    seen.setdefault((t1, t2), s)
                pair_opts.append(sorted(seen.items()))
            for joint in itertools.product(*pair_opts):
                out1 = tuple(pair[0][0] for pair in joint)
                out2 = tuple(pair[0][1] for pair in joint)
                for D in itertools.product(*exts):
                    budget.spend()
                    D2 = tuple(apply_alt_bijection(psi, d) for d in D)
                    w1 = memo.winner(P, out1, D)
                    w2 = memo.winner(P2, out2, D2)
                    if w2 != psi[w1]:
                        S = tuple(pair[1] for pair in joint)
                        pvp1 = make_profile(P, S, D)
                        pvp2 = transform_profile_alts(pvp1, psi)
                        return _pv_witness(
                            "pv_neutrality", psi, pvp1, w1, pvp2, w2, g, f
                        )
    return None


def _chunk_main(payload):
    kind, rule, mech, n, m, per, idx, extra = payload
    f = rule_from_json(rule)
    g = mechanism_from_json(mech)
    return _SWEEPS[kind](f, g, n, m, per, [idx], extra)


def _partitioned(kind, f, g, n, m, limit, extra, workers) -> Optional[dict]:
    """Run a sweep partitioned by the first voter's ballot.

    Sequential and parallel runs visit partition blocks in the same order
    and report the first block's witness, so results are deterministic
    regardless of worker count.
    """
    blocks = len(enumerate_partial_orders(m))
    per = max(1, limit // blocks)
    if workers <= 1:
        fn = _SWEEPS[kind]
        for idx in range(blocks):
            hit = fn(f, g, n, m, per, [idx], extra)
            if hit is not None:
                return hit
        return None
    rule = _rule_doc(f)
    if rule is None:
        raise ValueError(
            "workers > 1 requires a rule that serializes to JSON; "
            "run with workers=1 for ad-hoc rule objects"
        )
    mech = mechanism_to_json(g)
    payloads = [
        (kind, rule, mech, n, m, per, idx, extra) for idx in range(blocks)
    ]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for hit in ex.map(_chunk_main, payloads):
            if hit is not None:
                return hit
    return None


def _check_selection_equivariance(n: int) -> bool:
    """sel(psi . S, psi[T], psi[seat]) == psi[sel(S, T, seat)] for all inputs."""
    voters = range(n)
    orders = enumerate_linear_orders(n)
    for size in range(n + 1):
        for T in itertools.combinations(voters, size):
            Tset = frozenset(T)
            for seat in voters:
                for s in orders:
                    for psi in voter_bijections(n):
                        lhs = select_out(
                            apply_alt_bijection(psi, s),
                            frozenset(psi[t] for t in Tset),
                            psi[seat],
                        )
                        if lhs != psi[select_out(s, Tset, seat)]:
                            return False
    return True


def _check_resolution_conjugation(n: int, m: int) -> bool:
    """Relocating voters conjugates resolution, for every delegation graph.

    The resolver reads ballots only through their linearity flag, so one
    content assignment per flag pattern with pairwise distinct ballots is
    exhaustive: outputs are selections among the inputs, and equality of
    selections transfers to any other content.
    """
    pool = enumerate_partial_orders(m)
    linears = [p for p in pool if p.is_linear()]
    partials = [p for p in pool if not p.is_linear()]
    for flags in itertools.product((False, True), repeat=n):
        P = tuple(
            linears[i % len(linears)] if lin else partials[i % len(partials)]
            for i, lin in enumerate(flags)
        )
        D = tuple(linear_extensions(p)[0] for p in P)
        for out in itertools.product(range(n), repeat=n):
            guru, cast, cyc = _resolve_core(P, out, D)
            for psi in voter_bijections(n):
                P2 = relocate_seats(P, psi)
                D2 = relocate_seats(D, psi)
                out2 = [0] * n
                for i in range(n):
                    out2[psi[i]] = psi[out[i]]
                guru2, cast2, cyc2 = _resolve_core(P2, tuple(out2), D2)
                for i in range(n):
                    if guru2[psi[i]] != psi[guru[i]] or cast2[psi[i]] != cast[i]:
                        return False
                if cyc2 != frozenset(psi[v] for v in cyc):
                    return False
    return True


def _check_cast_renaming(m: int) -> bool:
    """Alternative renaming commutes with linearity and with casting."""
    for p in enumerate_partial_orders(m):
        for psi in alt_bijections(m):
            q = apply_alt_bijection(psi, p)
            if q.is_linear() != p.is_linear():
                return False
            if p.is_linear() and q.to_linear() != apply_alt_bijection(
                psi, p.to_linear()
            ):
                return False
    return True


def check_pv_anonymity(
    f,
    g: MechanismSpec,
    n: int,
    m: int,
    strategy: str = "auto",
    limit: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CheckReport:
    """Relocating voters (with their proxy rankings renamed) must not move
    the winner."""
    nominal = _nominal_pair_space(n, m, factorial(n))
    scope = {"n": n, "m": m, "nominal_space": nominal}
    if strategy == "auto":
        strategy = "direct" if nominal <= DIRECT_CUTOFF else "factored"
    if strategy == "factored":
        legs = [
            ("g_anonymity", check_g_anonymity(g, n, m, limit).passed()),
            ("f_anonymity", check_f_anonymity(f, n, m, limit).passed()),
            ("selection_equivariance", _check_selection_equivariance(n)),
            ("resolution_conjugation", _check_resolution_conjugation(n, m)),
        ]
        if all(ok for _, ok in legs):
            scope["strategy"] = "factored"
            return _pass(
                "pv_anonymity",
                scope,
                "certified by composition: " + ", ".join(name for name, _ in legs)
                + ", each leg swept exhaustively at these bounds",
            )
        # a failing leg is not yet a counterexample to the pair property
        strategy = "direct"
    scope["strategy"] = "direct"
    witness = _partitioned("pv_anonymity", f, g, n, m, limit, None, workers)
    notes = "S swept via reachable out-edge pairs (exact)"
    if witness is None:
        return _pass("pv_anonymity", scope, notes)
    return _fail("pv_anonymity", scope, witness, notes)


def check_pv_neutrality(
    f,
    g: MechanismSpec,
    n: int,
    m: int,
    strategy: str = "auto",
    limit: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CheckReport:
    """Renaming alternatives everywhere must rename the winner in step."""
    nominal = _nominal_pair_space(n, m, factorial(m))
    scope = {"n": n, "m": m, "nominal_space": nominal}
    if strategy == "auto":
        strategy = "direct" if nominal <= DIRECT_CUTOFF else "factored"
    if strategy == "factored":
        legs = [
            ("g_neutrality", check_g_neutrality(g, n, m, limit).passed()),
            ("f_neutrality", check_f_neutrality(f, n, m, limit).passed()),
            ("cast_renaming", _check_cast_renaming(m)),
        ]
        if all(ok for _, ok in legs):
            scope["strategy"] = "factored"
            return _pass(
                "pv_neutrality",
                scope,
                "certified by composition: " + ", ".join(name for name, _ in legs)
                + ", each leg swept exhaustively at these bounds",
            )
        strategy = "direct"
    scope["strategy"] = "direct"
    witness = _partitioned("pv_neutrality", f, g, n, m, limit, None, workers)
    notes = "S swept via reachable out-edge pairs (exact)"
    if witness is None:
        return _pass("pv_neutrality", scope, notes)
    return _fail("pv_neutrality", scope, witness, notes)


# ---------------------------------------------------------------------------
# proxy vote monotonicity


def valid_additions(p: PartialOrder, a: int) -> list:
    """Ways to add one comparison a > b that leave a well-formed order.

    Additions that would break antisymmetry or transitive closure are not
    ballots at all, so they are outside the quantifier.
    """
    out = []
    for b in range(p.m):
        if b == a or (a, b) in p.edges or (b, a) in p.edges:
            continue
        try:
            q = make_partial_order(set(p.edges) | {(a, b)}, p.m)
        except OrderError:
            continue
        out.append(((a, b), q))
    return out


def valid_deletions(p: PartialOrder, a: int) -> list:
    """Ways to drop one comparison b > a that leave a well-formed order."""
    out = []
    for edge in sorted(p.edges):
        if edge[1] != a:
            continue
        try:
            q = make_partial_order(set(p.edges) - {edge}, p.m)
        except OrderError:
            continue
        out.append((edge, q))
    return out


def _pv_monotonicity_sweep(f, g, n, m, limit, firsts, mode) -> Optional[dict]:
    """Shared sweep for the edge-addition and edge-deletion properties.

    For each profile, hypothesized winner a, voter, and valid variant
    ballot, S is collapsed to the per-voter reachable pairs of (sincere
    out-edge, deviant out-edge); the variant only binds when the sincere
    winner really is a.
    """
    s_orders = enumerate_linear_orders(n)
    memo = WinnerMemo(f)
    budget = Budget(limit)
    variants_of = valid_additions if mode == "add" else valid_deletions
    for P in itertools.chain.from_iterable(_P_block(m, n, fi) for fi in firsts):
        exts = [linear_extensions(p) for p in P]
        permits1 = [permitted_proxies(g, P, i) for i in range(n)]
        for i in range(n):
            for a in range(m):
                for edge, p2 in variants_of(P[i], a):
                    Pdev = P[:i] + (p2,) + P[i + 1:]
                    permits2 = [permitted_proxies(g, Pdev, v) for v in range(n)]
                    pair_opts = []
                    for v in range(n):
                        seen: dict = {}
                        for s in s_orders:
                            t1 = select_out(s, permits1[v], v)
                            t2 = select_out(s, permits2[v], v)
                            seen.setdefault((t1, t2), s)
                        pair_opts.append(sorted(seen.items()))
                    for joint in itertools.product(*pair_opts):
                        out1 = tuple(pair[0][0] for pair in joint)
                        out2 = tuple(pair[0][1] for pair in joint)
                        for D in itertools.product(*exts):
                            budget.spend()
                            w1 = memo.winner(P, out1, D)
                            if w1 != a:
                                continue
                            if mode == "add":
                                d2 = d_repair(p2, D[i])
                            else:
                                d2 = D[i]
                            D2 = D[:i] + (d2,) + D[i + 1:]
                            w2 = memo.winner(Pdev, out2, D2)
                            if w2 != a:
                                S = tuple(pair[1] for pair in joint)
                                pvp1 = make_profile(P, S, D)
                                pvp2 = make_profile(Pdev, S, D2)
                                return {
                                    "voter": i,
                                    "edge": list(edge),
                                    "mode": mode,
                                    "default_repaired": d2 != D[i],
                                    "election": _election_doc(pvp1, g, f, w1),
                                    "election_deviant": _election_doc(
                                        pvp2, g, f, w2
                                    ),
                                }
    return None


_SWEEPS = {
    "pv_anonymity": _pv_anonymity_sweep,
    "pv_neutrality": _pv_neutrality_sweep,
    "pv_monotonicity": _pv_monotonicity_sweep,
}


def check_pvam(
    f,
    g: MechanismSpec,
    n: int,
    m: int,
    limit: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CheckReport:
    """Adding one comparison in the winner's favour never dethrones it."""
    scope = {
        "n": n,
        "m": m,
        "nominal_space": _nominal_pair_space(n, m, 1),
    }
    notes = "S swept via reachable out-edge pairs (exact); defaults repaired lexicographically"
    witness = _partitioned("pv_monotonicity", f, g, n, m, limit, "add", workers)
    if witness is None:
        return _pass("pvam", scope, notes)
    return _fail("pvam", scope, witness, notes)


def check_pvdm(
    f,
    g: MechanismSpec,
    n: int,
    m: int,
    limit: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CheckReport:
    """Dropping one comparison against the winner never dethrones it."""
    scope = {
        "n": n,
        "m": m,
        "nominal_space": _nominal_pair_space(n, m, 1),
    }
    notes = "S swept via reachable out-edge pairs (exact); deletions keep the default"
    witness = _partitioned("pv_monotonicity", f, g, n, m, limit, "del", workers)
    if witness is None:
        return _pass("pvdm", scope, notes)
    return _fail("pvdm", scope, witness, notes)


# ---------------------------------------------------------------------------
# witness replay


def _election_from_doc(doc, f=None):
    pvp = profile_from_json(doc["profile"])
    g = mechanism_from_json(doc["mechanism"])
    if f is None:
        f = rule_from_json(doc["rule"])
    return pvp, g, f


def replay_witness(report: CheckReport, f=None, g=None) -> bool:
    """Re-derives a fail witness from its stored data.

    Returns True when the recomputation reproduces the stored violation.
    Pass f (and g where applicable) for rules the JSON cannot rebuild.
    """
    w = report.witness
    if w is None:
        return False
    prop = report.property

    def rule():
        if f is not None:
            return f
        return rule_from_json(w["rule"])

    if prop == "f_anonymity":
        L = [linear_order_from_json(b) for b in w["ballots"]]
        L2 = [linear_order_from_json(b) for b in w["ballots_permuted"]]
        return (
            rule().winner(L) == w["winner"]
            and rule().winner(L2) == w["winner_permuted"]
            and w["winner"] != w["winner_permuted"]
        )
    if prop == "f_neutrality":
        L = [linear_order_from_json(b) for b in w["ballots"]]
        L2 = [linear_order_from_json(b) for b in w["ballots_renamed"]]
        psi = w["psi"]
        return (
            rule().winner(L) == w["winner"]
            and rule().winner(L2) == w["winner_renamed"]
            and w["winner_renamed"] != psi[w["winner"]]
        )
    if prop == "f_weak_monotonicity":
        L = [linear_order_from_json(b) for b in w["ballots"]]
        L2 = [linear_order_from_json(b) for b in w["ballots_after"]]
        return (
            rule().winner(L) == w["winner"]
            and rule().winner(L2) == w["winner_after"]
            and w["winner_after"] != w["winner"]
        )
    if prop == "f_uvai":
        L = [linear_order_from_json(b) for b in w["ballots"]]
        L2 = [linear_order_from_json(b) for b in w["ballots_augmented"]]
        return (
            rule().winner(L) == w["winner"]
            and rule().winner(L2) == w["winner_augmented"]
            and w["winner_augmented"] != w["winner"]
        )
    if prop in ("g_anonymity", "g_neutrality", "pa", "iip", "pm"):
        return _replay_mechanism_witness(prop, w, g)
    if prop == "zr":
        gg = g if g is not None else mechanism_from_json(w["mechanism"])
        pvp = profile_from_json(w["profile"])
        assign = resolve_gurus(build_delegation_graph(gg, pvp), pvp)
        i = w["voter"]
        edge = tuple(w["missing_edge"])
        return (
            assign.guru[i] == w["guru"]
            and linear_order_to_json(assign.cast[i]) == w["cast"]
            and edge in pvp.P[i]
            and edge not in assign.cast[i].as_partial_order()
        )
    if prop in ("pv_anonymity", "pv_neutrality"):
        pvp1, g1, f1 = _election_from_doc(w["election"], f)
        pvp2, g2, f2 = _election_from_doc(w["election_transformed"], f)
        w1 = run_proxy_vote(f1, g1, pvp1)
        w2 = run_proxy_vote(f2, g2, pvp2)
        if w1 != w["election"]["winner"] or w2 != w["election_transformed"]["winner"]:
            return False
        psi = w["psi"]
        if prop == "pv_anonymity":
            return w1 != w2
        return w2 != psi[w1]
    if prop in ("pvam", "pvdm"):
        pvp1, g1, f1 = _election_from_doc(w["election"], f)
        pvp2, g2, f2 = _election_from_doc(w["election_deviant"], f)
        w1 = run_proxy_vote(f1, g1, pvp1)
        w2 = run_proxy_vote(f2, g2, pvp2)
        i = w["voter"]
        edge = tuple(w["edge"])
        if prop == "pvam":
            shape = pvp2.P[i].edges == pvp1.P[i].edges | {edge} and edge[0] == w1
        else:
            shape = pvp2.P[i].edges == pvp1.P[i].edges - {edge} and edge[1] == w1
        return (
            shape
            and w1 == w["election"]["winner"]
            and w2 == w["election_deviant"]["winner"]
            and w2 != w1
        )
    raise ValueError(f"no replay routine for property {prop!r}")


def _replay_mechanism_witness(prop, w, g):
    gg = g if g is not None else mechanism_from_json(w["mechanism"])
    m = w["m"]

    def parse_profile(doc):
        return tuple(
            make_partial_order({tuple(e) for e in ballot}, m) for ballot in doc
        )

    if prop == "pa":
        # existence failures cannot be replayed from one profile; re-run the
        # search over completions for the recorded ballot
        p = make_partial_order({tuple(e) for e in w["ballot"]}, m)
        i = w["voter"]
        pool = enumerate_partial_orders(m)
        n = w["n"]
        for rest in itertools.product(pool, repeat=n - 1):
            P = rest[:i] + (p,) + rest[i:]
            if permitted_proxies(gg, P, i):
                return False
        return True
    P1 = parse_profile(w.get("profile_P") or w.get("profile_1"))
    if prop == "g_anonymity":
        psi = tuple(w["psi"])
        i = w["voter"]
        lhs = frozenset(psi[j] for j in permitted_proxies(gg, P1, i))
        rhs = permitted_proxies(gg, relocate_seats(P1, psi), psi[i])
        return lhs != rhs and sorted(rhs) == w["permitted_transformed"]
    if prop == "g_neutrality":
        psi = tuple(w["psi"])
        i = w["voter"]
        P2 = tuple(apply_alt_bijection(psi, p) for p in P1)
        return permitted_proxies(gg, P1, i) != permitted_proxies(gg, P2, i)
    if prop == "iip":
        P2 = parse_profile(w["profile_2"])
        i, j = w["voter"], w["candidate"]
        if P1[i] != P2[i] or P1[j] != P2[j]:
            return False
        m1 = j in permitted_proxies(gg, P1, i)
        m2 = j in permitted_proxies(gg, P2, i)
        return m1 == w["member_1"] and m2 == w["member_2"] and m1 != m2
    if prop == "pm":
        i, j, k = w["voter"], w["permitted_j"], w["dominating_k"]
        permit = permitted_proxies(gg, P1, i)
        return (
            j in permit
            and k not in permit
            and agree(P1[i], P1[j]) <= agree(P1[i], P1[k])
            and disagree(P1[i], P1[k]) <= disagree(P1[i], P1[j])
        )
    raise ValueError(prop)
