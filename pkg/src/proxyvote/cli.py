"""Command-line harness: election runs, axiom sweeps, manipulation
searches, and one-shot theorem verification recipes.

Every run is deterministic (the library uses no randomness), so repeated
invocations with the same arguments produce byte-identical output.  Heavy
sweeps print a loose upper bound on the evaluation count first and refuse
to start above the guard threshold outside the default desk-scale bounds
unless --force is given.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys

from . import axioms
from .axioms import BoundsExceeded, CheckReport, DEFAULT_BUDGET
from .election import (
    ElectionError,
    MajorityRule,
    MedianRule,
    borda,
    build_delegation_graph,
    make_profile,
    make_scoring_rule,
    plurality,
    profile_from_json,
    profile_to_json,
    resolve_gurus,
    rule_from_json,
    rule_to_json,
    run_proxy_vote,
    veto,
)
from .manipulation import (
    ConstructionError,
    construct_thm3,
    construct_thm5,
    construct_thm6,
    find_gs,
    find_iia,
    find_pc,
    find_pm,
    instance_from_json,
)
from .mechanisms import (
    BUILTIN_KINDS,
    MechanismError,
    MechanismSpec,
    SUBSET,
    SUBSET_IF_ALL_LINEAR_AGREE,
    SUBSET_LINEAR_STRICT,
    TRIV,
    UNIV,
    mechanism_from_json,
    mechanism_to_json,
)
from .orders import (
    LinearOrder,
    OrderError,
    enumerate_linear_orders,
    enumerate_partial_orders,
    is_single_peaked_ballot,
    linear_order_to_json,
)

GUARD = 1_000_000_000

_LETTERS = "abcdefghij"


class CliError(Exception):
    """Bad arguments or refused work; exits with status 2."""


# ---------------------------------------------------------------------------
# argument parsing helpers


def _parse_alt(tok: str) -> int:
    tok = tok.strip()
    if tok.isdigit():
        return int(tok)
    if len(tok) == 1 and tok in _LETTERS:
        return _LETTERS.index(tok)
    raise CliError("cannot read alternative %r (use 0,1,... or a,b,...)" % tok)


def _parse_alt_seq(text: str) -> tuple:
    """Alternatives as 'acb', 'a,c,b' or '0,2,1'."""
    if "," in text:
        return tuple(_parse_alt(t) for t in text.split(","))
    return tuple(_parse_alt(ch) for ch in text)


def _tiebreak(args, m: int) -> LinearOrder:
    if getattr(args, "tiebreak", None):
        ranking = _parse_alt_seq(args.tiebreak)
    else:
        ranking = tuple(range(m))
    try:
        return LinearOrder(ranking)
    except OrderError as exc:
        raise CliError("bad tiebreak: %s" % exc)


def make_rule(args, n: int, m: int):
    """Build the rule named by --rule with its option flags."""
    name = args.rule
    if name == "borda":
        return borda(m, _tiebreak(args, m))
    if name == "plurality":
        return plurality(m, _tiebreak(args, m))
    if name == "veto":
        return veto(m, _tiebreak(args, m))
    if name == "scoring":
        if not args.weights:
            raise CliError("--rule scoring needs --weights (e.g. 2,1,0)")
        weights = tuple(int(w) for w in args.weights.split(","))
        return make_scoring_rule(weights, _tiebreak(args, m))
    if name == "majority":
        return MajorityRule()
    if name == "median":
        if not args.axis:
            raise CliError("--rule median needs --axis (e.g. a,c,b)")
        axis = _parse_alt_seq(args.axis)
        if args.phantoms is None:
            raise CliError("--rule median needs --phantoms (e.g. a,a)")
        phantoms = _parse_alt_seq(args.phantoms) if args.phantoms else ()
        return MedianRule(axis, phantoms)
    raise CliError("unknown rule %r" % name)


def make_mechanism(args) -> MechanismSpec:
    kind = args.mechanism
    if kind not in BUILTIN_KINDS:
        raise CliError(
            "unknown mechanism %r (choose from %s)"
            % (kind, ", ".join(sorted(BUILTIN_KINDS)))
        )
    dmap = None
    if args.dictator_map:
        dmap = tuple(int(t) for t in args.dictator_map.split(","))
    return MechanismSpec(kind, dictator_map=dmap)


def _domain(args):
    if getattr(args, "domain", None) in (None, "all"):
        return "all"
    if args.domain == "single_peaked":
        if not args.axis:
            raise CliError("--domain single_peaked needs --axis")
        return ("single_peaked", _parse_alt_seq(args.axis))
    raise CliError("unknown domain %r" % args.domain)


# ---------------------------------------------------------------------------
# cost guard

_LINEAR_ONLY = {"f_anonymity", "f_neutrality", "f_weak_monotonicity",
                "f_uvai", "gs", "iia"}


def _estimate(task: str, n: int, m: int, strategy: str = "auto") -> tuple:
    """Loose upper bound on election evaluations, with its formula.

    The enumeration engines collapse proxy-ranking quantifiers to
    reachable out-edge classes, so true counts run far below these
    products; the bound only guards against hopeless parameter choices.
    """
    pool = len(enumerate_partial_orders(m)) if m <= 5 else 10 ** 9
    lin = math.factorial(m)
    fact = math.factorial(n)
    ext = lin  # widest extension count (the empty ballot)
    if task in ("f_anonymity", "f_neutrality"):
        est = lin ** n * fact
        formula = "%d^%d x %d!" % (lin, n, n)
    elif task == "f_weak_monotonicity":
        est = lin ** n * n * m
        formula = "%d^%d x %d x %d" % (lin, n, n, m)
    elif task == "f_uvai":
        est = lin ** n
        formula = "%d^%d" % (lin, n)
    elif task in ("g_anonymity", "g_neutrality"):
        est = pool ** n * fact * n
        formula = "%d^%d x %d! x %d" % (pool, n, n, n)
    elif task == "pa":
        est = pool * lin * n
        formula = "%d x %d x %d" % (pool, lin, n)
    elif task in ("iip", "pm"):
        est = pool ** n * n * n
        formula = "%d^%d x %d^2" % (pool, n, n)
    elif task == "zr":
        est = pool ** n * n ** n
        formula = "%d^%d x %d^%d" % (pool, n, n, n)
    elif task in ("pv_anonymity", "pv_neutrality"):
        if strategy == "direct":
            est = pool ** n * fact ** n * ext ** n * fact
            formula = "%d^%d x %d!^%d x %d^%d x %d!" % (
                pool, n, n, n, ext, n, n)
        else:
            est = pool ** n * fact * n + lin ** n * fact
            formula = "legs: %d^%d x %d! x %d + %d^%d x %d!" % (
                pool, n, n, n, lin, n, n)
    elif task in ("pvam", "pvdm"):
        est = pool ** n * n * m * m * n ** n * ext ** n
        formula = "%d^%d x %d x %d^2 x %d^%d x %d^%d" % (
            pool, n, n, m, n, n, ext, n)
    elif task in ("gs", "iia"):
        est = lin ** (n + 1) * n
        formula = "%d^%d x %d" % (lin, n + 1, n)
    elif task == "pc":
        est = pool ** n * n ** n * n * n * ext ** n
        formula = "%d^%d x %d^%d x %d^2 x %d^%d" % (
            pool, n, n, n, n, ext, n)
    elif task == "pm_search":
        est = pool ** (n + 1) * n * n ** n * ext ** n
        formula = "%d^%d x %d x %d^%d x %d^%d" % (
            pool, n + 1, n, n, n, ext, n)
    else:
        est, formula = 0, "n/a"
    return est, formula


def _guard(task: str, n: int, m: int, args, strategy: str = "auto"):
    est, formula = _estimate(task, n, m, strategy)
    if not args.quiet:
        print("estimated evaluations (loose bound): %s ~ %.2g" % (formula, est))
    linear_only = task in _LINEAR_ONLY
    within = m <= 3 and n <= (4 if linear_only else 3)
    if est > GUARD and not within and not getattr(args, "force", False):
        raise CliError(
            "refusing a sweep bounded by %.2g evaluations at n=%d, m=%d; "
            "rerun with --force to insist" % (est, n, m)
        )


# ---------------------------------------------------------------------------
# output


def _emit(doc: dict, args, table_lines) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.quiet:
        sys.stdout.write(text)
        return
    for line in table_lines:
        print(line)
    if args.out:
        print("report written to %s" % args.out)


def _kv(rows) -> list:
    width = max(len(k) for k, _ in rows)
    return ["%-*s  %s" % (width, k, v) for k, v in rows]


# ---------------------------------------------------------------------------
# run


def _load_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _extract_election(doc: dict, args):
    """Accept a bare profile, an election document, a checker witness, or
    a manipulation instance; return (profile, rule, mechanism, recorded)."""
    if "report" in doc and isinstance(doc["report"], dict):
        doc = doc["report"]
    if "instance" in doc and isinstance(doc["instance"], dict):
        doc = doc["instance"]
    if "witness" in doc and isinstance(doc["witness"], dict):
        w = doc["witness"]
        if "election" in w:
            doc = w["election"]
        elif "profile" in w:
            doc = w
    elif "election" in doc:
        doc = doc["election"]
    if "P" in doc and "m" in doc:
        profile_doc, recorded = doc, None
    elif "profile" in doc:
        profile_doc = doc["profile"]
        recorded = doc.get("winner", doc.get("winner_truthful"))
    else:
        raise CliError("no profile found in the input document")
    pvp = profile_from_json(profile_doc)
    rule = None
    if args.rule:
        rule = make_rule(args, len(pvp.P), pvp.m)
    elif "rule" in doc and doc["rule"] is not None:
        rule = rule_from_json(doc["rule"])
    if rule is None:
        raise CliError("no rule given: pass --rule or embed one in the JSON")
    if args.mechanism:
        mech = make_mechanism(args)
    elif "mechanism" in doc:
        mech = mechanism_from_json(doc["mechanism"])
    else:
        raise CliError("no mechanism given: pass --mechanism or embed one")
    return pvp, rule, mech, recorded


def cmd_run(args) -> int:
    doc = _load_json(args.profile)
    pvp, rule, mech, recorded = _extract_election(doc, args)
    assign = resolve_gurus(build_delegation_graph(mech, pvp), pvp)
    winner = rule.winner(assign.cast)
    out = {
        "command": "run",
        "winner": winner,
        "guru": list(assign.guru),
        "cast": [linear_order_to_json(b) for b in assign.cast],
        "cycle_members": sorted(assign.cycle_members),
    }
    rows = [
        ("winner", winner),
        ("guru", " ".join(str(x) for x in assign.guru)),
        ("cycle members", " ".join(str(x) for x in sorted(assign.cycle_members)) or "-"),
    ]
    code = 0
    if recorded is not None:
        out["recorded_winner"] = recorded
        out["matches_recorded"] = recorded == winner
        rows.append(("recorded winner", recorded))
        rows.append(("matches recorded", out["matches_recorded"]))
        code = 0 if out["matches_recorded"] else 1
    _emit(out, args, _kv(rows))
    return code


# ---------------------------------------------------------------------------
# check

_F_CHECKS = {
    "f_anonymity": axioms.check_f_anonymity,
    "f_neutrality": axioms.check_f_neutrality,
    "f_weak_monotonicity": axioms.check_f_weak_monotonicity,
    "f_uvai": axioms.check_f_uvai,
}
_G_CHECKS = {
    "g_anonymity": axioms.check_g_anonymity,
    "g_neutrality": axioms.check_g_neutrality,
    "pa": axioms.check_pa,
    "iip": axioms.check_iip,
    "pm": axioms.check_pm,
    "zr": axioms.check_zr,
}
_PAIR_CHECKS = {
    "pv_anonymity": axioms.check_pv_anonymity,
    "pv_neutrality": axioms.check_pv_neutrality,
}
_MONO_CHECKS = {
    "pvam": axioms.check_pvam,
    "pvdm": axioms.check_pvdm,
}
PROPERTIES = sorted({**_F_CHECKS, **_G_CHECKS, **_PAIR_CHECKS, **_MONO_CHECKS})


def cmd_check(args) -> int:
    prop, n, m = args.property, args.n, args.m
    limit = args.limit if args.limit else DEFAULT_BUDGET
    if prop in _F_CHECKS:
        f = make_rule(args, n, m)
        _guard(prop, n, m, args, strategy=args.strategy)
        report = _F_CHECKS[prop](f, n, m, limit=limit)
    elif prop in _G_CHECKS:
        g = make_mechanism(args)
        _guard(prop, n, m, args, strategy=args.strategy)
        report = _G_CHECKS[prop](g, n, m, limit=limit)
    elif prop in _PAIR_CHECKS:
        f, g = make_rule(args, n, m), make_mechanism(args)
        _guard(prop, n, m, args, strategy=args.strategy)
        report = _PAIR_CHECKS[prop](
            f, g, n, m, strategy=args.strategy, limit=limit,
            workers=args.workers,
        )
    else:
        f, g = make_rule(args, n, m), make_mechanism(args)
        _guard(prop, n, m, args, strategy=args.strategy)
        report = _MONO_CHECKS[prop](f, g, n, m, limit=limit,
                                    workers=args.workers)
    doc = {"command": "check", "report": report.to_json(),
           "expect": args.expect}
    matched = args.expect == "any" or report.verdict == args.expect
    doc["matched"] = matched
    rows = [
        ("property", report.property),
        ("scope", json.dumps(report.scope)),
        ("verdict", report.verdict.upper()),
        ("witness", "present" if report.witness else "-"),
    ]
    if report.notes:
        rows.append(("notes", report.notes))
    if args.expect != "any":
        rows.append(("expected", args.expect))
    _emit(doc, args, _kv(rows))
    return 0 if matched else 1


# ---------------------------------------------------------------------------
# find


def cmd_find(args) -> int:
    kind, n, m = args.kind, args.n, args.m
    domain = _domain(args)
    limit = args.limit if args.limit else DEFAULT_BUDGET
    f = make_rule(args, n, m)
    task = "pm_search" if kind == "pm" else kind
    _guard(task, n, m, args)
    kw = {"limit": limit, "workers": args.workers}
    if kind == "gs":
        finder = lambda **k: find_gs(f, n, m, domain=domain, **k)
    elif kind == "iia":
        finder = lambda **k: find_iia(f, n, m, **k)
    elif kind == "pc":
        g = make_mechanism(args)
        finder = lambda **k: find_pc(f, g, n, m, **k)
    else:
        g = make_mechanism(args)
        finder = lambda **k: find_pm(f, g, n, m, domain=domain, **k)
    doc = {"command": "find", "kind": kind, "n": n, "m": m}
    rows = [("kind", kind), ("bounds", "n=%d m=%d" % (n, m))]
    if args.count:
        total = finder(count=True, **kw)
        doc["count"] = total
        rows.append(("instances", total))
        found = total > 0
    else:
        inst = finder(**kw)
        found = inst is not None
        doc["found"] = found
        doc["instance"] = inst.to_json() if found else None
        rows.append(("found", found))
        if found:
            rows.append(("manipulator", inst.manipulator))
            rows.append(("winner truthful", inst.winner_truthful))
            rows.append(("winner deviant", inst.winner_deviant))
    matched = (
        args.expect == "any"
        or (args.expect == "found" and found)
        or (args.expect == "none" and not found)
    )
    doc["expect"] = args.expect
    doc["matched"] = matched
    _emit(doc, args, _kv(rows))
    return 0 if matched else 1


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args) -> int:
    thm = args.theorem
    try:
        if thm == "thm3":
            rule = make_rule(args, args.n, 3)
            built = construct_thm3(args.n, rule)
            doc = {"command": "construct", "theorem": thm,
                   "result": built.to_json(),
                   "rule": rule_to_json(rule),
                   "mechanism": mechanism_to_json(MechanismSpec(SUBSET))}
            rows = [("theorem", thm), ("branch", built.branch),
                    ("winners", "%d -> %d" % built.winners)]
        elif thm == "thm5":
            f = make_rule(args, args.n, args.m)
            if args.instance:
                iia = instance_from_json(_load_json(args.instance))
            else:
                iia = find_iia(f, args.n, args.m)
                if iia is None:
                    raise CliError(
                        "no order-preserving manipulation at n=%d, m=%d; "
                        "supply --instance" % (args.n, args.m)
                    )
            built = construct_thm5(f, iia)
            doc = {"command": "construct", "theorem": thm,
                   "result": built.to_json(), "rule": rule_to_json(f),
                   "mechanism": mechanism_to_json(MechanismSpec(SUBSET))}
            rows = [("theorem", thm),
                    ("voters", len(built.profile.P)),
                    ("manipulator", built.manipulator),
                    ("winners", "%d -> %d" % (built.winner_truthful,
                                              built.winner_deviant))]
        else:
            rule = make_rule(args, args.n, 3)
            built = construct_thm6(args.n, rule)
            doc = {"command": "construct", "theorem": thm,
                   "result": built.to_json(), "rule": rule_to_json(rule),
                   "mechanism": mechanism_to_json(MechanismSpec(SUBSET))}
            rows = [("theorem", thm),
                    ("manipulator", built.manipulator),
                    ("winners", "%d -> %d" % (built.winner_truthful,
                                              built.winner_deviant))]
    except ConstructionError as exc:
        doc = {"command": "construct", "theorem": thm, "error": str(exc)}
        _emit(doc, args, _kv([("theorem", thm), ("error", str(exc))]))
        return 1
    _emit(doc, args, _kv(rows))
    return 0


# ---------------------------------------------------------------------------
# verify-theorem recipes


def _check_entry(name: str, report: CheckReport) -> dict:
    return {"name": name, "verdict": report.verdict,
            "report": report.to_json()}


def _verify_t1(workers: int) -> dict:
    """The ballot-containment mechanism passes all four axioms at (3,3);
    each of the four neighbouring mechanisms fails exactly its own."""
    checks = []
    ok = True
    checkers = (("pa", axioms.check_pa), ("iip", axioms.check_iip),
                ("pm", axioms.check_pm), ("zr", axioms.check_zr))
    expected_failure = {
        TRIV: "pa",
        UNIV: "zr",
        SUBSET_LINEAR_STRICT: "pm",
        SUBSET_IF_ALL_LINEAR_AGREE: "iip",
    }
    for kind in (SUBSET, TRIV, UNIV, SUBSET_LINEAR_STRICT,
                 SUBSET_IF_ALL_LINEAR_AGREE):
        g = MechanismSpec(kind)
        for prop, fn in checkers:
            report = fn(g, 3, 3)
            want = "fail" if expected_failure.get(kind) == prop else "pass"
            entry = _check_entry("%s %s" % (kind, prop), report)
            entry["expected"] = want
            entry["ok"] = report.verdict == want
            ok = ok and entry["ok"]
            checks.append(entry)
    return {"verdict": "pass" if ok else "fail", "checks": checks}


class TableRule:
    """Resolute rule given by an explicit table over all linear profiles."""

    def __init__(self, table: dict):
        self.table = table
        self.weights = None

    def winner(self, ballots) -> int:
        return self.table[tuple(ballots)]


def _verify_t2(workers: int) -> dict:
    """Exhaust all 256 resolute rules on 3 voters and 2 alternatives;
    exactly the majority rule passes the four proxy-vote properties."""
    n, m = 3, 2
    profiles = list(itertools.product(enumerate_linear_orders(m), repeat=n))
    g = MechanismSpec(SUBSET)
    survivors = []
    for code in range(2 ** len(profiles)):
        table = {prof: (code >> k) & 1 for k, prof in enumerate(profiles)}
        f = TableRule(table)
        passed = (
            axioms.check_pvam(f, g, n, m).passed()
            and axioms.check_pvdm(f, g, n, m).passed()
            and axioms.check_pv_anonymity(f, g, n, m, strategy="direct").passed()
            and axioms.check_pv_neutrality(f, g, n, m, strategy="direct").passed()
        )
        if passed:
            survivors.append(code)
    majority = MajorityRule()
    majority_code = 0
    for k, prof in enumerate(profiles):
        majority_code |= majority.winner(prof) << k
    ok = survivors == [majority_code]
    detail = {
        "name": "exhaustive rule survey at (3, 2)",
        "tables": 2 ** len(profiles),
        "survivors": survivors,
        "majority_table_code": majority_code,
        "survivor_is_majority_pointwise": ok,
        "ok": ok,
    }
    return {"verdict": "pass" if ok else "fail", "checks": [detail]}


def _verify_t3(workers: int) -> dict:
    """Scoring rules break addition monotonicity: the constructed pair of
    elections flips the winner from a to c at every branch."""
    checks = []
    ok = True
    abc = LinearOrder((0, 1, 2))
    cab = LinearOrder((2, 0, 1))
    rule14 = borda(3, abc)
    built = construct_thm3(14, rule14)
    sin = resolve_gurus(
        build_delegation_graph(MechanismSpec(SUBSET), built.sincere),
        built.sincere)
    dev = resolve_gurus(
        build_delegation_graph(MechanismSpec(SUBSET), built.deviant),
        built.deviant)

    def count(cast):
        scores = [0, 0, 0]
        for b in cast:
            for pos, alt in enumerate(b.ranking):
                scores[alt] += (2, 1, 0)[pos]
        return scores

    s_sin, s_dev = count(sin.cast), count(dev.cast)
    entry = {
        "name": "borda n=14 exact scores",
        "sincere_scores": s_sin,
        "deviant_scores": s_dev,
        "ok": s_sin == [17, 8, 17] and s_dev == [17, 6, 19],
    }
    ok = ok and entry["ok"]
    checks.append(entry)
    for n, rule, want in ((14, rule14, "ac_even"),
                          (15, borda(3, abc), "ac_odd"),
                          (15, borda(3, cab), "ca_odd"),
                          (16, borda(3, cab), "ca_even")):
        try:
            built = construct_thm3(n, rule)
            entry = {"name": "branch n=%d" % n, "branch": built.branch,
                     "winners": list(built.winners),
                     "ok": built.branch == want and built.winners == (0, 2)}
        except ConstructionError as exc:
            entry = {"name": "branch n=%d" % n, "error": str(exc),
                     "ok": False}
        ok = ok and entry["ok"]
        checks.append(entry)
    return {"verdict": "pass" if ok else "fail", "checks": checks}


def _verify_t4(workers: int) -> dict:
    """Proxy-choice manipulability implies ballot manipulability for the
    scoring battery at (3,3); the veto rule makes the implication material."""
    checks = []
    ok = True
    g = MechanismSpec(SUBSET)
    abc = LinearOrder((0, 1, 2))
    for name, f in (("borda", borda(3, abc)),
                    ("plurality", plurality(3, abc)),
                    ("veto", veto(3, abc))):
        pc = find_pc(f, g, 3, 3, workers=workers)
        gs = find_gs(f, 3, 3, workers=workers)
        holds = pc is None or gs is not None
        entry = {"name": name, "proxy_choice_hit": pc is not None,
                 "ballot_hit": gs is not None, "implication_holds": holds,
                 "ok": holds}
        if pc is not None:
            entry["pc_verified"] = pc.verify(f, g)
            entry["ok"] = entry["ok"] and entry["pc_verified"]
        ok = ok and entry["ok"]
        checks.append(entry)
    return {"verdict": "pass" if ok else "fail", "checks": checks}


def _verify_t5(workers: int) -> dict:
    """An order-preserving manipulation lifts to a proxy-choice one after
    padding the electorate with one voter per ranking."""
    checks = []
    ok = True
    f = borda(3, LinearOrder((0, 1, 2)))
    for n in (2, 3):
        report = axioms.check_f_uvai(f, n, 3)
        entry = _check_entry("borda uniform-addition invariance n=%d" % n,
                             report)
        entry["ok"] = report.passed()
        ok = ok and entry["ok"]
        checks.append(entry)
    iia = find_iia(f, 3, 3, workers=workers)
    entry = {"name": "order-preserving instance at (3,3)",
             "found": iia is not None, "ok": iia is not None}
    ok = ok and entry["ok"]
    checks.append(entry)
    if iia is not None:
        built = construct_thm5(f, iia)
        entry = {
            "name": "lifted proxy-choice instance",
            "voters": len(built.profile.P),
            "winners": [built.winner_truthful, built.winner_deviant],
            "verified": built.verify(f, MechanismSpec(SUBSET)),
            "ok": len(built.profile.P) == 9
            and built.verify(f, MechanismSpec(SUBSET)),
        }
        ok = ok and entry["ok"]
        checks.append(entry)
    return {"verdict": "pass" if ok else "fail", "checks": checks}


def _verify_t6(workers: int) -> dict:
    """The median rule is strategyproof on single-peaked ballots yet the
    constructed partial-ballot deviation still moves the winner."""
    checks = []
    ok = True
    axis = (0, 2, 1)
    rule = MedianRule(axis, (0, 0))
    built = construct_thm6(3, rule)
    entry = {
        "name": "constructed instance n=3",
        "winners": [built.winner_truthful, built.winner_deviant],
        "prefers_deviant": (built.winner_deviant, built.winner_truthful)
        in built.profile.P[0],
        "verified": built.verify(rule, MechanismSpec(SUBSET)),
    }
    entry["ok"] = (entry["winners"] == [0, 2] and entry["prefers_deviant"]
                   and entry["verified"])
    ok = ok and entry["ok"]
    checks.append(entry)
    gs = find_gs(rule, 3, 3, domain=("single_peaked", axis), workers=workers)
    entry = {"name": "ballot manipulation search on the single-peaked domain",
             "found": gs is not None, "ok": gs is None}
    ok = ok and entry["ok"]
    checks.append(entry)
    return {"verdict": "pass" if ok else "fail", "checks": checks}


_THEOREMS = {
    "T1": _verify_t1,
    "T2": _verify_t2,
    "T3": _verify_t3,
    "T4": _verify_t4,
    "T5": _verify_t5,
    "T6": _verify_t6,
}


def cmd_verify(args) -> int:
    tid = args.theorem.upper()
    if tid not in _THEOREMS:
        raise CliError("unknown theorem %r (T1..T6)" % args.theorem)
    result = _THEOREMS[tid](args.workers)
    doc = {"command": "verify-theorem", "theorem": tid,
           "verdict": result["verdict"], "checks": result["checks"]}
    rows = [("theorem", tid), ("verdict", result["verdict"].upper())]
    for entry in result["checks"]:
        name = entry.get("name", "check")
        state = "ok" if entry.get("ok", entry.get("verdict") == "pass") \
            else "FAIL"
        rows.append((name, state))
    _emit(doc, args, _kv(rows))
    return 0 if result["verdict"] == "pass" else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxyvote",
        description="Proxy vote elections, axiom sweeps, and manipulation "
                    "searches by exhaustive enumeration.",
        epilog="All commands are deterministic; there is no randomness and "
               "no seed. Repeated runs emit byte-identical reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bounds=True):
        p.add_argument("--rule", help="borda | plurality | veto | scoring | "
                                      "majority | median")
        p.add_argument("--tiebreak", help="e.g. abc or 0,1,2 (default: "
                                          "alphabetical)")
        p.add_argument("--weights", help="scoring weights, e.g. 2,1,0")
        p.add_argument("--axis", help="median axis / single-peaked axis, "
                                      "e.g. a,c,b")
        p.add_argument("--phantoms", help="median phantom peaks, e.g. a,a")
        p.add_argument("--mechanism", help="subset | triv | univ | "
                                           "subset_linear_strict | "
                                           "subset_if_all_linear_agree | "
                                           "dictator")
        p.add_argument("--dictator-map", help="dictator targets, e.g. 1,2,0")
        if bounds:
            p.add_argument("--n", type=int, required=True,
                           help="number of voters")
            p.add_argument("--m", type=int, required=True,
                           help="number of alternatives")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--limit", type=int, default=0,
                       help="evaluation budget (default 10^9)")
        p.add_argument("--force", action="store_true",
                       help="run past the cost guard")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--quiet", action="store_true",
                       help="print the JSON report only")

    p = sub.add_parser("run", help="resolve one election from JSON")
    p.add_argument("--profile", required=True,
                   help="profile/election/witness JSON file, or - for stdin")
    common(p, bounds=False)
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("check", help="exhaustively check one property")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--strategy", default="auto",
                   choices=["auto", "direct", "factored"])
    p.add_argument("--expect", default="any", choices=["pass", "fail", "any"])
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("find", help="search for a manipulation instance")
    p.add_argument("--kind", required=True, choices=["gs", "iia", "pc", "pm"])
    p.add_argument("--domain", default="all", choices=["all", "single_peaked"])
    p.add_argument("--count", action="store_true",
                   help="tally all instances instead of stopping at one")
    p.add_argument("--expect", default="any", choices=["found", "none", "any"])
    common(p)
    p.set_defaults(fn=cmd_find)

    p = sub.add_parser("construct", help="build a known counterexample")
    p.add_argument("--theorem", required=True,
                   choices=["thm3", "thm5", "thm6"])
    p.add_argument("--instance", help="JSON instance to lift (thm5)")
    common(p, bounds=False)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify-theorem", help="run a one-shot recipe")
    p.add_argument("theorem", help="T1 | T2 | T3 | T4 | T5 | T6")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BoundsExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (OrderError, ElectionError, MechanismError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
