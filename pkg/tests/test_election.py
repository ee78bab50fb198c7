import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import positional_scores
from proxyvote.election import (
    DelegationGraph,
    ElectionError,
    MajorityRule,
    MedianRule,
    NotSinglePeaked,
    ProxyVoteProfile,
    ScoringRule,
    borda,
    build_delegation_graph,
    majority_winner,
    make_profile,
    make_scoring_rule,
    median_winner,
    plurality,
    profile_from_json,
    profile_to_json,
    resolve_gurus,
    rule_from_json,
    rule_to_json,
    run_proxy_vote,
    scoring_winner,
    veto,
)
from proxyvote.mechanisms import (
    BUILTIN_KINDS,
    SUBSET,
    TRIV,
    UNIV,
    MechanismSpec,
    permitted_proxies,
)
from proxyvote.orders import (
    LinearOrder,
    enumerate_linear_orders,
    enumerate_partial_orders,
    is_subset,
    linear_extensions,
    make_partial_order,
)

A, B, C = 0, 1, 2


def lin(*ranking):
    return LinearOrder(tuple(ranking))


def po(edges, m=3):
    return make_partial_order(set(edges), m)


EMPTY = po([])
S_ID3 = lin(0, 1, 2)
D_ABC = lin(A, B, C)


def simple_profile(P, S=None, D=None):
    """Fill S with identity-ish rankings and D with lexicographic extensions."""
    n = len(P)
    if S is None:
        S = [LinearOrder(tuple(range(n)))] * n
    if D is None:
        D = [linear_extensions(p)[0] for p in P]
    return make_profile(P, S, D)


class TestProfileValidation:
    def test_default_must_extend_ballot(self):
        with pytest.raises(ElectionError):
            make_profile([po([(A, B)])], [lin(0)], [lin(B, A, C)])

    def test_length_mismatch(self):
        with pytest.raises(ElectionError):
            make_profile([EMPTY, EMPTY], [lin(0, 1)], [D_ABC, D_ABC])

    def test_s_must_rank_voters(self):
        with pytest.raises(ElectionError):
            make_profile([EMPTY, EMPTY], [lin(0, 2), lin(0, 1)], [D_ABC, D_ABC])

    def test_valid(self):
        pvp = simple_profile([po([(A, B)]), EMPTY])
        assert pvp.n == 2 and pvp.m == 3


class TestBuildDelegationGraph:
    def test_linear_ballot_keeps_vote(self):
        pvp = simple_profile([po([(A, B), (B, C), (A, C)]), EMPTY])
        for kind in BUILTIN_KINDS:
            R = build_delegation_graph(MechanismSpec(kind), pvp)
            assert R.out[0] == 0

    def test_s_max_among_permitted(self):
        # voter 0 holds a>b; voters 1 and 2 both extend it
        P = [po([(A, B)]), lin(A, B, C).as_partial_order(), lin(A, C, B).as_partial_order()]
        S0 = lin(2, 1, 0)  # prefers 2 as delegate
        pvp = make_profile(P, [S0, S_ID3, S_ID3], [D_ABC, lin(A, B, C), lin(A, C, B)])
        R = build_delegation_graph(MechanismSpec(SUBSET), pvp)
        assert permitted_proxies(MechanismSpec(SUBSET), P, 0) == frozenset({1, 2})
        assert R.out[0] == 2

    def test_triv_empty_permitted_set_keeps_vote(self):
        pvp = simple_profile([po([(A, B)]), EMPTY, EMPTY])
        R = build_delegation_graph(MechanismSpec(TRIV), pvp)
        assert R.out[0] == 0

    def test_empty_ballot_delegates(self):
        pvp = simple_profile([EMPTY, EMPTY], S=[lin(1, 0), lin(0, 1)])
        R = build_delegation_graph(MechanismSpec(TRIV), pvp)
        assert R.out == (1, 0)


class TestResolveGurus:
    def test_all_linear_is_classical(self):
        P = [lin(A, B, C).as_partial_order(), lin(C, B, A).as_partial_order()]
        pvp = make_profile(P, [lin(0, 1)] * 2, [lin(A, B, C), lin(C, B, A)])
        for kind in BUILTIN_KINDS:
            R = build_delegation_graph(MechanismSpec(kind), pvp)
            got = resolve_gurus(R, pvp)
            assert got.guru == (0, 1)
            assert got.cast == (lin(A, B, C), lin(C, B, A))
            assert got.cycle_members == frozenset()

    def test_two_cycle_casts_defaults(self):
        pvp = simple_profile(
            [EMPTY, EMPTY],
            S=[lin(1, 0), lin(0, 1)],
            D=[lin(A, B, C), lin(C, B, A)],
        )
        R = build_delegation_graph(MechanismSpec(UNIV), pvp)
        assert R.out == (1, 0)
        got = resolve_gurus(R, pvp)
        assert got.cycle_members == frozenset({0, 1})
        assert got.guru == (0, 1)
        assert got.cast == (lin(A, B, C), lin(C, B, A))

    def test_one_step_chain(self):
        P = [EMPTY, lin(B, A, C).as_partial_order()]
        pvp = make_profile(P, [lin(1, 0), lin(0, 1)], [D_ABC, lin(B, A, C)])
        R = build_delegation_graph(MechanismSpec(UNIV), pvp)
        got = resolve_gurus(R, pvp)
        assert got.guru == (1, 1)
        assert got.cast[0] == lin(B, A, C)

    def test_delegation_into_cycle_inherits_default(self):
        # 0 -> 1 <-> 2: the cycle members cast defaults, 0 follows 1
        pvp = simple_profile(
            [EMPTY, EMPTY, EMPTY],
            S=[lin(1, 2, 0), lin(2, 0, 1), lin(1, 0, 2)],
            D=[lin(A, B, C), lin(B, A, C), lin(C, B, A)],
        )
        R = build_delegation_graph(MechanismSpec(UNIV), pvp)
        assert R.out == (1, 2, 1)
        got = resolve_gurus(R, pvp)
        assert got.cycle_members == frozenset({1, 2})
        assert got.guru == (1, 1, 2)
        assert got.cast == (lin(B, A, C), lin(B, A, C), lin(C, B, A))

    def test_self_loop_with_partial_ballot_casts_default(self):
        pvp = make_profile([po([(A, B)])], [lin(0)], [lin(A, C, B)])
        got = resolve_gurus(DelegationGraph((0,)), pvp)
        assert got.cast == (lin(A, C, B),)
        assert got.cycle_members == frozenset()


# guru profile used by the n=14 scoring example: one delegating voter whose
# guru casts b>a>c, then fixed fillers
N14_REST = (
    [lin(B, A, C)]
    + [lin(C, A, B)]
    + [lin(B, C, A)] * 2
    + [lin(A, C, B)]
    + [lin(C, A, B)] * 4
    + [lin(A, C, B)] * 4
)


class TestScoring:
    def test_unanimous_top(self):
        rule = borda(3, D_ABC)
        assert scoring_winner(rule, [lin(A, B, C), lin(A, C, B)]) == A

    def test_n14_sincere_scores(self):
        ballots = [lin(B, A, C)] + N14_REST
        weights = (2, 1, 0)
        assert positional_scores(weights, ballots) == [17, 8, 17]
        rule = ScoringRule(weights, D_ABC)  # tiebreak puts a over c
        assert scoring_winner(rule, ballots) == A

    def test_n14_deviant_scores(self):
        ballots = [lin(C, A, B)] + N14_REST
        weights = (2, 1, 0)
        assert positional_scores(weights, ballots) == [17, 6, 19]
        assert scoring_winner(ScoringRule(weights, D_ABC), ballots) == C

    def test_tiebreak_direction(self):
        rule = borda(3, lin(C, B, A))
        ballots = [lin(A, B, C), lin(C, B, A)]
        # a and c tie at 2 points; tiebreak prefers c
        assert scoring_winner(rule, ballots) == C

    def test_presets(self):
        assert borda(3, D_ABC).weights == (2, 1, 0)
        assert plurality(4, lin(0, 1, 2, 3)).weights == (1, 0, 0, 0)
        assert veto(3, D_ABC).weights == (1, 1, 0)

    def test_rational_weights_normalized(self):
        from fractions import Fraction

        rule = make_scoring_rule([1, Fraction(1, 2), 0], D_ABC)
        assert rule.weights == (2, 1, 0)

    def test_bad_weights_rejected(self):
        with pytest.raises(ElectionError):
            ScoringRule((0, 1, 2), D_ABC)
        with pytest.raises(ElectionError):
            ScoringRule((1, 1, 1), D_ABC)

    def test_matches_oracle_on_all_small_profiles(self):
        orders = enumerate_linear_orders(3)
        for weights in [(2, 1, 0), (1, 0, 0), (1, 1, 0)]:
            rule = ScoringRule(weights, D_ABC)
            for ballots in itertools.product(orders, repeat=2):
                scores = positional_scores(weights, ballots)
                got = scoring_winner(rule, list(ballots))
                assert scores[got] == max(scores)
                ties = [a for a in range(3) if scores[a] == max(scores)]
                assert got == min(ties, key=D_ABC.rank)


class TestMajority:
    def test_examples(self):
        ab, ba = lin(A, B), lin(B, A)
        assert majority_winner([ab, ab, ba]) == A
        assert majority_winner([ba, ba, ba]) == B
        assert majority_winner([ab, ab, ab, ba, ba]) == A

    def test_preconditions(self):
        ab = lin(A, B)
        with pytest.raises(ElectionError):
            majority_winner([ab, ab])
        with pytest.raises(ElectionError):
            majority_winner([lin(A, B, C)])

    def test_equals_plurality_scoring_m2(self):
        rule = plurality(2, lin(A, B))
        orders = enumerate_linear_orders(2)
        for n in (1, 3, 5):
            for ballots in itertools.product(orders, repeat=n):
                assert majority_winner(list(ballots)) == scoring_winner(
                    rule, list(ballots)
                )

    def test_rule_object(self):
        assert MajorityRule().winner([lin(A, B)]) == A


class TestMedian:
    AXIS = (A, C, B)

    def test_median_of_one(self):
        rule = MedianRule(self.AXIS, ())
        assert median_winner(rule, [lin(C, A, B)]) == C

    def test_unanimous_peaks(self):
        rule = MedianRule(self.AXIS, (A, A))
        assert median_winner(rule, [lin(A, C, B)] * 3) == A

    def test_sincere_phase_profile(self):
        rule = MedianRule(self.AXIS, (A, C))
        ballots = [lin(B, C, A), lin(A, C, B), lin(A, C, B)]
        assert median_winner(rule, ballots) == A

    def test_deviant_phase_profile(self):
        rule = MedianRule(self.AXIS, (A, C))
        assert median_winner(rule, [lin(C, A, B)] * 3) == C

    def test_not_single_peaked_raises(self):
        rule = MedianRule(self.AXIS, (A, A))
        with pytest.raises(NotSinglePeaked):
            median_winner(rule, [lin(A, B, C), lin(A, C, B), lin(A, C, B)])

    def test_phantom_count_checked(self):
        rule = MedianRule(self.AXIS, (A,))
        with pytest.raises(ElectionError):
            median_winner(rule, [lin(A, C, B)] * 3)

    def test_phantom_off_axis_rejected(self):
        with pytest.raises(ElectionError):
            MedianRule((A, C, B), (5,))

    def test_median_moves_with_phantoms(self):
        ballots = [lin(B, C, A), lin(B, C, A), lin(A, C, B)]
        assert median_winner(MedianRule(self.AXIS, (A, A)), ballots) == A
        assert median_winner(MedianRule(self.AXIS, (A, C)), ballots) == C
        assert median_winner(MedianRule(self.AXIS, (B, B)), ballots) == B


class TestRunProxyVote:
    def test_classical_embedding_exhaustive(self):
        # all-linear profiles: the proxy outcome is the direct outcome,
        # for every mechanism kind
        orders = enumerate_linear_orders(3)
        rule = borda(3, D_ABC)
        mechs = [MechanismSpec(k) for k in BUILTIN_KINDS]
        for ballots in itertools.product(orders, repeat=3):
            pvp = make_profile(
                [b.as_partial_order() for b in ballots], [S_ID3] * 3, list(ballots)
            )
            direct = scoring_winner(rule, list(ballots))
            for g in mechs:
                assert run_proxy_vote(rule, g, pvp) == direct

    def test_one_hop_delegation_m2(self):
        # empty-ballot voter delegates to an a-top voter; a wins 2-1... n=3
        P = [make_partial_order(set(), 2), lin(A, B).as_partial_order(),
             lin(B, A).as_partial_order()]
        pvp = make_profile(
            P,
            [lin(1, 2, 0), lin(0, 1, 2), lin(0, 1, 2)],
            [lin(B, A), lin(A, B), lin(B, A)],
        )
        assert run_proxy_vote(MajorityRule(), MechanismSpec(UNIV), pvp) == A

    def test_single_peaked_scenario_end_to_end(self):
        # two voters share one strictly partial ballot and form a cycle,
        # casting their common default; the third keeps a linear ballot
        rule = MedianRule((A, C, B), (A, C))
        g = MechanismSpec(SUBSET)
        cb = po([(C, B)])
        sincere = make_profile(
            [lin(B, C, A).as_partial_order(), cb, cb],
            [lin(0, 1, 2), lin(0, 2, 1), lin(0, 1, 2)],
            [lin(B, C, A), lin(A, C, B), lin(A, C, B)],
        )
        assert run_proxy_vote(rule, g, sincere) == A
        deviant = make_profile(
            [lin(C, A, B).as_partial_order(), cb, cb],
            [lin(0, 1, 2), lin(0, 2, 1), lin(0, 1, 2)],
            [lin(C, A, B), lin(A, C, B), lin(A, C, B)],
        )
        assign = resolve_gurus(build_delegation_graph(g, deviant), deviant)
        assert assign.guru == (0, 0, 0)
        assert run_proxy_vote(rule, g, deviant) == C

    def test_n14_pipeline(self):
        # delegating voter 0 with an empty ballot reaches the b>a>c guru;
        # widening her ballot to a>b re-routes her to a c>a>b guru
        n = 14
        fillers = N14_REST
        S0 = lin(*([1, 2] + [i for i in range(n) if i not in (1, 2)]))
        S_rest = [LinearOrder(tuple(range(n)))] * (n - 1)
        rule = borda(3, D_ABC)
        g = MechanismSpec(SUBSET)

        sincere = make_profile(
            [make_partial_order(set(), 3)] + [b.as_partial_order() for b in fillers],
            [S0] + S_rest,
            [lin(C, A, B)] + fillers,
        )
        assert run_proxy_vote(rule, g, sincere) == A

        deviant = make_profile(
            [po([(A, B)])] + [b.as_partial_order() for b in fillers],
            [S0] + S_rest,
            [lin(C, A, B)] + fillers,
        )
        R = build_delegation_graph(g, deviant)
        assert R.out[0] == 2
        assert run_proxy_vote(rule, g, deviant) == C


def targets_for(g, P, i):
    permit = permitted_proxies(g, P, i)
    if not permit or permit == frozenset({i}):
        return (i,)
    return tuple(sorted(permit))


def s_realizing(target, i, n):
    rest = [v for v in range(n) if v != target]
    return LinearOrder((target, *rest))


class TestGuruInvariants:
    def check_assignment(self, pvp, got, zero_regret):
        n = pvp.n
        for i in range(n):
            assert got.guru[got.guru[i]] == got.guru[i]
            assert got.cast[i] == got.cast[got.guru[i]]
            assert sorted(got.cast[i].ranking) == list(range(pvp.m))
            if pvp.P[i].is_linear():
                assert got.guru[i] == i
                assert got.cast[i] == pvp.P[i].to_linear()
            if zero_regret:
                assert pvp.P[i].edges <= got.cast[i].edge_set()

    def test_brute_force_small(self):
        # every (P, S, D) at n=3, m=2 and n=2, m=3
        for n, m in [(3, 2), (2, 3)]:
            pool = enumerate_partial_orders(m)
            s_orders = enumerate_linear_orders(n)
            for kind in BUILTIN_KINDS:
                g = MechanismSpec(kind)
                for P in itertools.product(pool, repeat=n):
                    ext = [linear_extensions(p) for p in P]
                    for S in itertools.product(s_orders, repeat=n):
                        for D in itertools.product(*ext):
                            pvp = make_profile(P, S, D)
                            got = resolve_gurus(build_delegation_graph(g, pvp), pvp)
                            self.check_assignment(pvp, got, zero_regret=kind == SUBSET)

    def test_factored_full_m3_n3(self):
        # S only picks the out-edge among the permitted set, so sweeping
        # out-edge combinations with one realizing S per combination covers
        # every S-profile; the two D instantiations below bound the rest
        # because a guru's cast is either her linear ballot or her default,
        # and defaults range over exactly the linear extensions.
        pool = enumerate_partial_orders(3)
        for kind in BUILTIN_KINDS:
            g = MechanismSpec(kind)
            for P in itertools.product(pool, repeat=3):
                exts = [linear_extensions(p) for p in P]
                choices = [targets_for(g, P, i) for i in range(3)]
                for combo in itertools.product(*choices):
                    S = [s_realizing(combo[i], i, 3) for i in range(3)]
                    for D in ([e[0] for e in exts], [e[-1] for e in exts]):
                        pvp = make_profile(P, S, D)
                        R = build_delegation_graph(g, pvp)
                        assert R.out == combo
                        got = resolve_gurus(R, pvp)
                        self.check_assignment(pvp, got, zero_regret=kind == SUBSET)
                        if kind == SUBSET:
                            # covers all defaults at once: a default-casting
                            # guru j may cast any extension of P_j, and the
                            # intersection of those extensions is P_j itself,
                            # so P_i <= P_j settles every D at one stroke
                            # (a voter who keeps her own vote casts a
                            # superset of P_i by the profile invariant)
                            for i in range(3):
                                j = got.guru[i]
                                if j != i:
                                    assert is_subset(P[i], P[j])


class TestJsonRoundTrip:
    def test_profile(self):
        pvp = simple_profile([po([(A, B)]), EMPTY], S=[lin(1, 0), lin(0, 1)])
        doc = profile_to_json(pvp)
        assert doc["m"] == 3
        assert profile_from_json(doc) == pvp

    def test_rules(self):
        for rule in [
            borda(3, D_ABC),
            MajorityRule(),
            MedianRule((A, C, B), (A, C)),
        ]:
            assert rule_from_json(rule_to_json(rule)) == rule

    def test_scoring_json_shape(self):
        doc = rule_to_json(borda(3, lin(C, A, B)))
        assert doc == {"type": "scoring", "weights": [2, 1, 0], "tiebreak": [2, 0, 1]}


@st.composite
def ballots_with_shuffle(draw):
    ballots = draw(
        st.lists(
            st.permutations(range(3)).map(lambda r: LinearOrder(tuple(r))),
            min_size=1,
            max_size=6,
        )
    )
    shuffled = draw(st.permutations(ballots))
    return ballots, shuffled


@given(ballots_with_shuffle())
@settings(max_examples=150, derandomize=True)
def test_scoring_winner_anonymous(pair):
    ballots, shuffled = pair
    rule = borda(3, D_ABC)
    assert scoring_winner(rule, shuffled) == scoring_winner(rule, ballots)
