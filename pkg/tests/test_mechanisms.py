import itertools

import pytest

from proxyvote.mechanisms import (
    BUILTIN_KINDS,
    DICTATOR,
    SUBSET,
    SUBSET_IF_ALL_LINEAR_AGREE,
    SUBSET_LINEAR_STRICT,
    TRIV,
    UNIV,
    MechanismError,
    MechanismSpec,
    m2_unique_mechanism_check,
    make_network,
    mechanism_from_json,
    mechanism_to_json,
    network_neighbours,
    permitted_proxies,
    register_mechanism,
)
from proxyvote.orders import enumerate_partial_orders, is_subset, make_partial_order

A, B, C = 0, 1, 2

EMPTY3 = make_partial_order(set(), 3)
AB = make_partial_order({(A, B)}, 3)
AB_AC = make_partial_order({(A, B), (A, C)}, 3)
LIN_BAC = make_partial_order({(B, A), (B, C), (A, C)}, 3)
LIN_ABC = make_partial_order({(A, B), (A, C), (B, C)}, 3)

ALL_KINDS = [MechanismSpec(kind=k) for k in BUILTIN_KINDS]


class TestDefinitionalClauses:
    def test_empty_ballot_any_kind(self):
        profile = [EMPTY3, AB, LIN_BAC]
        for g in ALL_KINDS:
            assert permitted_proxies(g, profile, 0) == frozenset({1, 2})

    def test_linear_ballot_any_kind(self):
        profile = [LIN_ABC, EMPTY3, AB]
        for g in ALL_KINDS:
            assert permitted_proxies(g, profile, 0) == frozenset({0})

    def test_strictly_partial_excludes_self(self):
        profile = [AB, AB, AB]
        for g in ALL_KINDS:
            assert 0 not in permitted_proxies(g, profile, 0)

    def test_clauses_exhaustive_m3(self):
        # All kinds, all profiles up to n=4, three alternatives.
        pool = enumerate_partial_orders(3)
        for n in (2, 3, 4):
            everyone = frozenset(range(n))
            for profile in itertools.product(pool, repeat=n):
                for i in range(n):
                    p = profile[i]
                    for g in ALL_KINDS:
                        got = permitted_proxies(g, profile, i)
                        if p.is_empty():
                            assert got == everyone - {i}
                        elif p.is_linear():
                            assert got == frozenset({i})
                        else:
                            assert i not in got


class TestKinds:
    def test_triv_and_univ(self):
        profile = [AB, EMPTY3, LIN_BAC, AB_AC]
        assert permitted_proxies(MechanismSpec(TRIV), profile, 0) == frozenset()
        assert permitted_proxies(MechanismSpec(UNIV), profile, 0) == frozenset({1, 2, 3})

    def test_subset_example(self):
        # i holds a>b; j extends it, k reverses it.
        profile = [AB, AB_AC, LIN_BAC]
        assert permitted_proxies(MechanismSpec(SUBSET), profile, 0) == frozenset({1})

    def test_subset_monotone_in_candidate_ballot(self):
        # j permitted and P_j <= P_k implies k permitted
        pool = enumerate_partial_orders(3)
        g = MechanismSpec(SUBSET)
        for profile in itertools.product(pool, repeat=3):
            for i in range(3):
                if not profile[i].is_strictly_partial():
                    continue
                got = permitted_proxies(g, profile, i)
                for j in got:
                    for k in range(3):
                        if k != i and is_subset(profile[j], profile[k]):
                            assert k in got

    def test_dictator_default_map(self):
        g = MechanismSpec(DICTATOR)
        profile = [AB, AB, AB]
        assert permitted_proxies(g, profile, 0) == frozenset({1})
        assert permitted_proxies(g, profile, 2) == frozenset({0})

    def test_dictator_explicit_map(self):
        g = MechanismSpec(DICTATOR, dictator_map=(2, 2, 1))
        profile = [AB, AB, AB]
        assert permitted_proxies(g, profile, 0) == frozenset({2})
        assert permitted_proxies(g, profile, 2) == frozenset({1})

    def test_dictator_map_length_checked(self):
        g = MechanismSpec(DICTATOR, dictator_map=(1, 0))
        with pytest.raises(MechanismError):
            permitted_proxies(g, [AB, AB, AB], 0)

    def test_dictator_map_self_loop_rejected(self):
        with pytest.raises(MechanismError):
            MechanismSpec(DICTATOR, dictator_map=(0, 2, 1))

    def test_subset_linear_strict(self):
        g = MechanismSpec(SUBSET_LINEAR_STRICT)
        # j's ballot extends i's but is not linear; k's is linear and extends.
        profile = [AB, AB_AC, LIN_ABC]
        assert permitted_proxies(g, profile, 0) == frozenset({2})
        # a linear ballot that does not extend i's is out
        profile2 = [AB, LIN_BAC, LIN_BAC]
        assert permitted_proxies(g, profile2, 0) == frozenset()

    def test_subset_if_all_linear_agree(self):
        g = MechanismSpec(SUBSET_IF_ALL_LINEAR_AGREE)
        # both linear voters extend a>b: behaves like subset
        profile = [AB, LIN_ABC, AB_AC]
        assert permitted_proxies(g, profile, 0) == frozenset({1, 2})
        # one linear voter disagrees: empty
        profile2 = [AB, LIN_ABC, LIN_BAC]
        assert permitted_proxies(g, profile2, 0) == frozenset()
        # non-linear disagreement does not trigger the veto
        ba = make_partial_order({(B, A)}, 3)
        profile3 = [AB, AB_AC, ba]
        assert permitted_proxies(g, profile3, 0) == frozenset({1})


class TestM2Coincidence:
    def test_all_kinds_coincide_at_m2(self):
        assert m2_unique_mechanism_check(ALL_KINDS, n=3)

    def test_named_trio(self):
        kinds = [MechanismSpec(TRIV), MechanismSpec(UNIV), MechanismSpec(SUBSET)]
        assert m2_unique_mechanism_check(kinds, n=3)

    def test_diverge_at_m3(self):
        kinds = [MechanismSpec(TRIV), MechanismSpec(UNIV), MechanismSpec(SUBSET)]
        assert not m2_unique_mechanism_check(kinds, n=3, m=3)

    def test_singleton_trivially_true(self):
        assert m2_unique_mechanism_check([MechanismSpec(SUBSET)], n=4)


class TestNetwork:
    def test_restricts_strictly_partial_case(self):
        net = make_network([(0, 1)])
        g = MechanismSpec(UNIV, network=net)
        profile = [AB, AB, AB, AB]
        assert permitted_proxies(g, profile, 0) == frozenset({1})
        assert permitted_proxies(g, profile, 3) == frozenset()

    def test_does_not_touch_empty_or_linear_clauses(self):
        net = make_network([(0, 1)])
        g = MechanismSpec(SUBSET, network=net)
        profile = [EMPTY3, AB, LIN_ABC]
        assert permitted_proxies(g, profile, 0) == frozenset({1, 2})
        assert permitted_proxies(g, profile, 2) == frozenset({2})

    def test_result_within_neighbourhood(self):
        net = make_network([(0, 1), (1, 2)])
        pool = enumerate_partial_orders(3)
        for kind in BUILTIN_KINDS:
            g = MechanismSpec(kind, network=net)
            for profile in itertools.product(pool, repeat=3):
                for i in range(3):
                    if profile[i].is_strictly_partial():
                        got = permitted_proxies(g, profile, i)
                        assert got <= network_neighbours(net, i)

    def test_loop_rejected(self):
        with pytest.raises(MechanismError):
            make_network([(1, 1)])


class TestExtensionHook:
    def test_custom_kind(self):
        def last_voter(P, i):
            return {len(P) - 1, i}  # i gets discarded by the clause guard

        register_mechanism("last_voter", last_voter)
        g = MechanismSpec("last_voter")
        profile = [AB, AB, AB]
        assert permitted_proxies(g, profile, 0) == frozenset({2})
        assert permitted_proxies(g, profile, 2) == frozenset()
        # clauses still owned by the framework
        assert permitted_proxies(g, [EMPTY3, AB, AB], 0) == frozenset({1, 2})

    def test_builtin_not_overridable(self):
        with pytest.raises(MechanismError):
            register_mechanism(SUBSET, lambda P, i: set())

    def test_unknown_kind_rejected(self):
        with pytest.raises(MechanismError):
            MechanismSpec("no_such_kind")


class TestJson:
    def test_round_trip_plain(self):
        g = MechanismSpec(SUBSET)
        assert mechanism_to_json(g) == {"kind": "subset"}
        assert mechanism_from_json({"kind": "subset"}) == g

    def test_round_trip_full(self):
        g = MechanismSpec(
            DICTATOR, dictator_map=(1, 2, 0), network=make_network([(0, 2), (0, 1)])
        )
        doc = mechanism_to_json(g)
        assert doc == {
            "kind": "dictator",
            "dictator_map": [1, 2, 0],
            "network": [[0, 1], [0, 2]],
        }
        assert mechanism_from_json(doc) == g
