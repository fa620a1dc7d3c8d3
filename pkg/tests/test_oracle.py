import json

import pytest
from hypothesis import given, strategies as st

from netop.algebra import (PortedNetwork, PredicateAlgebra, DegreeLimitedAlgebra, CanonicalAlgebra,
                           range_predicate, run_attempts, two_range_bound)
from netop.colored import PETRI
from netop.errors import BudgetExceeded
from netop.mutants import BrokenOverlayModel, UnclampedBoundedAlgebra, compose_without_perm
from netop.netmodel import (CATALOG, MGPLUS, PMEET, SG, SG_TO_GAMMA_BOOL, GAMMA_BOOL_TO_SG,
                            support_morphism)
from netop.networks import SimpleGraph, complete_edges, sg
from netop.operad import compose, identity_op, make_operation
from netop.oracle import (MODEL_LAWS, check_algebra, check_graphic, check_model, check_morphism,
                          check_operad, compose_via_category, enumerate_networks,
                          enumerate_permutations, reports_to_jsonl, set_partitions)


def failing(reports):
    return [r.law for r in reports if not r.passed]


def test_enumeration_counts():
    assert len(enumerate_networks(SG, 3)) == 8
    nets = enumerate_networks(SG, 4)
    assert len(nets) == 64 == len(set(nets))
    assert len(enumerate_permutations(3)) == 6
    assert [len(list(set_partitions(n))) for n in range(6)] == [1, 1, 2, 5, 15, 52]


def test_enumeration_is_deterministic():
    assert enumerate_networks(MGPLUS, 3, cap=2) == enumerate_networks(MGPLUS, 3, cap=2)


def test_budget_is_a_refusal():
    with pytest.raises(BudgetExceeded):
        enumerate_networks(SG, 6, budget=1000)
    with pytest.raises(BudgetExceeded):
        enumerate_permutations(8, budget=100)
    with pytest.raises(BudgetExceeded):
        check_model(SG, max_n=4, mode="exhaustive", budget=1000)


def test_exhaustive_sg_suite():
    reports = check_model(SG, max_n=3, mode="exhaustive")
    assert [r.law for r in reports] == list(MODEL_LAWS)
    assert all(r.passed and r.cases > 0 and r.seed is None for r in reports)


@pytest.mark.parametrize("name", sorted(set(CATALOG) - {"part-meet"}))
def test_random_suites_pass(name):
    assert failing(check_model(CATALOG[name], max_n=4, samples=150)) == []


def test_meet_partitions_fail_only_the_unit_equation():
    assert failing(check_model(PMEET, max_n=4, samples=300)) == ["djunion-of-units"]


def test_broken_overlay_is_caught():
    reports = check_model(BrokenOverlayModel(), max_n=3, samples=500)
    bad = [r for r in reports if not r.passed]
    assert [r.law for r in bad] == ["overlay-assoc"]
    assert set(bad[0].counterexample) == {"inputs", "lhs", "rhs"}


def test_two_path_composition_on_the_worked_example():
    f = make_operation(SG, [3, 4, 2], 9, net=sg(9, [(1, 2), (3, 6)]))
    gs = [make_operation(SG, [3], 3, net=sg(3, [(2, 3)])),
          make_operation(SG, [4], 4, net=sg(4, [(1, 2), (2, 3), (3, 4)])),
          make_operation(SG, [2], 2, net=sg(2, [(1, 2)]))]
    assert compose_via_category(f, gs) == compose(f, gs)
    ident = identity_op(SG, 4)
    assert compose_via_category(ident, [ident]) == ident


@pytest.mark.parametrize("model", [SG, PETRI], ids=lambda m: m.name)
def test_operad_suite_passes(model):
    assert failing(check_operad(model, max_n=6, samples=200)) == []


def test_operad_suite_with_small_multiplicities():
    assert failing(check_operad(MGPLUS, max_n=6, samples=200, cap=2)) == []


def test_dropped_permutation_is_caught():
    bad = failing(check_operad(SG, max_n=6, samples=200, compose=compose_without_perm))
    assert "closed-form-vs-category" in bad


def test_algebra_suites_pass():
    assert failing(check_algebra(CanonicalAlgebra(SG), samples=100)) == []
    reports = check_algebra(PredicateAlgebra(range_predicate(1)), samples=100)
    assert failing(reports) == [] and "safety" in [r.law for r in reports]


def test_unclamped_bound_is_caught():
    bad = failing(check_algebra(UnclampedBoundedAlgebra(two_range_bound(2, 1)), samples=200))
    assert "safety" in bad


def test_graphic_identities_small():
    # disjoint pairs of edges first appear at four vertices
    reports = check_graphic(max_n=4, max_len=2)
    assert [r.law for r in reports] == ["graphic-aba", "disjoint-commute"]
    assert all(r.passed and r.cases > 0 for r in reports)
    assert check_graphic(max_n=3, max_len=2)[1].cases == 0


@given(rng=st.randoms(use_true_random=False), n=st.integers(2, 5))
def test_graphic_identity_directly(rng, n):
    # independent of the state-map construction: run words on one start state
    edges = complete_edges(n)
    ports = tuple(rng.randint(0, 2) for _ in range(n))
    start = PortedNetwork(SimpleGraph(n, frozenset()), ports)
    a = [rng.choice(edges) for _ in range(rng.randint(0, 3))]
    b = [rng.choice(edges) for _ in range(rng.randint(0, 3))]
    assert run_attempts(start, a + b + a) == run_attempts(start, a + b)


def test_morphism_suites():
    exhaustive = check_morphism(SG_TO_GAMMA_BOOL, max_n=4, mode="exhaustive",
                                inverse=GAMMA_BOOL_TO_SG)
    assert failing(exhaustive) == []
    support = check_morphism(support_morphism(), samples=100,
                             expected=lambda g: SimpleGraph(g.n, frozenset(e for e, _ in g.mult)))
    assert failing(support) == []


def test_reports_are_reproducible():
    first = reports_to_jsonl(check_operad(SG, samples=50, seed=11))
    again = reports_to_jsonl(check_operad(SG, samples=50, seed=11))
    assert first == again
    row = json.loads(first.splitlines()[0])
    assert row["seed"] == 11 and "time" not in json.dumps(row)


def test_degree_algebra_suite():
    reports = check_algebra(DegreeLimitedAlgebra(), samples=100)
    assert failing([r for r in reports if r.law not in ("graphic-aba", "disjoint-commute")]) == []
