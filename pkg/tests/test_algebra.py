from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from netop.algebra import (ATTEMPTS, AttemptSequence, Attributed, AttributeAlgebra,
                           BoundedAlgebra, CanonicalAlgebra, DegreeLimitedAlgebra, EdgePredicate,
                           PortedNetwork, PredicateAlgebra, act_attributes, act_bounded,
                           act_canonical, act_degree_limited, act_predicate, algebra_from_id,
                           constant_bound, enforce_bound, enforce_predicate, hom_forget, point,
                           range_predicate, run_attempts, to_fraction, two_range_bound)
from netop.errors import ArityError, ConstraintError, ModelMismatch
from netop.netmodel import MGPLUS, SG
from netop.networks import mg, sg
from netop.operad import compose, identity_op, make_operation
from netop.oracle import random_operation
from netop.perm import Permutation, block_swap


def p(*images):
    return Permutation(images)


def pts(*coords):
    return tuple(point(x, y) for x, y in coords)


def singletons(*coords):
    return [Attributed(sg(1), (point(x, y),)) for x, y in coords]


# -- canonical ---------------------------------------------------------------

def test_canonical_worked_composite():
    f = make_operation(SG, [3, 4, 2], 9, net=sg(9, [(1, 2), (3, 6)]))
    hs = [sg(3, [(2, 3)]), sg(4, [(1, 2), (2, 3), (3, 4)]), sg(2, [(1, 2)])]
    assert act_canonical(f, hs) == sg(9, [(1, 2), (2, 3), (3, 6), (4, 5), (5, 6), (6, 7), (8, 9)])


def test_canonical_unit_and_swap():
    h = sg(3, [(1, 3)])
    assert act_canonical(identity_op(SG, 3), [h]) == h
    f = make_operation(SG, [1, 1], 2, block_swap(1, 1))
    assert act_canonical(f, [sg(1), sg(1)]) == sg(2)
    with pytest.raises(ArityError):
        act_canonical(f, [sg(2), sg(1)])


# -- attributes --------------------------------------------------------------

def test_attributes_follow_their_vertices():
    ident = make_operation(SG, [1, 1], 2)
    a, b = Attributed(sg(1), ("a",)), Attributed(sg(1), ("b",))
    assert act_attributes(ident, [a, b]).attrs == ("a", "b")
    swap = make_operation(SG, [1, 1], 2, p(2, 1))
    assert act_attributes(swap, [a, b]).attrs == ("b", "a")


def test_forgetting_attributes_is_a_homomorphism():
    f = make_operation(SG, [2, 1], 3, p(3, 1, 2), sg(3, [(1, 3)]))
    items = [Attributed(sg(2, [(1, 2)]), ("x", "y")), Attributed(sg(1), ("z",))]
    assert hom_forget(act_attributes(f, items)) == act_canonical(f, [hom_forget(a) for a in items])


def test_attribute_algebra_membership():
    alg = AttributeAlgebra(SG, lambda x: isinstance(x, str), "labels")
    assert alg.contains(Attributed(sg(2), ("a", "b")))
    assert not alg.contains(Attributed(sg(2), ("a",)))
    assert not alg.contains(Attributed(sg(1), (3,)))


# -- predicates --------------------------------------------------------------

def test_enforce_predicate_examples():
    always = EdgePredicate(lambda a, b: True)
    a = Attributed(sg(2, [(1, 2)]), pts((0, 0), (0, 2)))
    assert enforce_predicate(always, a) == a
    assert enforce_predicate(range_predicate(1), a).net == sg(2)
    not_one_three = EdgePredicate(lambda a, b: {a, b} != {"x1", "x3"})
    mixed = Attributed(sg(3, [(1, 2), (1, 3)]), ("x1", "x2", "x3"))
    assert enforce_predicate(not_one_three, mixed).net == sg(3, [(1, 2)])


def test_range_limited_action():
    L1 = range_predicate(1)
    far = make_operation(SG, [1, 1], 2, net=sg(2, [(1, 2)]))
    assert act_predicate(L1, far, singletons((0, 0), (0, 2))).net == sg(2)
    tri = make_operation(SG, [1, 1, 1], 3, net=sg(3, [(1, 2), (1, 3), (2, 3)]))
    out = act_predicate(L1, tri, singletons((0, 0), (0, 1), (0, 2)))
    assert out.net == sg(3, [(1, 2), (2, 3)])
    unit_op = make_operation(SG, [2], 2)
    item = Attributed(sg(2, [(1, 2)]), pts((0, 0), (1, 0)))
    assert act_predicate(L1, unit_op, [item]) == act_attributes(unit_op, [item])


def test_range_limited_rejects_bad_inputs():
    bad = Attributed(sg(2, [(1, 2)]), pts((0, 0), (3, 0)))
    with pytest.raises(ConstraintError):
        act_predicate(range_predicate(1), make_operation(SG, [2], 2), [bad])
    with pytest.raises(ConstraintError):
        PredicateAlgebra(range_predicate(1)).act(make_operation(SG, [2], 2), [bad])


def test_distances_are_exact():
    # 0.1 and 0.2 are read as exact decimals, so the boundary case is kept
    assert to_fraction(0.1) == Fraction(1, 10)
    a = Attributed(sg(2, [(1, 2)]), (point(0, 0), point("0.3", 0)))
    assert enforce_predicate(range_predicate("0.3"), a).net == sg(2, [(1, 2)])


# -- bounds ------------------------------------------------------------------

def test_bound_examples():
    zero = constant_bound(0)
    f = make_operation(MGPLUS, [1, 1], 2, net=mg(2, {(1, 2): 3}))
    items = [Attributed(mg(1), (point(0, 0),)), Attributed(mg(1), (point(1, 0),))]
    assert act_bounded(zero, f, items).net == mg(2)
    two = two_range_bound(2, 1)
    f2 = make_operation(MGPLUS, [1, 1], 2, net=mg(2, {(1, 2): 2}))
    near_far = [Attributed(mg(1), (point(0, 0),)), Attributed(mg(1), (point("1.5", 0),))]
    assert act_bounded(two, f2, near_far).net == mg(2, {(1, 2): 1})
    capped = Attributed(mg(2, {(1, 2): 3}), pts((0, 0), (0, 0)))
    assert enforce_bound(constant_bound(2), capped).net == mg(2, {(1, 2): 2})


def test_two_range_levels():
    b = two_range_bound(2, 1)
    assert [b(point(0, 0), point(x, 0)) for x in (0, 1, "1.5", 2, 3)] == [2, 2, 1, 1, 0]
    with pytest.raises(ValueError):
        two_range_bound(1, 2)


# -- degree limits -----------------------------------------------------------

def ported(n, ports, edges=()):
    return PortedNetwork(sg(n, edges), tuple(ports))


def test_attempt_runs():
    assert run_attempts(ported(2, (1, 1)), [(1, 2), (1, 2)]).graph == sg(2, [(1, 2)])
    assert run_attempts(ported(2, (0, 1)), [(1, 2)]).graph == sg(2)
    assert run_attempts(ported(3, (1, 1, 1)), [(1, 2), (1, 3)]).graph == sg(3, [(1, 2)])
    with pytest.raises(ValueError):
        AttemptSequence(2, ((1, 3),))
    with pytest.raises(ConstraintError):
        ported(2, (0, 1), [(1, 2)])


def test_degree_limited_action():
    op = make_operation(ATTEMPTS, [1, 1], 2, net=AttemptSequence(2, ((1, 2), (1, 2))))
    out = act_degree_limited(op, [ported(1, (1,)), ported(1, (1,))])
    assert out == ported(2, (1, 1), [(1, 2)])
    alg = DegreeLimitedAlgebra()
    assert alg.act(op, [ported(1, (0,)), ported(1, (1,))]) == ported(2, (0, 1))


def test_attempt_overlay_runs_the_right_operand_first():
    g, h = AttemptSequence(3, ((1, 2),)), AttemptSequence(3, ((1, 3),))
    assert ATTEMPTS.overlay(g, h).attempts == ((1, 3), (1, 2))


# -- algebra objects ---------------------------------------------------------

def test_algebra_ids():
    assert isinstance(algebra_from_id("canonical", SG), CanonicalAlgebra)
    assert isinstance(algebra_from_id("range", None, {"L": "3/2"}), PredicateAlgebra)
    assert isinstance(algebra_from_id("two-range", MGPLUS, {"L1": 2, "L2": 1}), BoundedAlgebra)
    assert isinstance(algebra_from_id("degree"), DegreeLimitedAlgebra)
    with pytest.raises(ValueError):
        algebra_from_id("range", None, {})
    with pytest.raises(ValueError):
        algebra_from_id("range", MGPLUS, {"L": 1})
    with pytest.raises(ValueError):
        algebra_from_id("nosuch")


def test_algebra_checks_the_operad():
    with pytest.raises(ModelMismatch):
        CanonicalAlgebra(SG).act(make_operation(MGPLUS, [1], 1), [sg(1)])


def _random_points(rng, n):
    return tuple(point(Fraction(rng.randint(0, 6), 2), Fraction(rng.randint(0, 6), 2))
                 for _ in range(n))


@given(rng=st.randoms(use_true_random=False))
def test_range_limited_composition(rng):
    # acting in two stages equals acting once with the composite operation
    alg = PredicateAlgebra(range_predicate(1))
    f = random_operation(SG, [rng.randint(0, 3) for _ in range(rng.randint(1, 3))], rng)
    gs = [random_operation(SG, [1] * t, rng, output=t) for t in f.inputs]
    leaves = [[enforce_predicate(alg.predicate, Attributed(sg(1), _random_points(rng, 1)))
               for _ in range(g.arity)] for g in gs]
    staged = alg.act(f, [alg.act(g, row) for g, row in zip(gs, leaves)])
    once = alg.act(compose(f, gs), [x for row in leaves for x in row])
    assert staged == once
    assert all(Fraction(0) <= (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 <= 1
               for a, b in ((once.attrs[i - 1], once.attrs[j - 1]) for i, j in once.net.edges))
