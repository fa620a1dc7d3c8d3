import pytest
from hypothesis import given, strategies as st

from netop.errors import ArityError, ModelMismatch
from netop.monoid import BOOL, NAT_MAX, NAT_PLUS, bk, cutoff, identity_hom
from netop.netmodel import (CATALOG, DG, DMG, DMGPLUS, GAMMA_BOOL_TO_SG, HG, MG, MGPLUS, PJOIN,
                            PMEET, SG, SG_TO_GAMMA_BOOL, GammaModel, act, cutoff_morphism,
                            djunion, djunion_all, gamma_hom, gamma_to_multigraph, identity_morphism,
                            model_from_id, multigraph_to_gamma, overlay, partition_join,
                            partition_meet, support_morphism, tensor_models, tensor_power, unit)
from netop.networks import (EdgeLabeling, Partition, complete_edges, dg, hg, labeling, mg,
                            partition, sg)
from netop.oracle import random_element, random_perm_from
from netop.perm import Permutation, block_sum, identity

MODELS = [SG, DG, MG, MGPLUS, DMG, DMGPLUS, HG, PJOIN, PMEET, GammaModel(bk(2)),
          GammaModel(BOOL), tensor_models(SG, MG)]


def p(*images):
    return Permutation(images)


# -- worked examples ---------------------------------------------------------

def test_units():
    assert unit(SG, 3) == sg(3)
    assert unit(GammaModel(BOOL), 2) == labeling(2, BOOL, {(1, 2): False})
    assert unit(PJOIN, 3) == Partition.discrete(3)
    assert unit(PMEET, 3) == Partition.indiscrete(3)


def test_overlay_examples():
    assert overlay(SG, sg(4, [(1, 2), (3, 4)]), sg(4, [(1, 2), (2, 4)])) == sg(4, [(1, 2), (2, 4), (3, 4)])
    g = sg(3, [(1, 3)])
    assert overlay(SG, g, g) == g
    assert overlay(MGPLUS, mg(2, {(1, 2): 1}), mg(2, {(1, 2): 2})) == mg(2, {(1, 2): 3})
    assert overlay(MG, mg(2, {(1, 2): 1}), mg(2, {(1, 2): 2})) == mg(2, {(1, 2): 2})


def test_overlay_arity_mismatch():
    with pytest.raises(ArityError):
        overlay(SG, sg(2), sg(3))


def test_act_examples():
    assert act(SG, p(1, 3, 2), sg(3, [(1, 2), (2, 3)])) == sg(3, [(1, 3), (2, 3)])
    g = sg(4, [(1, 4), (2, 3)])
    assert act(SG, identity(4), g) == g
    assert act(DG, p(2, 1), dg(2, [(1, 2)])) == dg(2, [(2, 1)])
    with pytest.raises(ArityError):
        act(SG, p(2, 1), sg(3))


def test_djunion_examples():
    left, right = sg(3, [(1, 2), (2, 3)]), sg(4, [(1, 2), (2, 3), (3, 4)])
    assert djunion(SG, left, right) == sg(7, [(1, 2), (2, 3), (4, 5), (5, 6), (6, 7)])
    assert djunion(SG, left, unit(SG, 0)) == left
    assert djunion(HG, hg(3, [(1, 2, 3)]), hg(1, [(1,)])) == hg(4, [(1, 2, 3), (4,)])


def test_partition_lattice_operations():
    a, b = partition(4, [(1, 2), (3,), (4,)]), partition(4, [(2, 3), (1,), (4,)])
    assert partition_join(a, b) == partition(4, [(1, 2, 3), (4,)])
    assert partition_meet(a, b) == Partition.discrete(4)
    assert a.refines(partition_join(a, b))


def test_membership_is_enforced():
    with pytest.raises(ModelMismatch):
        overlay(SG, mg(2), mg(2))


def test_model_ids():
    for name, model in CATALOG.items():
        assert model_from_id(name) == model
    assert model_from_id("gamma:bk:3") == GammaModel(bk(3))
    assert model_from_id("sg*mg") == tensor_models(SG, MG)
    with pytest.raises(ValueError):
        model_from_id("nosuch")


# -- monoid-labelled models and their morphisms ------------------------------

def test_gamma_bool_is_sg():
    for n in range(5):
        edges = complete_edges(n)
        for mask in range(2 ** len(edges)):
            g = sg(n, [e for k, e in enumerate(edges) if mask >> k & 1])
            assert GAMMA_BOOL_TO_SG(SG_TO_GAMMA_BOOL(g)) == g


@pytest.mark.parametrize("model,monoid", [(MGPLUS, NAT_PLUS), (MG, NAT_MAX)])
@given(rng=st.randoms(use_true_random=False), n=st.integers(0, 5))
def test_multigraphs_are_gamma_of_naturals(model, monoid, rng, n):
    forward, back = multigraph_to_gamma(model), gamma_to_multigraph(model)
    g, h = random_element(model, n, rng), random_element(model, n, rng)
    gamma = GammaModel(monoid)
    assert back(forward(g)) == g
    assert forward(model.overlay(g, h)) == gamma.overlay(forward(g), forward(h))


def test_cutoff_examples():
    support = support_morphism()
    assert support(mg(2, {(1, 2): 3})) == sg(2, [(1, 2)])
    assert support(mg(3, {(1, 2): 3, (2, 3): 1})) == sg(3, [(1, 2), (2, 3)])
    assert cutoff_morphism(2)(mg(2, {(1, 2): 1})) == labeling(2, bk(2), {(1, 2): 1})
    assert cutoff_morphism(3)(mg(2, {(1, 2): 5})) == labeling(2, bk(3), {(1, 2): 3})


def test_gamma_hom_identity_and_mismatch():
    phi = gamma_hom(identity_hom(bk(2)))
    g = labeling(3, bk(2), {(1, 2): 2, (2, 3): 1})
    assert phi(g) == g
    assert identity_morphism(SG)(sg(2, [(1, 2)])) == sg(2, [(1, 2)])
    with pytest.raises(ModelMismatch):
        gamma_hom(cutoff(2))(sg(2))


def test_gamma_hom_composes_with_then():
    phi = gamma_hom(cutoff(3)).then(gamma_hom(identity_hom(bk(3))))
    g = EdgeLabeling(3, NAT_PLUS, {(1, 3): 7})
    assert phi(g) == labeling(3, bk(3), {(1, 3): 3})


# -- tensor products ---------------------------------------------------------

def test_tensor_products():
    dg_mg = tensor_models(DG, MG)
    assert dg_mg.unit(3) == (dg(3), mg(3))
    x = (dg(2, [(2, 1)]), mg(2, {(1, 2): 2}))
    assert dg_mg.contains(x)
    assert not dg_mg.contains((dg(2), mg(3)))
    assert dg_mg.act(p(2, 1), x) == (dg(2, [(1, 2)]), mg(2, {(1, 2): 2}))
    two = tensor_power(SG, 2)
    assert two.overlay((sg(2, [(1, 2)]), sg(2)), (sg(2), sg(2))) == (sg(2, [(1, 2)]), sg(2))


# -- the twelve equations as properties --------------------------------------

def _draw(model, rng, n):
    return random_element(model, n, rng, cap=3)


@pytest.mark.parametrize("model", MODELS, ids=lambda m: m.name)
@given(rng=st.randoms(use_true_random=False), n=st.integers(0, 5), m=st.integers(0, 4))
def test_model_equations(model, rng, n, m):
    g, h, k = (_draw(model, rng, n) for _ in range(3))
    a, b = _draw(model, rng, m), _draw(model, rng, m)
    s, t = random_perm_from(model, n, rng), random_perm_from(model, n, rng)
    u = random_perm_from(model, m, rng)
    e = model.unit
    assert model.overlay(g, e(n)) == g == model.overlay(e(n), g)
    assert model.overlay(model.overlay(g, h), k) == model.overlay(g, model.overlay(h, k))
    assert model.act(s, model.overlay(g, h)) == model.overlay(model.act(s, g), model.act(s, h))
    assert model.act(s, e(n)) == e(n)
    assert model.act(s * t, g) == model.act(s, model.act(t, g))
    assert model.act(identity(n), g) == g
    assert (model.djunion(model.overlay(g, h), model.overlay(a, b))
            == model.overlay(model.djunion(g, a), model.djunion(h, b)))
    assert model.djunion(model.act(s, g), model.act(u, a)) == model.act(block_sum(s, u),
                                                                        model.djunion(g, a))
    assert model.djunion(model.djunion(g, a), h) == model.djunion(g, model.djunion(a, h))
    assert model.djunion(g, e(0)) == g == model.djunion(e(0), g)
    if model != PMEET:  # see test_meet_partitions_break_the_unit_equation
        assert model.djunion(e(n), e(m)) == e(n + m)


def test_meet_partitions_break_the_unit_equation():
    # the unit of the meet lattice is the one-block partition, and
    # placing two such side by side gives two blocks, not one
    assert djunion(PMEET, unit(PMEET, 1), unit(PMEET, 1)) == Partition.discrete(2)
    assert unit(PMEET, 2) == Partition.indiscrete(2) != Partition.discrete(2)


def test_djunion_all_is_left_nested():
    gs = [sg(1), sg(2, [(1, 2)]), sg(1)]
    assert djunion_all(SG, gs) == sg(4, [(2, 3)])
    assert djunion_all(SG, []) == sg(0)
