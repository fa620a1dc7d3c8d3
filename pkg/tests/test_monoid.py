import json
from itertools import product

import pytest
from hypothesis import given, strategies as st

from netop.errors import CarrierError
from netop.monoid import (BK1_TO_BOOL, BOOL, BOOL_TO_BK1, NAT_MAX, NAT_PLUS, bk, combine, cutoff,
                          hom_apply, identity_hom, load_table_monoid, monoid_from_id,
                          table_monoid)

FINITE = [BOOL, bk(0), bk(1), bk(2), bk(3)]


def test_combine_examples():
    assert combine(BOOL, True, False) is True
    assert combine(bk(3), 2, 2) == 3
    assert combine(NAT_MAX, 5, 3) == 5
    assert combine(NAT_PLUS, 5, 3) == 8


def test_out_of_carrier():
    with pytest.raises(CarrierError):
        combine(bk(2), 3, 0)
    with pytest.raises(CarrierError):
        combine(NAT_PLUS, -1, 0)
    with pytest.raises(CarrierError):
        combine(BOOL, 1, 0)


def test_naturals_do_not_overflow():
    big = 2**80
    assert combine(NAT_PLUS, big, big) == 2**81


@pytest.mark.parametrize("m", FINITE, ids=lambda m: m.name)
def test_finite_monoid_laws_exhaustively(m):
    els = m.elements
    for x in els:
        assert m.combine(m.unit, x) == x == m.combine(x, m.unit)
    for x, y, z in product(els, repeat=3):
        assert m.combine(m.combine(x, y), z) == m.combine(x, m.combine(y, z))
    assert m.commutative == all(m.combine(x, y) == m.combine(y, x) for x, y in product(els, els))


@pytest.mark.parametrize("m", [NAT_PLUS, NAT_MAX], ids=lambda m: m.name)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
def test_natural_monoid_laws(m, x, y, z):
    assert m.combine(m.combine(x, y), z) == m.combine(x, m.combine(y, z))
    assert m.combine(x, m.unit) == x
    assert m.combine(x, y) == m.combine(y, x)


def test_cutoff_examples():
    assert cutoff(1)(3) == 1
    assert cutoff(4)(0) == 0
    assert cutoff(3)(2) == 2


@pytest.mark.parametrize("k", [0, 1, 2, 3])
@given(st.integers(0, 50), st.integers(0, 50))
def test_cutoff_is_a_homomorphism(k, x, y):
    f = cutoff(k)
    assert f(NAT_PLUS.combine(x, y)) == f.target.combine(f(x), f(y))
    assert f(NAT_PLUS.unit) == f.target.unit


def test_cutoff_rejects_non_naturals():
    with pytest.raises(CarrierError):
        cutoff(2)(-1)


def test_bool_and_b1_are_isomorphic():
    for x in BOOL.elements:
        assert BK1_TO_BOOL(BOOL_TO_BK1(x)) == x
    for x in bk(1).elements:
        assert BOOL_TO_BK1(BK1_TO_BOOL(x)) == x
    for x, y in product(bk(1).elements, repeat=2):
        assert BK1_TO_BOOL(bk(1).combine(x, y)) == BOOL.combine(BK1_TO_BOOL(x), BK1_TO_BOOL(y))


def test_hom_composition_and_identity():
    f = cutoff(2).then(identity_hom(bk(2)))
    assert [hom_apply(f, n) for n in range(5)] == [0, 1, 2, 2, 2]
    with pytest.raises(CarrierError):
        cutoff(2).then(BK1_TO_BOOL)


def test_monoid_ids():
    assert monoid_from_id("bool") == BOOL
    assert monoid_from_id("nat-plus") == NAT_PLUS
    assert monoid_from_id("nat-max") == NAT_MAX
    assert monoid_from_id("bk:2") == bk(2)
    with pytest.raises(ValueError):
        monoid_from_id("bk:x")
    with pytest.raises(ValueError):
        monoid_from_id("nope")


def test_element_codecs():
    assert BOOL.parse_element("T") is True and BOOL.format(False) == "F"
    assert bk(2).parse_element("2") == 2
    with pytest.raises(CarrierError):
        bk(2).parse_element("3")


def test_table_monoid(tmp_path):
    # the two-element left-zero band with an adjoined unit
    elements = ["e", "a", "b"]
    table = [["e", "a", "b"], ["a", "a", "a"], ["b", "b", "b"]]
    m = table_monoid("lz", elements, table, "e")
    assert m.combine("a", "b") == "a" and m.combine("b", "a") == "b"
    assert not m.commutative and m.idempotent
    path = tmp_path / "lz.json"
    path.write_text(json.dumps({"elements": elements, "table": table, "unit": "e"}))
    assert load_table_monoid(path).combine("b", "e") == "b"
    assert monoid_from_id(f"table:{path}").name == "table:lz"


def test_table_monoid_validation():
    with pytest.raises(ValueError, match="associative"):
        table_monoid("bad", ["e", "a", "b"], [["e", "a", "b"], ["a", "b", "b"], ["b", "a", "a"]], "e")
    with pytest.raises(ValueError, match="unit"):
        table_monoid("bad", ["e", "a"], [["e", "a"], ["e", "a"]], "e")
