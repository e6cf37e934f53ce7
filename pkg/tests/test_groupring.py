import random

import pytest
from hypothesis import given, settings, strategies as st

from scharlau.errors import ParentMismatch
from scharlau.groupring import (RingElement, centralize, class_sum, conjugate, maschke, one,
                                orbit_size, set_sum, stabilizer_order)
from scharlau.groups import builtin, centralizer, cyclic, set_stabilizer
from scharlau.verify import maschke_relation, special_sets

from oracles import brute_centralize


@pytest.fixture(scope="module")
def S17(G17, sp17):
    return {k: set_sum(G17, v) for k, v in special_sets(G17, sp17).items()}


def test_set_sum_examples(G17, sp17):
    assert set_sum(G17, {0}) == 1
    assert len(set_sum(G17, G17.cyclic_subgroup(G17.id_of(sp17.V)))) == 3
    assert set_sum(cyclic(6), range(6)).augmentation() == 6


def test_subgroup_idempotent(S17):
    x = S17["<V>"]
    assert x * x == 3 * x


def test_small_products():
    C4, C2 = cyclic(4), cyclic(2)
    e, g = one(C4), set_sum(C4, {1})
    assert (e + g) * (e - g) == e - set_sum(C4, {2})
    assert (e + g) * (e - g) != 0
    e, g = one(C2), set_sum(C2, {1})
    assert (e + g) * (e - g) == 0
    x = RingElement(C4, {1: 5, 3: -2})
    assert one(C4) * x == x == x * one(C4)


def test_big_coefficients_fall_back_to_python_ints():
    G = cyclic(3)
    big = 10 ** 30
    x = RingElement(G, {1: big})
    y = RingElement(G, {2: big, 1: 1})
    assert (x * y).coeffs == {0: big * big, 2: big}


def test_parent_mismatch():
    with pytest.raises(ParentMismatch):
        one(cyclic(3)) + one(cyclic(3))
    with pytest.raises(ParentMismatch):
        one(cyclic(2)) * one(cyclic(2))


def test_centralize_examples(G17, sp17, S17):
    iV, iWV = G17.id_of(sp17.V), G17.id_of(sp17.W * sp17.V)
    assert centralize(G17, one(G17)) == 1
    cV = centralize(G17, S17["<V>"])
    assert cV[0] == 136
    assert cV - 136 == class_sum(G17, iV)
    assert len(class_sum(G17, iV)) == 272
    cW = centralize(G17, S17["W<V>"])
    assert cW == class_sum(G17, iV).scale(9) + class_sum(G17, iWV).scale(16)


def test_maschke_examples(G17, S17):
    G6 = builtin("gpq:3:2")
    assert maschke(G6, one(G6)) == 6
    for g in range(6):
        x = set_sum(G6, {g})
        assert maschke(G6, x) == class_sum(G6, g).scale(len(centralizer(G6, g)))
    x = S17["<V>"]
    assert stabilizer_order(G17, x) == 36
    assert maschke(G17, x) == centralize(G17, x).scale(36)


def test_maschke_relation_on_the_three_sets(G17, S17):
    for name in ("<V>", "W<V>", "Delta<T>"):
        assert maschke_relation(G17, S17[name])


def test_class_sum_examples(G17, sp17):
    assert class_sum(G17, 0) == 1
    assert len(class_sum(G17, G17.id_of(sp17.V))) == 272
    assert len(class_sum(G17, G17.id_of(sp17.Delta))) == 306


def test_centralize_is_central(G17, S17):
    rng = random.Random(0)
    for name in ("<V>", "W<V>", "Delta<T>"):
        c = centralize(G17, S17[name])
        assert c.is_central(rng.sample(range(G17.order), 50))
        g = set_sum(G17, {rng.randrange(G17.order)})
        assert c * g == g * c


@pytest.mark.parametrize("spec", ["gpq:7:3", "quaternion8", "sl2:5", "gpq:11:5"])
def test_centralize_against_oracle(spec):
    G = builtin(spec)
    rng = random.Random(spec)
    T = G.table.tolist()
    for _ in range(8):
        support = rng.sample(range(G.order), rng.randint(1, 5))
        coeffs = {g: rng.choice([-3, -1, 1, 2, 7]) for g in support}
        x = RingElement(G, coeffs)
        c = centralize(G, x)
        assert c.coeffs == brute_centralize(T, coeffs)
        assert c.is_central()
        assert maschke(G, x) == c.scale(stabilizer_order(G, x))
        assert G.order % orbit_size(G, x) == 0


@pytest.mark.parametrize("spec", ["gpq:7:3", "sl2:5"])
def test_centralize_fixes_class_sums(spec):
    from scharlau.groups import conjugacy_classes
    G = builtin(spec)
    for rep, _ in conjugacy_classes(G):
        cs = class_sum(G, rep)
        assert centralize(G, cs) == cs


def test_set_stabilizer_matches_ring_stabilizer(G5):
    rng = random.Random(5)
    for _ in range(20):
        S = rng.sample(range(G5.order), 3)
        assert len(set_stabilizer(G5, S)) == stabilizer_order(G5, set_sum(G5, S))


G21 = builtin("gpq:7:3")
elements = st.dictionaries(st.integers(0, 20), st.integers(-50, 50), max_size=6)


@settings(max_examples=60, deadline=None)
@given(elements, elements)
def test_augmentation_is_multiplicative(a, b):
    x, y = RingElement(G21, a), RingElement(G21, b)
    assert (x * y).augmentation() == x.augmentation() * y.augmentation()


@settings(max_examples=40, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    x, y, z = RingElement(G21, a), RingElement(G21, b), RingElement(G21, c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == 0


def test_conjugate_and_render():
    G = builtin("gpq:3:2")
    x = RingElement(G, {1: 2, 0: -1})
    assert x.render() == "-1 * (0,0)\n2 * (1,0)"
    assert conjugate(G, x, 0) == x
