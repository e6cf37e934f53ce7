import pytest

from scharlau.errors import NotInSL2, OrderCap
from scharlau.groups import class_of, conjugacy_classes
from scharlau.modp import is_prime
from scharlau.sl2 import (ClassLabel, Mat2, all_labels, build_specials, class_size,
                          class_size_total, classify, enumerate_sl2, trace_census,
                          v_inverse_conjugator)
from scharlau.verify import sl2_group

from oracles import matmul, sl2_elements


def test_mat2_rejects_det_not_one():
    with pytest.raises(NotInSL2):
        Mat2(0, 6, 3, 16, 17)  # det -1


def test_mat2_product_matches_raw_formula():
    p = 17
    els = sl2_elements(p)[::97]
    for x in els:
        for y in els[:10]:
            assert (Mat2(*x, p) * Mat2(*y, p)) == Mat2(*matmul(x, y, p), p)


def test_specials_at_17(sp17):
    I = sp17.identity
    assert sp17.V == Mat2(0, 16, 1, 16, 17)
    assert (sp17.u, sp17.u_inv) == (3, 6)
    # W = [[0, -1/u], [u, -1]] with u = 3
    assert sp17.W == Mat2(0, 11, 3, 16, 17)
    assert sp17.V ** 3 == I and sp17.W ** 3 == I
    assert sp17.V.trace == 16 and sp17.W.trace == 16
    assert (sp17.W * sp17.V).trace == 9
    assert (sp17.W * sp17.V.inverse()).trace == 9
    assert sp17.Delta == Mat2.diag(3, 17) and sp17.Delta.trace == 9
    assert sp17.alpha == 3 and sp17.Q == Mat2.elementary(3, 17)
    assert sp17.T == Mat2.elementary(1, 17)


def test_products_with_w_match_closed_forms(sp17):
    u, ui, p = 3, 6, 17
    assert sp17.W * sp17.V == Mat2(-ui, ui, -1, 1 - u, p)
    assert sp17.W * sp17.V.inverse() == Mat2(ui, 0, 1 - u, u, p)


@pytest.mark.parametrize("p", [5, 13, 17, 101])
def test_specials_without_w(p):
    sp = build_specials(p, with_w=False)
    assert sp.W is None and sp.V.order() == 3


def test_classify_examples(G17, sp17):
    assert classify(sp17.identity) == ClassLabel("I")
    assert classify(sp17.neg_identity) == ClassLabel("-I")
    assert classify(Mat2.elementary(4, 17)) == ClassLabel("T")
    assert classify(Mat2.elementary(3, 17)) == ClassLabel("Q")
    assert classify(-Mat2.elementary(1, 17)) == ClassLabel("-T")
    assert classify(sp17.W * sp17.V) == ClassLabel("trace", 9)
    # E12(4) ~ E12(1) by orbit enumeration
    assert G17.id_of(Mat2.elementary(4, 17)) in class_of(G17, G17.id_of(sp17.T))
    assert G17.id_of(Mat2.elementary(3, 17)) not in class_of(G17, G17.id_of(sp17.T))


def test_class_size_examples():
    assert class_size(ClassLabel("trace", 9), 17) == 306
    assert class_size(ClassLabel("trace", 16), 17) == 272
    assert class_size(ClassLabel("T"), 17) == 144
    assert class_size(ClassLabel("-I"), 17) == 1


def test_class_size_examples_by_enumeration(G17, sp17):
    assert len(class_of(G17, G17.id_of(sp17.Delta))) == 306
    assert len(class_of(G17, G17.id_of(sp17.V))) == 272
    assert len(class_of(G17, G17.id_of(sp17.T))) == 144


def test_label_count_and_str():
    assert len(all_labels(17)) == 21
    assert str(ClassLabel("I")) == "Central(+I)"
    assert str(ClassLabel("-Q")) == "Unipotent(-Q)"
    assert str(ClassLabel("trace", 9)) == "Trace(9)"
    assert sorted(all_labels(5)) == all_labels(5)


def test_enumerate_orders():
    assert enumerate_sl2(5).order == 120
    assert enumerate_sl2(3).order == 24
    with pytest.raises(OrderCap):
        enumerate_sl2(17, max_order=1000)
    with pytest.raises(OrderCap):
        enumerate_sl2(257)


def test_enumerate_17(G17):
    assert G17.order == 4896
    assert G17.elements[0].is_identity()
    assert len(conjugacy_classes(G17)) == 21
    assert len(set(G17.elements)) == 4896


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_classify_agrees_with_orbits(p):
    G = sl2_group(p)
    classes = conjugacy_classes(G)
    assert len(classes) == p + 4
    seen = set()
    for _, members in classes:
        labels = {classify(G.elements[g]) for g in members}
        assert len(labels) == 1
        (lab,) = labels
        assert len(members) == class_size(lab, p)
        seen.add(lab)
    assert seen == set(all_labels(p))


def test_class_size_sum_symbolic_to_1e5():
    for p in range(3, 10 ** 5, 2):
        if is_prime(p):
            assert class_size_total(p) == (p - 1) * p * (p + 1)


@pytest.mark.parametrize("p", [p for p in range(5, 400) if is_prime(p)])
def test_trace_census(p):
    assert trace_census(p) == ((p - 3) // 2, (p - 1) // 2)
    assert sum(class_size(lab, p) for lab in all_labels(p)) == (p - 1) * p * (p + 1)


@pytest.mark.parametrize("p", [5, 13, 17, 29, 257])
def test_v_conjugate_to_inverse(p):
    J = v_inverse_conjugator(p)
    V = build_specials(p, with_w=False).V
    assert J.b == J.c and J.a == J.d == 0
    assert (J.b * J.b) % p == p - 1
    assert V.conj(J) == V.inverse()
