from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from csystems.category import (CompositionError, LawReport, Presheaf, PresheafMorphism,
                               TableCategory, check_category, check_presheaf,
                               check_presheaf_morphism, invert_presheaf_morphism, pm_compose,
                               yoneda, yoneda_on_morphism)
from csystems.finset import make_finset


def arrow_category():
    # 0 -> 1 with identities
    return TableCategory("arrow", ["a", "b"], {"u": ("a", "b"), "1a": ("a", "a"), "1b": ("b", "b")},
                         {"a": "1a", "b": "1b"},
                         {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("1a", "u"): "u", ("u", "1b"): "u"})


def test_table_category_laws():
    assert check_category(arrow_category()).ok


def test_broken_unit_is_reported():
    C = arrow_category()
    M = C.with_composition("u", "1b", "1b")
    rep = check_category(M)
    assert not rep.ok
    assert rep.first().law


def test_composition_is_diagrammatic():
    C = make_finset(2)
    X = C.objects()[2]
    swap = C.fn(X, X, lambda x: 1 - x)
    const = C.fn(X, X, lambda x: 0)
    # first swap, then const: still const; first const, then swap: const 1
    assert C.compose(swap, const) == const
    assert C.compose(const, swap) == C.fn(X, X, lambda x: 1)


def test_noncomposable_raises():
    C = make_finset(2)
    X, Y = C.objects()[1], C.objects()[2]
    f = C.fn(X, Y, lambda x: 0)
    with pytest.raises(CompositionError):
        C.compose(f, f)


fs2 = make_finset(2)
OBJ = fs2.objects()


def morphism(X, Y):
    return st.sampled_from(list(fs2.hom(X, Y)))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_associativity_property(data):
    W = data.draw(st.sampled_from(OBJ))
    X, Y, Z = (data.draw(st.sampled_from(OBJ[1:])) for _ in range(3))
    f, g, h = data.draw(morphism(W, X)), data.draw(morphism(X, Y)), data.draw(morphism(Y, Z))
    assert fs2.compose(fs2.compose(f, g), h) == fs2.compose(f, fs2.compose(g, h))
    # pointwise oracle
    for w in W:
        assert fs2.compose(f, g, h)(w) == h(g(f(w)))


def test_yoneda_is_a_presheaf_and_maps_are_natural():
    C = fs2
    for Y in OBJ:
        assert check_presheaf(yoneda(C, Y), OBJ).ok
    for X, Y in product(OBJ, OBJ):
        for g in C.hom(X, Y):
            assert check_presheaf_morphism(yoneda_on_morphism(C, g), OBJ).ok


def test_presheaf_is_contravariant():
    C = fs2
    Y = OBJ[2]
    G = yoneda(C, Y)
    X1, X2 = OBJ[1], OBJ[2]
    f = C.fn(X1, X2, lambda x: 1)
    for y in G.at(X2):
        assert G.restrict(f, y) == C.compose(f, y)


def test_inverting_a_presheaf_morphism():
    C = fs2
    Y = OBJ[2]
    swap = C.fn(Y, Y, lambda x: 1 - x)
    r = yoneda_on_morphism(C, swap)
    inv = invert_presheaf_morphism(r, OBJ)
    both = pm_compose(r, inv)
    for X in OBJ:
        for x in r.source.at(X):
            assert both(X, x) == x


def test_law_report_counts():
    rep = LawReport("r")
    rep.check(True, "a")
    rep.check(False, "b", where=1)
    assert rep.instances == 2 and rep.failures == 1
    assert rep.first().as_dict()["law"] == "b"
