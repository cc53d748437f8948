"""Finite-set structures against brute-force oracles."""
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from csystems.finset import (BoundExceeded, SigmaPullbacks, SFn, SkeletalFinSet,
                             SkeletalPullbacks, SwappedProducts, make_finset)
from csystems.limits import (check_adj_laws, check_binary_products, check_ccc,
                             check_hom_contravariant, check_lcc, check_product_compare,
                             check_pullback_slice_equiv, check_pullbacks, commuting_squares,
                             cospans, is_pullback, str_differences)

C = make_finset(2)
OBJ = C.objects()


def all_functions(X, Y):
    xs = list(X)
    return [dict(zip(xs, t)) for t in product(list(Y), repeat=len(xs))]


def test_hom_sizes_match_counting():
    for X, Y in product(OBJ, OBJ):
        assert len(list(C.hom(X, Y))) == len(all_functions(X, Y)) == len(Y) ** len(X)


def test_products_both_structures():
    assert check_binary_products(C, C.products, OBJ).ok
    assert check_binary_products(C, SwappedProducts(C), OBJ).ok


def test_product_comparison_isomorphisms():
    assert check_product_compare(C, C.products, SwappedProducts(C), OBJ).ok


def test_pullback_apex_is_the_set_of_matching_pairs():
    for f, g in cospans(C, OBJ):
        sq = C.pullbacks.square(f, g)
        pairs = [(x, y) for x in C.dom(f) for y in C.dom(g) if f(x) == g(y)]
        assert len(sq.apex) == len(pairs)
        assert sorted((sq.pr1(z), sq.pr2(z)) for z in sq.apex) == sorted(pairs)


def test_chosen_pullbacks_are_universal():
    assert check_pullbacks(C, C.pullbacks, cospans(C, OBJ), OBJ).ok


def test_ccc_and_internal_hom_size():
    assert check_ccc(C.ccc, OBJ).ok
    for X, Y in product(OBJ, OBJ):
        assert len(C.ccc.hom_obj(X, Y)) == len(Y) ** len(X)


def test_hom_functor_laws():
    assert check_hom_contravariant(C.ccc, OBJ).ok
    assert check_adj_laws(C.ccc, OBJ).ok


def test_lcc():
    assert check_lcc(C.lcc, OBJ).ok


def test_pullback_iff_slice_product():
    squares = list(commuting_squares(C, OBJ))
    rep = check_pullback_slice_equiv(C, squares, OBJ)
    assert rep.ok
    # some squares are pullbacks and some are not
    assert 0 < rep.pullbacks_seen < len(squares)


def test_derived_sets_are_bounded():
    small = make_finset(2, max_card=3)
    X = small.objects()[2]
    with pytest.raises(BoundExceeded):
        small.ccc.hom_obj(X, small.make(range(3)))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=0, max_size=3),
       st.lists(st.integers(0, 2), min_size=0, max_size=3))
def test_skeletal_pullbacks_are_pullbacks(ft, gt):
    F = SkeletalFinSet(3)
    f, g = SFn(len(ft), 3, ft), SFn(len(gt), 3, gt)
    sq = SkeletalPullbacks(F).square(f, g)
    assert is_pullback(F, sq, F.objects())
    assert sq.apex == sum(1 for a in ft for b in gt if a == b)


def test_two_skeletal_structures():
    F = SkeletalFinSet(3)
    s1, ss = SkeletalPullbacks(F), SigmaPullbacks(F)
    objs = F.objects()
    assert check_pullbacks(F, ss, cospans(F, objs), objs).ok
    idx = F.identity(2)
    assert str_differences(F, s1, ss, objs) == [(idx, idx)]
    sq = ss.square(idx, idx)
    assert sq.pr1 == sq.pr2 == SFn(2, 2, (1, 0))


def test_automorphism_count():
    F = SkeletalFinSet(3)
    assert sum(1 for _ in F.automorphisms()) == 1 * 1 * 2 * 6
