"""Universe, D_p and the circle actions."""
import random
from itertools import product

from hypothesis import given, settings, strategies as st

from csystems.category import check_presheaf, yoneda
from csystems.universe import DCalculus, check_circ_laws, check_universe, d_iter


def brute_d(C, u, n, X, Y):
    """D^n(X,Y) by direct recursion on codes, independent of the presheaf machinery."""
    if n == 0:
        return set(C.hom(X, Y))
    return {(F, a) for F in C.hom(X, u.U) for a in brute_d(C, u, n - 1, u.ext(F), Y)}


def test_comprehension_sizes(fs2_u3):
    C, u = fs2_u3
    for X in C.objects():
        for F in u.codes(X):
            assert len(u.ext(F)) == sum(u.sizes[c] for c in (F(x) for x in X))


def test_universe_laws(fs2_u3):
    C, u = fs2_u3
    assert check_universe(u, C.objects()).ok


def test_d_elements_match_brute_force(fs2_u3):
    C, u = fs2_u3
    D = DCalculus(u)
    for n in range(3):
        for X, Y in product(C.objects(), C.objects()):
            assert set(D.elements(n, X, Y)) == brute_d(C, u, n, X, Y)


def test_d_iter_is_a_presheaf(fs2_u3):
    C, u = fs2_u3
    for Y in C.objects():
        assert check_presheaf(d_iter(u, 2, yoneda(C, Y)), C.objects()).ok


def test_circle_laws_exhaustive_depth_1(fs2_u3):
    C, u = fs2_u3
    assert check_circ_laws(DCalculus(u), 1, C.objects()).ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2), st.integers(0, 10_000))
def test_nested_pairs_agree_with_presheaf_route(n, seed, ):
    from csystems.fixtures import fs2_u3
    C, u = fs2_u3()
    D = DCalculus(u)
    rng = random.Random(seed)
    objs = C.objects()
    X, Y = rng.choice(objs[1:]), rng.choice(objs[1:])
    ds = D.elements(n, X, Y)
    if not ds:
        return
    d = rng.choice(sorted(ds, key=repr))
    X1 = rng.choice(objs)
    f = rng.choice(list(C.hom(X1, X)) or [None])
    if f is not None:
        assert D.left(f, n, d) == D.left_generic(f, n, Y, d)
    g = rng.choice(list(C.hom(Y, rng.choice(objs[1:]))))
    assert D.right(n, d, g) == D.right_generic(n, X, d, g)
