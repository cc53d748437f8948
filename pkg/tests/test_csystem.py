"""Generic C-system operations, on the table C-system and on CC."""
from csystems.csystem import (check_boundary_square, check_csystem, check_membership,
                              check_sob, check_sob_iter, check_sobt, ob_presheaf, s_ob)
from csystems.model import Model

from conftest import load


def unit():
    return Model(load("unit_csystem.spec")).csystem()


def test_table_csystem_axioms():
    cs = unit()
    assert cs.N == 1
    assert check_csystem(cs).ok
    assert [cs.length(X) for X in cs.upto(1)] == [0, 1]


def test_table_csystem_sections():
    cs = unit()
    # X is isomorphic to pt, so p_X has exactly one section
    X = cs.children(cs.pt)[0]
    assert len(cs.sections(X)) == 1


def test_broken_q_is_found():
    cs = Model(load("faults/q-square.spec")).csystem()
    rep = check_csystem(cs, bases=cs.scope(2, 2))
    assert not rep.ok and rep.first().law == "q-square"


def test_ob_presheaf_sizes(cc3, fs2_u3):
    C, u = fs2_u3
    Ob1 = ob_presheaf(cc3, 1)
    for G in cc3.upto(2):
        assert len(Ob1.at(G)) == len(u.sizes) ** len(G.int)


def test_sob_round_trips(cc3):
    objs = cc3.scope(1, 2)
    for n in (0, 1):
        assert check_sob(cc3, n, objs).ok
    assert check_sobt(cc3, 1, objs).ok
    assert check_boundary_square(cc3, 1, objs).ok
    assert check_sob_iter(cc3, 1, 1, cc3.scope(1, 2)).ok
    assert check_membership(cc3, 1, objs).ok


def test_sob_zero_is_an_isomorphism_of_ob1(cc3):
    # Sig(Ob_0) at G is Ob_1(G), and SOb_0 lands in Ob_1(G) bijectively
    r = s_ob(cc3, 0)
    G = cc3.children(cc3.pt)[2]
    ims = [r(G, x) for x in r.source.at(G)]
    assert len(set(ims)) == len(ims) == len(cc3.ob_n(G, 1))
