"""Universe category functors, the homomorphism H and the transport laws."""
import pytest

from csystems.category import yoneda
from csystems.fixtures import identity_fs2
from csystems.functoriality import (ChiXi, build_h, check_chi, check_d_phi_n, check_h, check_iota,
                                    check_mu_transport, check_phi_d, check_phi_n,
                                    check_psi_naturality, check_u1_diagrams, check_u_transport,
                                    check_ucf, check_xi_square, check_yo_phi, make_inc)
from csystems.lcc_rep import LccRep


@pytest.fixture(scope="module", params=[False, True], ids=["plain", "twisted"])
def F(request):
    return make_inc(twist=request.param)


@pytest.fixture(scope="module")
def hh(F):
    return build_h(F, 2)


def test_ucf_axioms(F):
    assert check_ucf(F, F.C.objects()).ok


def test_collapsed_fiber_is_not_a_pullback():
    bad = make_inc(fault="phit")
    rep = check_ucf(bad, bad.C.objects())
    assert not rep.ok
    assert rep.first().as_dict()["clause"] == "phi-square-pullback"


def test_iota_and_phi_d(F):
    objs = F.C.objects()
    assert check_iota(F, objs).ok
    pres = [yoneda(F.C2, Y) for Y in F.C2.objects()]
    assert check_phi_d(F, pres, [], objs).ok


def test_twist_makes_iota_nontrivial():
    F = make_inc(twist=True)
    X = F.C.objects()[1]
    two = [c for c in F.u.codes(X) if F.u.sizes[c(next(iter(X)))] == 2][0]
    assert F.iota(two) != F.C2.identity(F.C2.dom(F.iota(two)))


def test_phi_n_and_d_phi(F):
    objs = F.C.objects()
    assert check_yo_phi(F, objs).ok
    for n in range(3):
        assert check_phi_n(F, n, objs).ok
        assert check_d_phi_n(F, n, objs, objs).ok


def test_h_homomorphism(hh):
    objs = hh.cc.scope(2, 2)
    assert check_h(hh, objs).ok
    assert check_psi_naturality(hh, objs).ok


def test_h_is_injective_on_objects(hh):
    objs = hh.cc.upto(2)
    assert len({hh.ob(G) for G in objs}) == len(objs)


def test_identity_functor_gives_identity_h():
    hh = build_h(identity_fs2(), 2)
    for G in hh.cc.upto(2):
        H = hh.ob(G)
        assert H.codes() == G.codes()
        assert hh.psi(G) == hh.C2.identity(G.int)


def test_u_transport(hh):
    assert check_u1_diagrams(hh, hh.cc.scope(1, 2)).ok
    for n in (1, 2):
        assert check_u_transport(hh, n, hh.cc.scope(2 - n, 2)).ok


def test_chi_xi_and_mu_transport(F, hh):
    cx = ChiXi(F, LccRep(F.C, F.u), LccRep(F.C2, F.u2))
    objs = F.C.objects()
    assert cx.chi(0, objs[1]) == F.C2.identity(objs[1])
    assert cx.xi(0) == F.phi and cx.xi_t(0) == F.phit
    assert check_chi(cx, 1, objs, objs, gs=[F.u.p]).ok
    assert check_xi_square(cx, 1).ok
    assert check_mu_transport(hh, cx, 1, hh.cc.scope(1, 2)).ok
