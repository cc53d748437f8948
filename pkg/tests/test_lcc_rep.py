"""The representation of D_p through I_p on finite sets."""
from itertools import product

from csystems.lcc_rep import LccRep, check_eta, check_id_n, check_ip, check_mu, check_st_square
from csystems.universe import DCalculus


def test_ip_cardinality(fs2_u3):
    C, u = fs2_u3
    R = LccRep(C, u)
    for Y in C.objects():
        # one point over code c for each map from a c-element fiber into Y
        assert len(R.I(Y)) == sum(len(Y) ** s for s in u.sizes)


def test_eta_cardinalities_and_bijection(fs2_u3):
    C, u = fs2_u3
    R, D = LccRep(C, u), DCalculus(u)
    for X, Y in product(C.objects(), C.objects()):
        ds = D.elements(1, X, Y)
        assert len(ds) == C.hom_size(X, R.I(Y))
        assert len({R.eta(Y, d) for d in ds}) == len(ds)
    assert check_eta(R, 1, C.objects(), Ys=list(C.objects()) + [u.U]).ok


def test_ip_and_strength(fs2_u3):
    C, u = fs2_u3
    R = LccRep(C, u)
    assert check_ip(R, C.objects()).ok
    assert check_st_square(R, C.objects()).ok


def test_identity_element_laws(fs2_u3):
    C, u = fs2_u3
    R = LccRep(C, u)
    for n in range(3):
        assert check_id_n(R, n, C.objects()).ok


def test_mu(fs2_u3, cc3):
    C, u = fs2_u3
    R = LccRep(C, u)
    for n in (1, 2):
        assert check_mu(R, cc3, n, cc3.scope(3 - n, 2)).ok
