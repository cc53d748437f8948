"""The C-system CC(C,p) over FS2 with U = {0,1,2}."""
from itertools import product as iproduct

import pytest

from csystems.category import TruncationError
from csystems.cc import check_int, check_int_sections, check_section_bijection, check_u1, check_un
from csystems.csystem import check_csystem


def towers(sizes, card, k):
    """Length-k code towers over a context with ``card`` elements."""
    if k == 0:
        return [()]
    out = []
    for codes in iproduct(range(len(sizes)), repeat=card):
        out += [(codes,) + rest for rest in towers(sizes, sum(sizes[c] for c in codes), k - 1)]
    return out


def test_object_counts(cc3, fs2_u3):
    C, u = fs2_u3
    objs = cc3.upto(3)
    for k in range(4):
        assert sum(1 for X in objs if X.n == k) == len(towers(u.sizes, 1, k))
    assert [len(towers(u.sizes, 1, k)) for k in range(4)] == [1, 3, 13, 183]


def test_ob1_over_pt_counts_codes(cc3, fs2_u3):
    C, u = fs2_u3
    assert len(cc3.ob_n(cc3.pt, 1)) == C.hom_size(C.terminal, u.U) == 3


def test_truncation_is_enforced(cc3):
    top = [X for X in cc3.upto(3) if X.n == 3][0]
    with pytest.raises(TruncationError):
        cc3.children(top)


def test_ft_and_projections(cc3):
    C = cc3.category
    for X in cc3.upto(3):
        if X.n:
            p = cc3.proj(X)
            assert C.dom(p) == X and C.cod(p) == cc3.ft(X)
            assert cc3.length(cc3.ft(X)) == X.n - 1


def test_csystem_axioms(cc3):
    assert check_csystem(cc3, bases=cc3.scope(2, 2)).ok


def test_int_is_fully_faithful(cc3):
    assert check_int(cc3, cc3.scope(2, 2)).ok


def test_sections(cc3, fs2_u3):
    C, u = fs2_u3
    assert check_section_bijection(C, u, C.objects()).ok
    assert check_int_sections(cc3, cc3.scope(2, 2)).ok
    # a section of p_F picks an element of the fiber over each point
    for T in cc3.upto(2):
        if T.n:
            want = 1
            for x in T.parent.int:
                want *= u.sizes[T.F(x)]
            assert len(cc3.sections(T)) == want


def test_u1_and_un(cc3):
    assert check_u1(cc3, cc3.scope(2, 2)).ok
    for n in (1, 2):
        assert check_un(cc3, n, cc3.scope(3 - n, 2)).ok
