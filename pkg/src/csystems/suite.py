"""Named checks, groups, and the suite runner.

Every check has a name (the label of the statement it verifies, or a
short descriptive name for plumbing), the groups it belongs to, the model
parts it needs, and the range of the depth parameter ``n`` it supports.
Running a check returns a :class:`Record`; records serialize to one JSON
object per line, sorted by check name.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import product as iproduct

from .category import (CategoryError, LawReport, PresheafMorphism, check_category, check_presheaf,
                       check_presheaf_morphism, invert_presheaf_morphism, pm_compose, render, yoneda,
                       yoneda_on_morphism, Functor, check_functor)
from .cc import (CC, check_int, check_int_sections, check_l4_square, check_ob1_criterion,
                 check_sd_p, check_section_bijection, check_u1, check_un)
from .csystem import (check_boundary_square, check_csystem, check_membership, check_sig_functor,
                      check_sob, check_sob_iter, check_sobt, ob_presheaf, obt_presheaf, s_ob,
                      s_ob_inv, sig)
from .functoriality import (ChiXi, build_h, check_chi, check_d_phi_n, check_d_phi_square, check_h,
                            check_iota, check_mu_transport, check_phi_d, check_phi_n,
                            check_psi_naturality, check_u1_diagrams, check_u_transport, check_ucf,
                            check_xi_square, check_yo_phi)
from .lcc_rep import LccRep, check_eta, check_id_n, check_ip, check_mu, check_st_square
from .limits import (check_adj_laws, check_binary_products, check_ccc, check_hom_contravariant,
                     check_lcc, check_product_compare, check_pullback_slice_equiv, check_pullbacks,
                     check_slice_product_functor, commuting_squares, cospans, str_differences)
from .model import Model
from .universe import DCalculus, check_circ_laws, check_universe, d_iter, d_on_presheaf

GROUPS = ("basic", "appendixA", "appendixB", "example", "sec1", "sec2", "sec3-5", "sec6",
          "sec7-10")
ALIASES = {"appendix": ("appendixA", "appendixB"), "all": GROUPS}


class SelectionError(Exception):
    pass


class Skip(Exception):
    """Raised by a check when the model is too small for it to say anything."""


@dataclass(frozen=True)
class Params:
    n: int | None = None
    truncation: int | None = None
    depth: int | None = None

    def over(self, other: "Params") -> "Params":
        """Fields of self, falling back to ``other``."""
        return Params(*(a if a is not None else b for a, b in
                        zip((self.n, self.truncation, self.depth),
                            (other.n, other.truncation, other.depth))))


@dataclass
class Check:
    name: str
    groups: tuple
    needs: tuple
    run: object
    n_range: tuple | None = None     # (lo, hi) of supported n, None if n is unused
    n_default: int | None = None
    truncation_range: tuple = (1, 4)
    depth_default: int | None = None
    doc: str = ""


REGISTRY: dict = {}


def check(name, groups, needs=(), n=None, n_default=None, depth=None, truncation=(1, 4)):
    def deco(fn):
        hi = n[1] if n else None
        REGISTRY[name] = Check(name, tuple(groups), tuple(needs), fn, n,
                               n_default if n_default is not None else hi, truncation, depth,
                               (fn.__doc__ or "").strip())
        return fn
    return deco


@dataclass
class Record:
    check: str
    status: str
    instances: int = 0
    failures: int = 0
    witness: dict | None = None
    reason: str | None = None
    params: dict = field(default_factory=dict)
    fault: dict | None = None
    time: float = 0.0

    def as_dict(self, timing=True):
        d = {"check": self.check, "status": self.status, "instances": self.instances,
             "failures": self.failures, "witness": self.witness, "reason": self.reason,
             "params": self.params, "fault": self.fault}
        if timing:
            d["time"] = round(self.time, 3)
        return d


# ---------------------------------------------------------------- helpers

def _objs(m):
    return list(m.C.objects())


def _scope(cs, length, depth):
    length = max(length, 0)
    if hasattr(cs, "scope"):
        return cs.scope(length, depth)
    return cs.upto(min(length, cs.N))


def _merge(name, reports):
    out = LawReport(name)
    for r in reports:
        out.merge(r)
    return out


def _rep(m):
    return m._memo("lccrep", lambda: LccRep(m.C, m.u))


def _hh(m, N):
    return m._memo(("H", N), lambda: build_h(m.ucf, N))


def _chixi(m):
    F = m.ucf
    return m._memo("chixi", lambda: ChiXi(F, LccRep(F.C, F.u), LccRep(F.C2, F.u2)))


# ---------------------------------------------------------------- basic

@check("category-laws", ["basic", "appendixA"], ["category"])
def _category_laws(m, p):
    """Identity and associativity laws of the category over every composable triple."""
    return check_category(m.C, _objs(m))


@check("csystem-axioms", ["basic", "sec3-5"], ["csystem"], depth=4)
def _csystem_axioms(m, p):
    """The C-system clauses, including the pullback property of the q-squares."""
    cs = m.csystem(p.truncation)
    bases = _scope(cs, cs.N - 1, p.depth)
    return check_csystem(cs, bases=bases, compose_bases=_scope(cs, cs.N - 1, min(p.depth or 2, 2)))


# ---------------------------------------------------------------- group appendixA

@check("def-2016.12.02.def1", ["appendixA"], ["products"])
def _products(m, p):
    """Chosen binary products satisfy the universal property (both structures on finite sets)."""
    C, objs = m.C, _objs(m)
    rep = check_binary_products(C, m.products, objs)
    if m.backend == "finset":
        rep.merge(check_binary_products(C, m.other_products, objs))
    return rep


@check("lemma-2016.12.02.l1", ["appendixA"], ["two-products"])
def _product_compare(m, p):
    """Comparison morphisms between two product structures are mutually inverse."""
    return check_product_compare(m.C, m.products, m.other_products, _objs(m), natural=False)


@check("lemma-2015.04.16.l1", ["appendixA"], ["two-products"])
def _product_compare_natural(m, p):
    """Comparison isomorphisms commute with the a x b maps of both structures."""
    return check_product_compare(m.C, m.products, m.other_products, _objs(m))


@check("def-2016.11.28.def1", ["appendixA"], ["ccc"])
def _ccc(m, p):
    return check_ccc(m.ccc, _objs(m))


@check("lemma-2015.04.10.l1", ["appendixA"], ["ccc"])
def _hom_contra(m, p):
    """Hom(-,Y) is a contravariant functor and Hom(-,-) a bifunctor."""
    return check_hom_contravariant(m.ccc, _objs(m), only={
        "Hom(Id,Y)=Id", "Hom(a;a',Y)=Hom(a',Y);Hom(a,Y)", "bifunctor-square"})


@check("lemma-2015.04.20.l2", ["appendixA"], ["ccc"])
def _pre_eval(m, p):
    """The defining square of Hom(a,Y) against evaluation."""
    return check_hom_contravariant(m.ccc, _objs(m), only={"pre-eval-square"})


@check("lemma-2015.05.12.l2", ["appendixA"], ["ccc"])
def _adj_laws(m, p):
    return check_adj_laws(m.ccc, _objs(m))


# ---------------------------------------------------------------- group appendixB

@check("pullback-structure", ["appendixB", "example"], ["pullbacks"])
def _pullbacks(m, p):
    """Every chosen pullback square commutes and is universal."""
    C, objs = m.C, _objs(m)
    return check_pullbacks(C, m.pullbacks, cospans(C, objs), objs)


@check("lemma-2016.12.16.l1", ["appendixB"], ["finset"])
def _pb_slice(m, p):
    """A commuting square is a pullback iff it is a product in the slice."""
    C, objs = m.C, _objs(m)
    rep = check_pullback_slice_equiv(C, list(commuting_squares(C, objs)), objs)
    rep.check(rep.pullbacks_seen > 0, "some-square-is-a-pullback", seen=rep.pullbacks_seen)
    return rep


@check("def-2015.03.27.def1", ["appendixB"], ["lcc"])
def _lcc(m, p):
    return check_lcc(m.lcc, _objs(m))


@check("lemma-2015.05.14.l1", ["appendixB"], ["lcc"])
def _slice_product_functor(m, p):
    """a x_Z b is functorial in both arguments."""
    rep = LawReport("slice-product-functor")
    C = m.C
    for Z in _objs(m):
        S = m.lcc.slice(Z)
        sobjs = list(S.objects())
        rep.merge(check_slice_product_functor(S, m.lcc.slice_ccc(Z).products, sobjs))
    return rep


def _legs(sq):
    return sq.apex, sq.pr1, sq.pr2


def _image(A, sq):
    return A.ob(sq.apex), A.mor(sq.pr1), A.mor(sq.pr2)


@check("ex-2015.05.20.ex1", ["example"], ["skeletal"])
def _example_f(m, p):
    """str_1 and str_sigma are both pullback structures, differ only at (Id_X, Id_X), and no
    automorphism of F carries one to the other."""
    from .finset import SFn, SigmaPullbacks, SkeletalPullbacks
    F = m.C
    objs = _objs(m)
    s1, ss = SkeletalPullbacks(F), SigmaPullbacks(F)
    rep = LawReport("ex")
    rep.merge(check_pullbacks(F, s1, cospans(F, objs), objs))
    rep.merge(check_pullbacks(F, ss, cospans(F, objs), objs))
    idx, sigma = SFn(2, 2, (0, 1)), SFn(2, 2, (1, 0))
    diff = str_differences(F, s1, ss, objs)
    rep.check(diff == [(idx, idx)], "differ-exactly-at-(Id_X,Id_X)", differences=diff)
    a, b = s1.square(idx, idx), ss.square(idx, idx)
    rep.check((a.apex, a.pr1, a.pr2) == (2, idx, idx), "str_1-square", square=a)
    rep.check((b.apex, b.pr1, b.pr2) == (2, sigma, sigma), "str_sigma-square", square=b)
    bound = max(objs)
    spans = [(f, g) for f, g in cospans(F, objs) if s1.square(f, g).apex <= bound]
    n_aut = 0
    for perm in F.automorphisms():
        n_aut += 1
        A = Functor(F, F, lambda X: X, lambda f, perm=perm: F.conjugate(perm, f))
        rep.merge(check_functor(A, objs, name="automorphism"))
        carried = all(_image(A, s1.square(f, g)) == _legs(ss.square(A.mor(f), A.mor(g)))
                      for f, g in spans)
        rep.check(not carried, "no-automorphism-carries-str_1-to-str_sigma", perm=perm)
    rep.check(n_aut == 12, "automorphism-count", found=n_aut)
    return rep


# ---------------------------------------------------------------- group sec1

@check("lemma-2016.08.28.l1", ["sec1"], ["csystem"], n=(0, 3), n_default=2, depth=2)
def _sig_presheaf(m, p):
    """Sig(G) is a presheaf, for G = Ob_k and Obt_k."""
    cs = m.csystem(p.truncation)
    reps = []
    for k in range(p.n + 1):
        if k + 1 > cs.N:
            break
        objs = _scope(cs, cs.N - k - 1, p.depth)
        reps.append(check_presheaf(sig(cs, ob_presheaf(cs, k)), objs))
        if k:
            reps.append(check_presheaf(sig(cs, obt_presheaf(cs, k)), objs))
    return _merge("sig-presheaf", reps)


@check("eq-2016.08.30.eq9", ["sec1"], ["csystem"])
def _sig_functor(m, p):
    """Sig on morphisms: naturality, Sig(Id) = Id and Sig(r;r') = Sig(r);Sig(r')."""
    cs = m.csystem(p.truncation)
    if cs.N < 2:
        raise Skip("Sig of Ob_1 needs truncation >= 2")
    objs = _scope(cs, cs.N - 2, p.depth)
    rs = m.sig_test_morphisms(cs, cs.upto(cs.N - 1))
    return check_sig_functor(cs, rs, objs)


@check("lemma-2016.11.14.l1", ["sec1"], ["csystem"], n=(0, 3), n_default=2)
def _invertible(m, p):
    """Componentwise inversion of SOb_k gives the natural inverse SOb_k^-1."""
    cs = m.csystem(p.truncation)
    rep = LawReport("inverse")
    for k in range(min(p.n, cs.N - 1) + 1):
        objs = _scope(cs, cs.N - k - 1, p.depth)
        r, ri = s_ob(cs, k), s_ob_inv(cs, k)
        inv = invert_presheaf_morphism(r, objs)
        for G in objs:
            for y in r.target.at(G):
                rep.check(inv(G, y) == ri(G, y), "componentwise-inverse=SOb^-1", G=G, element=y)
        rep.merge(check_presheaf_morphism(inv, objs, name="inverse-natural"))
    return rep


@check("lemma-2016.09.01.l1", ["sec1"], ["csystem"], n=(0, 3), n_default=2)
def _membership_ob(m, p):
    cs = m.csystem(p.truncation)
    laws = {"X in Ob_n(T) => X in Ob_{n+1}(G)", "ft^n X in Ob_1(G) and X in Ob_n(ft^n X)"}
    return _merge("membership", [check_membership(cs, k, _scope(cs, cs.N - k - 1, p.depth),
                                                  only=laws)
                                 for k in range(min(p.n, cs.N - 1) + 1)])


@check("lemma-2016.11.18.l1", ["sec1"], ["csystem"], n=(1, 3), n_default=2)
def _membership_obt(m, p):
    cs = m.csystem(p.truncation)
    laws = {"o in Obt_n(T) => o in Obt_{n+1}(G)",
            "ft^n(d o) in Ob_1(G) and o in Obt_n(ft^n(d o))"}
    return _merge("membership", [check_membership(cs, k, _scope(cs, cs.N - k - 1, p.depth),
                                                  only=laws)
                                 for k in range(1, min(p.n, cs.N - 1) + 1)])


@check("constr-2016.08.30.constr1", ["sec1"], ["csystem"], n=(0, 3), n_default=2)
def _sob(m, p):
    """SOb_k : Sig(Ob_k) -> Ob_{k+1} is a natural bijection."""
    cs = m.csystem(p.truncation)
    return _merge("SOb", [check_sob(cs, k, _scope(cs, cs.N - k - 1, p.depth))
                          for k in range(min(p.n, cs.N - 1) + 1)])


@check("constr-2016.09.01.constr2", ["sec1"], ["csystem"], n=(1, 3), n_default=2)
def _sobt(m, p):
    """SObt_k : Sig(Obt_k) -> Obt_{k+1} is a natural bijection."""
    cs = m.csystem(p.truncation)
    return _merge("SObt", [check_sobt(cs, k, _scope(cs, cs.N - k - 1, p.depth))
                           for k in range(1, min(p.n, cs.N - 1) + 1)])


@check("rem-2016.11.18.rem1", ["sec1"], ["csystem"], n=(0, 3), n_default=2)
def _sob_iter(m, p):
    """SOb^a_b : Sig^a(Ob_b) -> Ob_{a+b} as a composite and unpacked, and its inverse."""
    cs = m.csystem(p.truncation)
    reps = []
    for a in range(1, p.n + 1):
        for b in range(0, p.n + 1):
            if a + b <= cs.N:
                reps.append(check_sob_iter(cs, a, b, _scope(cs, cs.N - a - b, p.depth)))
    return _merge("SOb-iter", reps)


@check("lemma-2016.12.04.l1", ["sec1"], ["csystem"], n=(1, 3), n_default=2)
def _boundary_square(m, p):
    """SObt_k ; d = Sig(d) ; SOb_k."""
    cs = m.csystem(p.truncation)
    return _merge("boundary", [check_boundary_square(cs, k, _scope(cs, cs.N - k - 1, p.depth))
                               for k in range(1, min(p.n, cs.N - 1) + 1)])


# ---------------------------------------------------------------- group sec2

def _dys(m):
    u = m.u
    return _objs(m) + [u.U, u.Ut] if m.backend == "finset" else _objs(m)


@check("def-2009.11.1.def1", ["sec2"], ["universe"])
def _universe(m, p):
    """Chosen squares are pullbacks; the star and Q identities."""
    return check_universe(m.u, _objs(m))


@check("lemma-2016.09.07.l1", ["sec2"], ["universe"], n=(1, 3), n_default=2, depth=2)
def _d_presheaf(m, p):
    """D_p^k(Yo Y) is a presheaf for k <= n; for k >= 2 only Y with at most ``depth``
    elements."""
    reps = []
    for Y in _dys(m):
        for k in range(1, p.n + 1):
            if k >= 2 and m.backend == "finset" and p.depth is not None and len(Y) > p.depth:
                continue
            reps.append(check_presheaf(d_iter(m.u, k, yoneda(m.C, Y)), _objs(m)))
    return _merge("D-presheaf", reps)


CIRC5 = {"Id o d = d", "(f';f) o d = f' o (f o d)", "d o Id = d", "d o (g;g') = (d o g) o g'",
         "f o (d o g) = (f o d) o g"}


@check("lemma-2017.01.07.l1", ["sec2"], ["universe"], n=(0, 3), n_default=2)
def _circ(m, p):
    """The five circle laws on D_p^k(X,Y) for k <= n."""
    D = DCalculus(m.u)
    return _merge("circ", [check_circ_laws(D, k, _objs(m), only=CIRC5) for k in range(p.n + 1)])


@check("lemma-2016.12.24.l1", ["sec2"], ["universe"], n=(1, 3), n_default=2)
def _circ_explicit(m, p):
    """Nested-pair formulas for both circle actions agree with the presheaf route."""
    D = DCalculus(m.u)
    only = {"left-agrees-generic", "right-agrees-generic"}
    return _merge("circ-explicit", [check_circ_laws(D, k, _objs(m), only=only)
                                    for k in range(1, p.n + 1)])


# ---------------------------------------------------------------- group sec3-5

def _count_contexts(sizes, card, k):
    """Number of length-k towers over a context with ``card`` elements, by direct recursion."""
    if k == 0:
        return 1
    total = 0
    for codes in iproduct(range(len(sizes)), repeat=card):
        total += _count_contexts(sizes, sum(sizes[c] for c in codes), k - 1)
    return total


@check("cc-count", ["sec3-5"], ["cc", "coding"])
def _cc_count(m, p):
    """Objects of each length against an independent recursion on carrier sizes."""
    cc = m.cc(p.truncation)
    rep = LawReport("count")
    objs = cc.upto(cc.N)
    for k in range(cc.N + 1):
        got = sum(1 for X in objs if X.n == k)
        want = _count_contexts(m.u.sizes, 1, k)
        rep.check(got == want, "objects-of-length", length=k, got=got, expected=want)
    got = len(cc.ob_n(cc.pt, 1))
    want = m.C.hom_size(m.C.terminal, m.u.U)
    rep.check(got == want, "|Ob_1(pt)|=|hom(1,U)|", got=got, expected=want)
    return rep


@check("cc-int", ["sec3-5"], ["cc"], depth=4)
def _cc_int(m, p):
    """int is a fully faithful functor and commutes with the structure maps."""
    cc = m.cc(p.truncation)
    return check_int(cc, _scope(cc, cc.N - 1, p.depth))


@check("lemma-2016.08.22.l1", ["sec3-5"], ["cc"], depth=4)
def _ob1(m, p):
    cc = m.cc(p.truncation)
    objs = _scope(cc, cc.N - 1, p.depth)
    return check_ob1_criterion(cc, objs, _scope(cc, cc.N, p.depth))


@check("constr-2016.08.22.constr1", ["sec3-5"], ["cc"], depth=4)
def _u1(m, p):
    """u_1 : Ob_1 -> int°Yo(U) is a natural bijection."""
    cc = m.cc(p.truncation)
    objs = _scope(cc, cc.N - 1, p.depth)
    return check_u1(cc, objs, maps=m.u1_maps(cc, cc.upto(cc.N - 1)), parts=("u1",))


@check("constr-2016.08.22.constr2", ["sec3-5"], ["cc"], depth=4)
def _u1t(m, p):
    """ut_1 : Obt_1 -> int°Yo(Ut) is a natural bijection; section counts by formula."""
    cc = m.cc(p.truncation)
    return check_u1(cc, _scope(cc, cc.N - 1, p.depth), parts=("u1t",))


@check("lemma-2016.08.26.l1", ["sec3-5"], ["universe"])
def _sections(m, p):
    """Sections of p_F correspond to morphisms into Ut."""
    objs = _objs(m)
    if m.missing("cc") is None:
        cc = m.cc(p.truncation)
        objs = list(dict.fromkeys(objs + [G.int for G in _scope(cc, cc.N - 1, p.depth)]))
    return check_section_bijection(m.C, m.u, objs)


@check("lemma-2016.08.26.l4", ["sec3-5"], ["cc"], depth=4)
def _int_sections(m, p):
    cc = m.cc(p.truncation)
    return check_int_sections(cc, _scope(cc, cc.N - 1, p.depth))


@check("lemma-2016.12.02.l4", ["sec3-5"], ["cc"], depth=4)
def _l4(m, p):
    """ut_1 ; Yo(p) = d ; u_1."""
    cc = m.cc(p.truncation)
    return check_l4_square(cc, _scope(cc, cc.N - 1, p.depth))


@check("constr-2016.08.28.constr1", ["sec3-5"], ["cc"], n=(0, 2), n_default=1, depth=4)
def _sd_p(m, p):
    """SD_p is bijective and natural in both arguments."""
    cc, u, C = m.cc(p.truncation), m.u, m.C
    objs = _scope(cc, cc.N - 1 - p.n, p.depth)
    pres = [yoneda(C, Y) for Y in _dys(m)] + [d_iter(u, k, yoneda(C, u.U))
                                              for k in range(1, p.n + 1)]
    objsC = _objs(m)
    mors = [yoneda_on_morphism(C, g) for X in objsC for Y in objsC for g in C.hom(X, Y)]
    mors += [yoneda_on_morphism(C, u.p)]
    return check_sd_p(cc, pres, mors, objs)


def _un_check(only):
    def run(m, p):
        cc = m.cc(p.truncation)
        return _merge("u_n", [check_un(cc, k, _scope(cc, cc.N - k, p.depth), only=only)
                              for k in range(1, min(p.n, cc.N) + 1)])
    return run


U_LAWS = {"u-composite=formula", "u_n-typing", "u_n-left-inverse", "u_n-right-inverse",
          "u_n-natural"}
UT_LAWS = {"ut-composite=formula", "ut_n-typing", "ut_n-left-inverse", "ut_n-right-inverse",
           "ut_n-natural"}
check("constr-2016.11.22.constr1", ["sec3-5"], ["cc"], n=(1, 4), n_default=3, depth=4)(
    _un_check(U_LAWS))
check("constr-2016.11.22.constr2", ["sec3-5"], ["cc"], n=(1, 4), n_default=3, depth=4)(
    _un_check(UT_LAWS))
check("lemma-2016.12.02.l3", ["sec3-5"], ["cc"], n=(1, 4), n_default=3, depth=4)(
    _un_check({"ut;D(Yo p)=d;u", "D(Yo p)-generic"}))


# ---------------------------------------------------------------- group sec6

@check("eq-2016.12.02.eq2", ["sec6"], ["lcc", "universe"])
def _ip(m, p):
    """I_p is a functor over U, iota_F is invertible, and st_p by definition equals the
    element chase."""
    return check_ip(_rep(m), _dys(m))


@check("lemma-2015.04.14.l2a", ["sec6"], ["lcc", "universe"])
def _st(m, p):
    return check_st_square(_rep(m), _dys(m))


@check("constr-2015.03.29.constr1", ["sec6"], ["lcc", "universe"])
def _eta1(m, p):
    """eta_Y is a bijection D_p(X,Y) -> hom(X, I_p Y), natural in X and Y."""
    return check_eta(_rep(m), 1, _objs(m), Ys=_dys(m))


@check("constr-2016.12.02.constr1", ["sec6"], ["lcc", "universe"], n=(0, 3), n_default=2)
def _eta_n(m, p):
    R = _rep(m)
    return _merge("eta_n", [check_eta(R, k, _objs(m)) for k in range(p.n + 1)])


@check("lemma-2017.01.07.l2", ["sec6"], ["lcc", "universe"], n=(0, 3), n_default=2)
def _id_n(m, p):
    """m o Id^n = eta^!(m) and Id^n o g = eta^!(I^n g)."""
    R = _rep(m)
    only = {"Id^n typing", "m o Id^n = eta^!(m)", "Id^n o g = eta^!(I^n g)"}
    return _merge("Id^n", [check_id_n(R, k, _objs(m), only=only) for k in range(p.n + 1)])


@check("eq-2017.01.07.eq5", ["sec6"], ["lcc", "universe"], n=(0, 3), n_default=2)
def _id_n_eq5(m, p):
    """eta(d) o Id^n = d."""
    R = _rep(m)
    only = {"eta(d) o Id^n = d"}
    return _merge("Id^n", [check_id_n(R, k, _objs(m), only=only) for k in range(p.n + 1)])


def _mu_check(only):
    def run(m, p):
        R, cc = _rep(m), m.cc(p.truncation)
        return _merge("mu", [check_mu(R, cc, k, _scope(cc, cc.N - k, p.depth), only=only)
                             for k in range(1, min(p.n, cc.N) + 1)])
    return run


check("constr-2015.03.17.constr2", ["sec6"], ["lcc", "cc"], n=(1, 3), n_default=2, depth=4)(
    _mu_check({"mu-bijective", "mu~-bijective"}))
check("eq-2016.12.04.eq2", ["sec6"], ["lcc", "cc"], n=(1, 3), n_default=2, depth=4)(
    _mu_check({"mu(d o)=mu~(o);I^{n-1}(p)"}))


# ---------------------------------------------------------------- group sec7-10

def _fobjs(m):
    return list(m.ucf.C.objects())


@check("def-2016.12.09.def1", ["sec7-10"], ["ucf"])
def _ucf(m, p):
    """Phi keeps the final object and the canonical p-pullbacks; the phi square is a pullback."""
    return check_ucf(m.ucf, _fobjs(m))


def _phi_d_inputs(m):
    F = m.ucf
    C2 = F.C2
    pres = [yoneda(C2, Y) for Y in C2.objects()] + [yoneda(C2, F.u2.U), yoneda(C2, F.u2.Ut)]
    objs2 = list(C2.objects())
    pms = [yoneda_on_morphism(C2, g) for g in C2.hom(objs2[1], objs2[2])]
    return pres, pms


EQ7 = "Q(Phi a, Phi F;phi);iota=iota;Phi(Q(a,F))"


@check("constr-2016.12.14.constr1", ["sec7-10"], ["ucf"])
def _iota_phid(m, p):
    """iota is the unique invertible mediator; PhiD is natural in X and G' and fiberwise
    bijective."""
    F = m.ucf
    pres, pms = _phi_d_inputs(m)
    only = {"naturality-in-X", "typing", "injective", "fiber-count", "naturality-in-G'"}
    return _merge("PhiD", [check_iota(F, _fobjs(m)),
                           check_phi_d(F, pres, pms, _fobjs(m), only=only)])


@check("eq-2016.12.16.eq7", ["sec7-10"], ["ucf"])
def _eq7(m, p):
    return check_phi_d(m.ucf, [], [], _fobjs(m), only={EQ7})


@check("constr-2016.12.18.constr3", ["sec7-10"], ["ucf"])
def _yo_phi(m, p):
    return check_yo_phi(m.ucf, _fobjs(m))


@check("lemma-2016.12.22.l1", ["sec7-10"], ["ucf"], n=(0, 2))
def _d_phi_n(m, p):
    """D^k_Phi(m) as a recursive composite equals the unfolded formula."""
    F, objs = m.ucf, _fobjs(m)
    return _merge("DPhi", [check_d_phi_n(F, k, objs, objs) for k in range(p.n + 1)])


@check("lemma-2016.12.18.l1", ["sec7-10"], ["ucf"], n=(0, 2))
def _d_phi_square(m, p):
    F, objs = m.ucf, _fobjs(m)
    C = F.C
    gs = [g for X in objs for Y in objs for g in C.hom(X, Y) if len(X) and len(Y)]
    return _merge("DPhi-square", [check_d_phi_square(F, k, gs, objs) for k in range(p.n + 1)])


@check("lemma-2016.12.22.l2", ["sec7-10"], ["ucf"], n=(0, 2))
def _phi_n_generic(m, p):
    """Phi^k by the unfolded formula equals the composite of presheaf morphisms."""
    F, objs = m.ucf, _fobjs(m)
    return _merge("Phi^n", [check_phi_n(F, k, objs, only={"unfolded=generic", "typing"})
                            for k in range(p.n + 1)])


@check("lemma-2016.12.20.l1", ["sec7-10"], ["ucf"], n=(0, 2))
def _phi_n_nat(m, p):
    F, objs = m.ucf, _fobjs(m)
    only = {"Phi(f) o Phi^n(d) = Phi^n(f o d)", "Phi^n(d) o Phi(g) = Phi^n(d o g)"}
    return _merge("Phi^n", [check_phi_n(F, k, objs, only=only) for k in range(p.n + 1)])


@check("eq-2016.12.10.eq4", ["sec7-10"], ["ucf"], truncation=(1, 2), depth=3)
def _h(m, p):
    """H is a C-system homomorphism with invertible psi; H(f) is the unique solution."""
    hh = _hh(m, p.truncation)
    return check_h(hh, _scope(hh.cc, hh.cc.N, p.depth))


@check("lemma-2016.12.20.l2", ["sec7-10"], ["ucf"], truncation=(1, 2), depth=4)
def _psi_nat(m, p):
    hh = _hh(m, p.truncation)
    return check_psi_naturality(hh, _scope(hh.cc, hh.cc.N, p.depth))


@check("lemma-2015.03.21.l4", ["sec7-10"], ["ucf"], truncation=(1, 2), depth=4)
def _u1_transport(m, p):
    hh = _hh(m, p.truncation)
    return check_u_transport(hh, 1, _scope(hh.cc, hh.cc.N - 1, p.depth))


@check("lemma-2016.12.20.l3", ["sec7-10"], ["ucf"], truncation=(1, 2), depth=4)
def _u1_diagrams(m, p):
    hh = _hh(m, p.truncation)
    return check_u1_diagrams(hh, _scope(hh.cc, hh.cc.N - 1, p.depth))


@check("lemma-2016.12.20.l4", ["sec7-10"], ["ucf"], n=(1, 2), truncation=(1, 2), depth=4)
def _un_transport(m, p):
    """u_k and ut_k transported along H, with inverse forms, for k <= n."""
    hh = _hh(m, p.truncation)
    return _merge("u-transport", [check_u_transport(hh, k, _scope(hh.cc, hh.cc.N - k, p.depth))
                                  for k in range(1, min(p.n, hh.cc.N) + 1)])


def _chi_inputs(m):
    F = m.ucf
    objs = _fobjs(m)
    C = F.C
    gs = [F.u.p] + [g for X in objs for Y in objs for g in C.hom(X, Y)]
    return objs, objs + [F.u.U, F.u.Ut], gs


@check("constr-2015.03.21.constr1", ["sec7-10"], ["ucf"], n=(0, 2))
def _chi_square(m, p):
    """chi_k is natural in Y."""
    cx, (objs, Ys, gs) = _chixi(m), _chi_inputs(m)
    reps = []
    for k in range(p.n + 1):
        small = k >= 2
        reps.append(check_chi(cx, k, objs[:2] if small else objs, Ys[:2] if small else Ys,
                              gs=[g for g in gs if not small or m.ucf.C.cod(g) in objs[:2]
                                  and m.ucf.C.dom(g) in objs[:2]],
                              only={"chi-square"}))
    return _merge("chi", reps)


@check("lemma-2017.01.07.l3", ["sec7-10"], ["ucf"], n=(0, 2))
def _chi_eta(m, p):
    """eta'(Phi^k d) = Phi(eta d) ; chi_k(Y)."""
    cx, (objs, Ys, gs) = _chixi(m), _chi_inputs(m)
    only = {"eta(Phi^n d)=Phi(eta d);chi"}
    return _merge("chi", [check_chi(cx, k, objs[:2] if k >= 2 else objs,
                                    Ys[:2] if k >= 2 else Ys, only=only)
                          for k in range(p.n + 1)])


@check("eq-2017.01.13.eq3", ["sec7-10"], ["ucf"])
def _chi0(m, p):
    """chi_0(Y) = Id exactly."""
    cx, (objs, Ys, gs) = _chixi(m), _chi_inputs(m)
    return check_chi(cx, 0, objs, Ys, only={"chi_0=Id"})


@check("eq-2017.01.13.eq5", ["sec7-10"], ["ucf"])
def _xi0(m, p):
    """xi_0 = phi and xit_0 = phit exactly."""
    cx = _chixi(m)
    return check_chi(cx, 0, [], [], only={"xi_0=phi", "xit_0=phit"})


@check("eq-2017.01.01.eq6", ["sec7-10"], ["ucf"], n=(0, 1))
def _xi_square(m, p):
    cx = _chixi(m)
    return _merge("xi", [check_xi_square(cx, k) for k in range(p.n + 1)])


@check("lemma-2015.05.06.l2", ["sec7-10"], ["ucf"], n=(1, 2), truncation=(1, 2), depth=4)
def _mu_transport(m, p):
    """mu_k and mu~_k transported along H, with inverse forms."""
    hh, cx = _hh(m, p.truncation), _chixi(m)
    return _merge("mu-transport", [check_mu_transport(hh, cx, k,
                                                      _scope(hh.cc, hh.cc.N - k, p.depth))
                                   for k in range(1, min(p.n, hh.cc.N) + 1)])


# ---------------------------------------------------------------- selection and running

def names():
    return sorted(REGISTRY)


def resolve(token):
    """Check names for a group, an exact name, or a unique name prefix."""
    if token in ALIASES:
        return sorted({c for g in ALIASES[token] for c in resolve(g)})
    if token in GROUPS:
        return sorted(c.name for c in REGISTRY.values() if token in c.groups)
    if token in REGISTRY:
        return [token]
    hits = [n for n in REGISTRY if n.startswith(token)]
    if len(hits) == 1:
        return hits
    if hits:
        raise SelectionError(f"ambiguous check name {token!r}: {', '.join(sorted(hits))}")
    raise SelectionError(f"unknown check or suite {token!r}")


def parse_selection(items):
    """[(name, Params)] from strings like ``appendixA`` or ``lemma-2016.12.20.l4 n=2``."""
    out = {}
    for item in items:
        words = item.split()
        if not words:
            continue
        kw = {}
        for w in words[1:]:
            k, eq, v = w.partition("=")
            if not eq or k not in ("n", "truncation", "depth"):
                raise SelectionError(f"bad parameter {w!r}")
            try:
                kw[k] = int(v)
            except ValueError:
                raise SelectionError(f"bad parameter {w!r}") from None
        for name in resolve(words[0]):
            out[name] = Params(**kw)
    return out


def document_selection(doc):
    b = doc.block("suite")
    if b is None or not b.rows("check"):
        return None
    return [" ".join(e.values) for e in b.rows("check")]


def document_params(doc):
    b = doc.block("suite")
    if b is None:
        return Params()
    return Params(b.get_int("n"), b.get_int("truncation"), b.get_int("depth"))


def _bounds_problem(c: Check, p: Params):
    if c.n_range is not None and p.n is not None:
        lo, hi = c.n_range
        if not lo <= p.n <= hi:
            return f"n={p.n} outside supported range {lo}..{hi}"
    lo, hi = c.truncation_range
    if p.truncation is not None and not lo <= p.truncation <= hi:
        return f"truncation={p.truncation} outside supported range {lo}..{hi}"
    if p.depth is not None and p.depth < 0:
        return f"depth={p.depth} must be non-negative"
    return None


def run_check(model: Model, name, p: Params = Params()) -> Record:
    c = REGISTRY[name]
    for need in c.needs:
        why = model.missing(need)
        if why:
            return Record(name, "skipped", reason=why)
    staged = bool(set(c.needs) & {"csystem", "cc", "ucf"})
    # the document's truncation is a default; clamp it into the check's range
    N = min(model.truncation(None), c.truncation_range[1]) if staged else None
    depth = (model.default_depth() or c.depth_default) if staged or c.depth_default else None
    p = p.over(Params(c.n_default, N, depth))
    p = Params(p.n if c.n_range else None, p.truncation if staged else None, p.depth)
    params = {k: v for k, v in (("n", p.n), ("truncation", p.truncation), ("depth", p.depth))
              if v is not None}
    why = _bounds_problem(c, p)
    if why:
        return Record(name, "skipped", reason=why, params=params, fault=None)
    t0 = time.perf_counter()
    try:
        rep = c.run(model, p)
    except Skip as e:
        return Record(name, "skipped", reason=str(e), params=params)
    except CategoryError as e:
        # the structure itself is broken badly enough that an operation is undefined
        rep = LawReport(name)
        rep.fail("structure-error", error=str(e))
    dt = time.perf_counter() - t0
    first = rep.first()
    return Record(name, "pass" if rep.ok else "fail", rep.instances, rep.failures,
                  first.as_dict() if first else None, None, params,
                  model.fault_site if model.fault else None, dt)


def run_suite(doc, selection=None, overrides: Params = Params()):
    """Run the selected checks; returns records sorted by check name."""
    model = Model(doc)
    sel = parse_selection(selection or document_selection(doc) or ["all"])
    base = document_params(doc)
    rows = parse_selection(document_selection(doc) or [])
    records = []
    for name in sorted(sel):
        p = overrides.over(sel[name]).over(rows.get(name, Params())).over(base)
        records.append(run_check(model, name, p))
    return records


def to_jsonl(records, timing=True):
    return "".join(json.dumps(r.as_dict(timing), sort_keys=True) + "\n" for r in records)


def to_text(records):
    lines = []
    for r in records:
        if r.status == "pass":
            lines.append(f"PASS  {r.check}  ({r.instances} instances, {r.time:.2f}s)")
        elif r.status == "skipped":
            lines.append(f"SKIP  {r.check}  {r.reason}")
        else:
            lines.append(f"FAIL  {r.check}  ({r.failures}/{r.instances} failed)")
            lines.append(f"      witness: {json.dumps(r.witness, sort_keys=True)}")
            if r.fault:
                lines.append(f"      injected: {json.dumps(r.fault, sort_keys=True)}")
    npass = sum(r.status == "pass" for r in records)
    nfail = sum(r.status == "fail" for r in records)
    nskip = sum(r.status == "skipped" for r in records)
    lines.append(f"{npass} passed, {nfail} failed, {nskip} skipped")
    return "\n".join(lines) + "\n"


def exit_status(records, strict=False):
    if any(r.status == "fail" for r in records):
        return 1
    if strict and any(r.status == "skipped" for r in records):
        return 1
    return 0
