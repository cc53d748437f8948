"""Universe category functors (Phi, phi, phit) and what they transport.

Covers the comparison isomorphisms iota, the presheaf morphisms PhiD and
D^n_Phi(m), the maps Phi^n on D-sets, the induced C-system homomorphism
H with its comparison isomorphisms psi, and the morphisms chi_n / xi_n
between iterated I_p objects. Most constructions come in two versions
(a composite of presheaf morphisms and an unfolded formula) and the
checks compare them.
"""
from __future__ import annotations

from .category import (CategoryError, Functor, LawReport, NotInvertible, PresheafMorphism,
                       SelectiveReport,
                       check_functor, check_presheaf_morphism, pm_compose, pm_equal, precompose,
                       precompose_morphism, yoneda, yoneda_on_morphism)
from .cc import CC, build_cc, cc_maps, u1, u1t
from .csystem import _morphisms_between, ob_presheaf, obt_presheaf
from .limits import PullbackSquare, pullback_universal
from .universe import DCalculus, Universe, d_iter, d_iter_morphism, d_on_morphism, d_on_presheaf


class UnivCatFunctor:
    """Phi : C -> C' with phi : Phi(U) -> U' and phit : Phi(Ut) -> Ut'."""

    def __init__(self, Phi: Functor, phi, phit, u: Universe, u2: Universe, pt=None, pt2=None,
                 name="Phi"):
        self.Phi, self.phi, self.phit = Phi, phi, phit
        self.u, self.u2 = u, u2
        self.C, self.C2 = Phi.source, Phi.target
        self.pt = pt if pt is not None else getattr(self.C, "terminal", None)
        self.pt2 = pt2 if pt2 is not None else getattr(self.C2, "terminal", None)
        self.name = name
        self.D = DCalculus(u)
        self.D2 = DCalculus(u2)
        self._iota = {}
        self._dpn = {}
        self._gen = {}

    def ob(self, X):
        return self.Phi.ob(X)

    def mor(self, f):
        return self.Phi.mor(f)

    def code(self, F):
        """Phi(F) ; phi."""
        return self.C2.compose(self.mor(F), self.phi)

    def iota_square(self, F):
        """Phi applied to the chosen square of F, glued to the phi square."""
        C2, c = self.C2, self.u.comprehension(F)
        return PullbackSquare(self.ob(c.obj), self.mor(c.p), C2.compose(self.mor(c.Q), self.phit),
                              self.code(F), self.u2.p)

    def iota_candidates(self, F, limit=2):
        sq = self.iota_square(F)
        G = self.code(F)
        return self.C2.find_mediators(sq.pr1, sq.pr2, self.u2.p_of(G), self.u2.Q_of(G), limit=limit)

    def iota(self, F):
        """iota^{X,F} : (Phi X; Phi(F);phi) -> Phi((X;F))."""
        m = self._iota.get(F)
        if m is None:
            ms = self.iota_candidates(F)
            if len(ms) != 1:
                raise CategoryError(f"iota for {F!r}: expected a unique mediator, found {len(ms)}")
            m = self._iota[F] = ms[0]
        return m

    # ---------------------------------------------------------- presheaf level
    def pre(self, G2):
        """Phi° G' as a presheaf on C."""
        return precompose(self.Phi, G2)

    def d2_iter(self, n, G2):
        key = (n, id(G2))
        hit = self._dpn.get(key)
        if hit is None:
            hit = self._dpn[key] = (G2, d_iter(self.u2, n, G2))
        return hit[1]

    def phi_d(self, G2, source=None, target=None) -> PresheafMorphism:
        """PhiD_{G'} : D_p(Phi° G') -> Phi°(D_p' G'), (F, g) |-> (Phi(F);phi, G'(iota)(g))."""
        src = source or d_on_presheaf(self.u, self.pre(G2))
        tgt = target or self.pre(d_on_presheaf(self.u2, G2))

        def component(X, x):
            F, g = x
            return (self.code(F), G2.restrict(self.iota(F), g))

        return PresheafMorphism(src, tgt, component, name=f"PhiD({G2.name})")

    def d_phi_n(self, m: PresheafMorphism, n, F2) -> PresheafMorphism:
        """D^n_Phi(m) for m : F -> Phi° F', as the recursive composite."""
        if n == 0:
            return m
        prev = self.d_phi_n(m, n - 1, F2)
        return pm_compose(d_on_morphism(self.u, prev), self.phi_d(self.d2_iter(n - 1, F2)))

    def d_phi_n_unfolded(self, m: PresheafMorphism, n, F2) -> PresheafMorphism:
        """(F, a) |-> (Phi(F);phi, D^{n-1}_p'(F')(iota)(D^{n-1}_Phi(m)(a)))."""
        Dm = self.d2_iter(n - 1, F2) if n else None

        def component(X, x):
            if n == 0:
                return m(X, x)
            F, a = x
            inner = self.d_phi_n_unfolded(m, n - 1, F2)(self.u.ext(F), a)
            return (self.code(F), Dm.restrict(self.iota(F), inner))

        src = d_iter(self.u, n, m.source)
        return PresheafMorphism(src, self.pre(self.d2_iter(n, F2)), component,
                                name=f"D{n}_Phi({m.name})*")

    def yo_phi(self, Y) -> PresheafMorphism:
        """yo^{Phi,Y} : Yo(Y) -> Phi°(Yo(Phi Y)), f |-> Phi(f)."""
        return PresheafMorphism(yoneda(self.C, Y), self.pre(yoneda(self.C2, self.ob(Y))),
                                lambda X, f: self.mor(f), name=f"yo^Phi({Y!r})")

    # ---------------------------------------------------------- Phi^n on D-sets
    def phi_n_generic(self, n, X, Y, d):
        key = (n, Y)
        r = self._gen.get(key)
        if r is None:
            r = self._gen[key] = self.d_phi_n(self.yo_phi(Y), n, yoneda(self.C2, self.ob(Y)))
        return r(X, d)

    def phi_n(self, n, d):
        """Phi^n((F, a)) = (Phi(F);phi, iota o Phi^{n-1}(a)); Phi^0 = Phi on morphisms."""
        if n == 0:
            return self.mor(d)
        F, a = d
        return (self.code(F), self.D2.left(self.iota(F), n - 1, self.phi_n(n - 1, a)))

    def __repr__(self):
        return f"UnivCatFunctor({self.name})"


def identity_ucf(C, u: Universe, name="Id") -> UnivCatFunctor:
    Phi = Functor(C, C, lambda X: X, lambda f: f, name=name)
    return UnivCatFunctor(Phi, C.identity(u.U), C.identity(u.Ut), u, u, name=name)


def check_ucf(F: UnivCatFunctor, objects, probes=None, name="ucf") -> LawReport:
    """Final object, canonical p-pullbacks and the phi square, by universal property search."""
    rep = LawReport(name)
    C, C2, u, u2 = F.C, F.C2, F.u, F.u2
    probes = list(C2.objects() if probes is None else probes)
    Ppt = F.ob(F.pt)
    for W in probes:
        rep.check(C2.hom_size(W, Ppt) == 1, "Phi(pt)-final", probe=W, maps=C2.hom_size(W, Ppt))
    for X in objects:
        for Fc in u.codes(X):
            c = u.comprehension(Fc)
            sq = PullbackSquare(F.ob(c.obj), F.mor(c.p), F.mor(c.Q), F.mor(Fc), F.mor(u.p))
            if rep.check(C2.compose(sq.pr1, sq.f) == C2.compose(sq.pr2, sq.g),
                         "Phi-square-commutes", F=Fc):
                pullback_universal(C2, sq, probes, rep, clause="Phi-preserves-p-pullbacks", F=Fc)
    sq = PullbackSquare(F.ob(u.Ut), F.mor(u.p), F.phit, F.phi, u2.p)
    if rep.check(C2.compose(sq.pr1, sq.f) == C2.compose(sq.pr2, sq.g), "phi-square-commutes",
                 phi=F.phi, phit=F.phit):
        pullback_universal(C2, sq, probes, rep, clause="phi-square-pullback", phi=F.phi, phit=F.phit)
    return rep


def check_iota(F: UnivCatFunctor, objects, name="iota") -> LawReport:
    """iota is the unique mediator, satisfies its two equations and is invertible."""
    rep = LawReport(name)
    C2, u2 = F.C2, F.u2
    for X in objects:
        for Fc in F.u.codes(X):
            ms = F.iota_candidates(Fc)
            if not rep.check(len(ms) == 1, "iota-unique", F=Fc, mediators=len(ms)):
                continue
            i = ms[0]
            G = F.code(Fc)
            c = F.u.comprehension(Fc)
            rep.check(C2.compose(i, F.mor(c.p)) == u2.p_of(G), "iota;Phi(p_F)=p", F=Fc)
            rep.check(C2.compose(i, F.mor(c.Q), F.phit) == u2.Q_of(G), "iota;Phi(Q F);phit=Q", F=Fc)
            rep.check(C2.inverse(i) is not None, "iota-invertible", F=Fc)
    return rep


def check_phi_d(F: UnivCatFunctor, presheaves, pmorphisms, objects, name="PhiD",
                only=None) -> LawReport:
    """Naturality in X and in G', the key identity for iota, and fiberwise bijectivity."""
    rep = SelectiveReport(name, only)
    C, C2, u, u2 = F.C, F.C2, F.u, F.u2
    for G2 in presheaves:
        r = F.phi_d(G2)
        if only is None or "naturality-in-X" in only:
            rep.merge(check_presheaf_morphism(r, objects, name="naturality-in-X"))
        for X in objects:
            seen = {}
            for x in r.source.at(X):
                y = r(X, x)
                rep.check(r.target.contains(X, y), "typing", X=X, element=x)
                rep.check(y not in seen, "injective", X=X, element=x)
                seen[y] = x
            # counting oracle: each code F contributes a bijection onto G'((Phi X; Phi(F);phi))
            for Fc in u.codes(X):
                want = len(G2.at(u2.ext(F.code(Fc))))
                got = sum(1 for y in seen if y[0] == F.code(Fc))
                rep.check(got == want, "fiber-count", X=X, F=Fc, got=got, want=want)
    for f2 in pmorphisms:
        G1, G2 = f2.source, f2.target
        r1, r2 = F.phi_d(G1), F.phi_d(G2)
        Df = d_on_morphism(u2, f2)
        for X in objects:
            for x in d_on_presheaf(u, F.pre(G1)).at(X):
                Fc, b = x
                left = Df(F.ob(X), r1(X, x))
                right = r2(X, (Fc, f2(F.ob(u.ext(Fc)), b)))
                rep.check(left == right, "naturality-in-G'", X=X, element=x, morphism=f2.name)
    for A, B, a in _morphisms_between(C, objects):
        for Fc in u.codes(B):
            left = C2.compose(u2.Q(F.mor(a), F.code(Fc)), F.iota(Fc))
            right = C2.compose(F.iota(C.compose(a, Fc)), F.mor(u.Q(a, Fc)))
            rep.check(left == right, "Q(Phi a, Phi F;phi);iota=iota;Phi(Q(a,F))", a=a, F=Fc)
    return rep


def check_d_phi_n(F: UnivCatFunctor, n, Ys, objects, name=None) -> LawReport:
    """Recursive composite against the unfolded formula, on m = yo^{Phi,Y}."""
    rep = LawReport(name or f"D{n}_Phi")
    for Y in Ys:
        F2 = yoneda(F.C2, F.ob(Y))
        m = F.yo_phi(Y)
        pm_equal(F.d_phi_n(m, n, F2), F.d_phi_n_unfolded(m, n, F2), objects, rep,
                 law="composite=unfolded")
    return rep


def check_d_phi_square(F: UnivCatFunctor, n, gs, objects, name=None) -> LawReport:
    """D^n_Phi preserves the square yo^{Phi,Y} ; Phi°Yo(Phi g) = Yo(g) ; yo^{Phi,Y'}."""
    rep = LawReport(name or f"D{n}_Phi-square")
    C, C2 = F.C, F.C2
    for g in gs:
        Y, Y2 = C.dom(g), C.cod(g)
        m1, m2 = F.yo_phi(Y), F.yo_phi(Y2)
        v, v2 = yoneda_on_morphism(C, g), yoneda_on_morphism(C2, F.mor(g))
        P1, P2 = yoneda(C2, F.ob(Y)), yoneda(C2, F.ob(Y2))
        top, bottom = F.d_phi_n(m1, n, P1), F.d_phi_n(m2, n, P2)
        Dv, Dv2 = d_iter_morphism(F.u, n, v), d_iter_morphism(F.u2, n, v2)
        for X in objects:
            for x in top.source.at(X):
                left = Dv2(F.ob(X), top(X, x))
                right = bottom(X, Dv(X, x))
                rep.check(left == right, "square", g=g, X=X, element=x)
    return rep


def check_yo_phi(F: UnivCatFunctor, objects, name="yo^Phi") -> LawReport:
    rep = LawReport(name)
    C, C2 = F.C, F.C2
    for Y in objects:
        r = F.yo_phi(Y)
        rep.merge(check_presheaf_morphism(r, objects, name="presheaf-morphism"))
        rep.check(r(Y, C.identity(Y)) == C2.identity(F.ob(Y)), "Id|->Id", Y=Y)
    for Y, Y2, g in _morphisms_between(C, objects):
        r1, r2 = F.yo_phi(Y), F.yo_phi(Y2)
        left = pm_compose(r1, precompose_morphism(F.Phi, yoneda_on_morphism(C2, F.mor(g))))
        right = pm_compose(yoneda_on_morphism(C, g), r2)
        pm_equal(left, right, objects, rep, law="naturality-square")
    return rep


def check_phi_n(F: UnivCatFunctor, n, objects, Ys=None, name=None, only=None) -> LawReport:
    """Unfolded Phi^n against the generic route, and its two circle naturalities."""
    rep = SelectiveReport(name or f"Phi^{n}", only)
    C, C2, D, D2 = F.C, F.C2, F.D, F.D2
    Ys = list(objects if Ys is None else Ys)
    for X in objects:
        for Y in Ys:
            for d in D.elements(n, X, Y):
                e = F.phi_n(n, d)
                rep.check(e == F.phi_n_generic(n, X, Y, d), "unfolded=generic", X=X, Y=Y, d=d)
                rep.check(D2.contains(n, F.ob(X), F.ob(Y), e), "typing", d=d)
                for X1 in objects:
                    for f in C.hom(X1, X):
                        rep.check(D2.left(F.mor(f), n, e) == F.phi_n(n, D.left(f, n, d)),
                                  "Phi(f) o Phi^n(d) = Phi^n(f o d)", f=f, d=d)
                for Y1 in Ys:
                    for g in C.hom(Y, Y1):
                        rep.check(D2.right(n, e, F.mor(g)) == F.phi_n(n, D.right(n, d, g)),
                                  "Phi^n(d) o Phi(g) = Phi^n(d o g)", g=g, d=d)
    return rep


# ---------------------------------------------------------------- H and psi

class HHom:
    """The homomorphism H : CC(C,p) -> CC(C',p') and psi(G) : int H(G) -> Phi(int G)."""

    def __init__(self, F: UnivCatFunctor, cc: CC, cc2: CC):
        self.F, self.cc, self.cc2 = F, cc, cc2
        self.C, self.C2 = F.C, F.C2
        self._ob, self._psi, self._psi_inv = {}, {}, {}
        self.functor = Functor(cc.category, cc2.category, self.ob, self.mor, name="H")

    def psi0(self):
        ms = list(self.C2.hom(self.cc2.pt.int, self.F.ob(self.cc.pt.int)))
        if len(ms) != 1:
            raise CategoryError(f"psi_0: expected a unique morphism, found {len(ms)}")
        return ms[0]

    def ob(self, G):
        H = self._ob.get(G)
        if H is None:
            if G.parent is None:
                H = self.cc2.pt
            else:
                A = G.parent
                code = self.C2.compose(self.psi(A), self.F.code(G.F))
                H = self.cc2._kid(self.ob(A), code)
            self._ob[G] = H
        return H

    def psi_candidates(self, G, limit=2):
        """Mediators for psi(A,F): the Phi-image of the square of F over psi(A)."""
        F, C2, u2 = self.F, self.C2, self.F.u2
        A = G.parent
        c = F.u.comprehension(G.F)
        code = C2.compose(self.psi(A), F.code(G.F))
        return C2.find_mediators(F.mor(c.p), C2.compose(F.mor(c.Q), F.phit),
                                 C2.compose(u2.p_of(code), self.psi(A)), u2.Q_of(code), limit=limit)

    def psi(self, G):
        m = self._psi.get(G)
        if m is None:
            if G.parent is None:
                m = self.psi0()
            else:
                ms = self.psi_candidates(G)
                if len(ms) != 1:
                    raise CategoryError(f"psi{G!r}: expected a unique mediator, found {len(ms)}")
                m = ms[0]
            self._psi[G] = m
        return m

    def psi_via_iota(self, G):
        """psi(A,F) = Q(psi(A), Phi(F);phi) ; iota^{int A, F}."""
        if G.parent is None:
            return self.psi0()
        F = self.F
        return self.C2.compose(F.u2.Q(self.psi(G.parent), F.code(G.F)), F.iota(G.F))

    def psi_inv(self, G):
        m = self._psi_inv.get(G)
        if m is None:
            m = self.C2.inverse(self.psi(G))
            if m is None:
                raise NotInvertible(G, "psi is not invertible")
            self._psi_inv[G] = m
        return m

    def mor(self, f):
        """int H(f) = psi(G') ; Phi(int f) ; psi(G)^-1."""
        from .cc import CCMor
        a = self.C2.compose(self.psi(f.src), self.F.mor(f.a), self.psi_inv(f.tgt))
        return CCMor(self.ob(f.src), self.ob(f.tgt), a)

    # presheaf-level pieces
    def h_ob(self, n) -> PresheafMorphism:
        """H Ob_n : Ob_n -> H°(Ob_n')."""
        return PresheafMorphism(ob_presheaf(self.cc, n),
                                precompose(self.functor, ob_presheaf(self.cc2, n)),
                                lambda G, T: self.ob(T), name=f"HOb{n}")

    def h_obt(self, n) -> PresheafMorphism:
        return PresheafMorphism(obt_presheaf(self.cc, n),
                                precompose(self.functor, obt_presheaf(self.cc2, n)),
                                lambda G, o: self.mor(o), name=f"HObt{n}")

    def psi_pre(self, G2) -> PresheafMorphism:
        """psi°_{G'} : int°(Phi°(G')) -> H°(int'°(G')), x |-> G'(psi(G))(x)."""
        src = precompose(self.cc.int, self.F.pre(G2))
        tgt = precompose(self.functor, precompose(self.cc2.int, G2))
        return PresheafMorphism(src, tgt, lambda G, x: G2.restrict(self.psi(G), x),
                                name=f"psi°({G2.name})")


def build_h(F: UnivCatFunctor, N, cc=None, cc2=None) -> HHom:
    cc = cc or build_cc(F.C, F.u, N, F.pt)
    cc2 = cc2 or build_cc(F.C2, F.u2, N, F.pt2)
    return HHom(F, cc, cc2)


def check_h(hh: HHom, objects, name="H") -> LawReport:
    """H is a C-system homomorphism; psi is a natural isomorphism; H(f) found by search."""
    rep = LawReport(name)
    cc, cc2, C2, F = hh.cc, hh.cc2, hh.C2, hh.F
    K, K2 = cc.category, cc2.category
    objects = list(objects)
    rep.check(hh.ob(cc.pt) is cc2.pt, "H(pt)=pt'")
    rep.merge(check_functor(hh.functor, objects, name="functor"))
    images = {}
    for G in objects:
        HG = hh.ob(G)
        rep.check(cc2.length(HG) == cc.length(G), "l(H X)=l(X)", X=G)
        rep.check(hh.ob(cc.ft(G)) is cc2.ft(HG), "H(ft X)=ft(H X)", X=G)
        rep.check(hh.mor(cc.proj(G)) == cc2.proj(HG), "H(p_X)=p_HX", X=G)
        rep.check(HG not in images, "H-injective-on-objects", X=G, other=images.get(HG))
        images[HG] = G
        rep.check(C2.inverse(hh.psi(G)) is not None, "psi-invertible", X=G)
        if G.parent is not None:
            ms = hh.psi_candidates(G)
            rep.check(len(ms) == 1, "psi-unique-mediator", X=G, mediators=len(ms))
        rep.check(hh.psi(G) == hh.psi_via_iota(G), "psi=Q(psi,Phi F;phi);iota", X=G)
    for A, B, f in _morphisms_between(K, objects):
        Hf = hh.mor(f)
        # psi naturality, well-typed form: int(H f) ; psi(B) = psi(A) ; Phi(int f)
        rep.check(C2.compose(Hf.a, hh.psi(B)) == C2.compose(hh.psi(A), F.mor(f.a)),
                  "psi-natural", f=f)
        # H(f) as the unique morphism H(A) -> H(B) satisfying the defining equation
        want = C2.compose(hh.psi(A), F.mor(f.a))
        sols = [g for g in K2.hom(hh.ob(A), hh.ob(B)) if C2.compose(g.a, hh.psi(B)) == want]
        rep.check(len(sols) == 1 and sols[0] == Hf, "H(f)-by-search", f=f, solutions=len(sols))
        for T in objects:
            if T.parent is not B or cc.length(A) + 1 > cc.N:
                continue
            rep.check(hh.ob(cc.base_change(f, T)) is cc2.base_change(Hf, hh.ob(T)),
                      "H(f*T)=H(f)*H(T)", f=f, T=T)
            rep.check(hh.mor(cc.q(f, T)) == cc2.q(Hf, hh.ob(T)), "H(q(f,T))=q(Hf,HT)", f=f, T=T)
    return rep


def check_psi_naturality(hh: HHom, objects, name="psi-naturality") -> LawReport:
    rep = LawReport(name)
    K = hh.cc.category
    for A, B, f in _morphisms_between(K, objects):
        left = hh.C2.compose(hh.mor(f).a, hh.psi(B))
        right = hh.C2.compose(hh.psi(A), hh.F.mor(f.a))
        rep.check(left == right, "int(Hf);psi(G)=psi(G');Phi(int f)", f=f)
    return rep


# ---------------------------------------------------------------- transport of u_n

def _rhs_u(hh: HHom, n, G, d, target_phi):
    """psi(G) o (Phi^{n-1}(d) o phi)."""
    F = hh.F
    D2 = F.D2
    e = D2.right(n - 1, F.phi_n(n - 1, d), target_phi)
    return D2.left(hh.psi(G), n - 1, e)


def check_u_transport(hh: HHom, n, objects, name=None, only=None) -> LawReport:
    """u_{n,H(G)}(H(T)) = psi(G) o (Phi^{n-1}(u_{n,G}(T)) o phi) and the tilde and inverse forms."""
    rep = SelectiveReport(name or f"u{n}-transport", only)
    F, cc, cc2 = hh.F, hh.cc, hh.cc2
    M, M2 = cc_maps(cc), cc_maps(cc2)
    for G in objects:
        if G.n + n > cc.N:
            continue
        HG = hh.ob(G)
        X = G.int
        for T in cc.ob_n(G, n):
            lhs = M2.un(n, HG, hh.ob(T))
            rhs = _rhs_u(hh, n, G, M.un(n, G, T), F.phi)
            rep.check(lhs == rhs, "u_n(H T)=psi o (Phi^(n-1)(u_n T) o phi)", G=G, T=T)
        for o in cc.obt_n(G, n):
            lhs = M2.utn(n, HG, hh.mor(o))
            rhs = _rhs_u(hh, n, G, M.utn(n, G, o), F.phit)
            rep.check(lhs == rhs, "ut_n(H o)=psi o (Phi^(n-1)(ut_n o) o phit)", G=G, o=o)
        for d in F.D.elements(n - 1, X, F.u.U):
            lhs = hh.ob(M.u_inv(n, G, d))
            rhs = M2.u_inv(n, HG, _rhs_u(hh, n, G, d, F.phi))
            rep.check(lhs is rhs, "H(u_n^-1 d)=u_n^-1(psi o (Phi^(n-1) d o phi))", G=G, d=d)
        for d in F.D.elements(n - 1, X, F.u.Ut):
            lhs = hh.mor(M.ut_inv(n, G, d))
            rhs = M2.ut_inv(n, HG, _rhs_u(hh, n, G, d, F.phit))
            rep.check(lhs == rhs, "H(ut_n^-1 d)=ut_n^-1(psi o (Phi^(n-1) d o phit))", G=G, d=d)
    return rep


def check_u1_diagrams(hh: HHom, objects, name="u1-diagrams") -> LawReport:
    """The two u_1 transport statements as equalities of composite presheaf morphisms."""
    rep = LawReport(name)
    F, cc, cc2 = hh.F, hh.cc, hh.cc2
    C2 = F.C2
    for (U, U2, g, um, um2, hob) in ((F.u.U, F.u2.U, F.phi, u1(cc), u1(cc2), hh.h_ob(1)),
                                     (F.u.Ut, F.u2.Ut, F.phit, u1t(cc), u1t(cc2), hh.h_obt(1))):
        rep.merge(check_presheaf_morphism(hob, objects, name="H-on-presheaf"))
        left = pm_compose(um, precompose_morphism(cc.int, F.yo_phi(U)),
                          precompose_morphism(cc.int, precompose_morphism(
                              F.Phi, yoneda_on_morphism(C2, g))),
                          hh.psi_pre(yoneda(C2, U2)))
        right = pm_compose(hob, precompose_morphism(hh.functor, um2))
        pm_equal(left, right, objects, rep, law=f"{um.name}-diagram")
    return rep


# ---------------------------------------------------------------- chi, xi

class ChiXi:
    """chi_n(Y) = eta'_n(Phi^n(Id^n_Y)); xi_n = chi_n(U) ; I'^n(phi); xit_n likewise."""

    def __init__(self, F: UnivCatFunctor, rep, rep2):
        self.F, self.rep, self.rep2 = F, rep, rep2
        self._chi = {}

    def chi(self, n, Y):
        key = (n, Y)
        m = self._chi.get(key)
        if m is None:
            F = self.F
            d = F.phi_n(n, self.rep.id_n(n, Y))
            m = self._chi[key] = self.rep2.eta_n(n, F.ob(Y), d)
        return m

    def xi(self, n):
        return self.F.C2.compose(self.chi(n, self.F.u.U), self.rep2.I_n_mor(n, self.F.phi))

    def xi_t(self, n):
        return self.F.C2.compose(self.chi(n, self.F.u.Ut), self.rep2.I_n_mor(n, self.F.phit))


def check_chi(cx: ChiXi, n, objects, Ys, gs=(), name=None, only=None) -> LawReport:
    rep = SelectiveReport(name or f"chi{n}", only)
    F, R, R2 = cx.F, cx.rep, cx.rep2
    C, C2 = F.C, F.C2
    if n == 0:
        for Y in Ys:
            rep.check(cx.chi(0, Y) == C2.identity(F.ob(Y)), "chi_0=Id", Y=Y)
        rep.check(cx.xi(0) == F.phi, "xi_0=phi")
        rep.check(cx.xi_t(0) == F.phit, "xit_0=phit")
    for g in gs:
        Y, Y2 = C.dom(g), C.cod(g)
        left = C2.compose(F.mor(R.I_n_mor(n, g)), cx.chi(n, Y2))
        right = C2.compose(cx.chi(n, Y), R2.I_n_mor(n, F.mor(g)))
        rep.check(left == right, "chi-square", g=g)
    for Y in Ys:
        chi = cx.chi(n, Y)
        for X in objects:
            for d in F.D.elements(n, X, Y):
                left = R2.eta_n(n, F.ob(Y), F.phi_n(n, d))
                right = C2.compose(F.mor(R.eta_n(n, Y, d)), chi)
                rep.check(left == right, "eta(Phi^n d)=Phi(eta d);chi", X=X, Y=Y, d=d)
    return rep


def check_xi_square(cx: ChiXi, n, name=None) -> LawReport:
    rep = LawReport(name or f"xi{n}-square")
    F, R, R2 = cx.F, cx.rep, cx.rep2
    C2 = F.C2
    left = C2.compose(F.mor(R.I_n_mor(n, F.u.p)), cx.xi(n))
    right = C2.compose(cx.xi_t(n), R2.I_n_mor(n, F.u2.p))
    rep.check(left == right, "Phi(I^n d);xi = xit;I'^n(d)", n=n)
    return rep


def check_mu_transport(hh: HHom, cx: ChiXi, n, objects, name=None, only=None) -> LawReport:
    """mu_n(H T) = psi(G);Phi(mu_n T);xi_{n-1}, the tilde form and both inverse forms."""
    rep = SelectiveReport(name or f"mu{n}-transport", only)
    F, cc, cc2 = hh.F, hh.cc, hh.cc2
    R, R2 = cx.rep, cx.rep2
    C, C2 = F.C, F.C2
    M, M2 = cc_maps(cc), cc_maps(cc2)
    xi, xit = cx.xi(n - 1), cx.xi_t(n - 1)
    for G in objects:
        if G.n + n > cc.N:
            continue
        HG = hh.ob(G)
        for T in cc.ob_n(G, n):
            lhs = R2.mu(cc2, n, HG, hh.ob(T))
            rhs = C2.compose(hh.psi(G), F.mor(R.mu(cc, n, G, T)), xi)
            rep.check(lhs == rhs, "mu_n(H T)=psi;Phi(mu_n T);xi", G=G, T=T)
        for o in cc.obt_n(G, n):
            lhs = R2.mu_t(cc2, n, HG, hh.mor(o))
            rhs = C2.compose(hh.psi(G), F.mor(R.mu_t(cc, n, G, o)), xit)
            rep.check(lhs == rhs, "mut_n(H o)=psi;Phi(mut_n o);xit", G=G, o=o)
        for Y, tilde in ((F.u.U, False), (F.u.Ut, True)):
            for m in C.hom(G.int, R.I_n(n - 1, Y)):
                m2 = C2.compose(hh.psi(G), F.mor(m), xit if tilde else xi)
                if tilde:
                    lhs = hh.mor(M.ut_inv(n, G, R.eta_bang_n(n - 1, Y, m)))
                    rhs = M2.ut_inv(n, HG, R2.eta_bang_n(n - 1, F.u2.Ut, m2))
                    rep.check(lhs == rhs, "H(mut^-1 m)=mut^-1(psi;Phi m;xit)", G=G, m=m)
                else:
                    lhs = hh.ob(M.u_inv(n, G, R.eta_bang_n(n - 1, Y, m)))
                    rhs = M2.u_inv(n, HG, R2.eta_bang_n(n - 1, F.u2.U, m2))
                    rep.check(lhs is rhs, "H(mu^-1 m)=mu^-1(psi;Phi m;xi)", G=G, m=m)
    return rep


# ---------------------------------------------------------------- the inclusion fixture

def make_inc(twist=False, fault=None, sizes=(0, 1, 2), extra=(3,), K=2, K2=3, N=2):
    """Inclusion of FS(K) with U(sizes) into FS(K2) with U(sizes + extra).

    Phi is the identity on sets and functions and phi the code inclusion.
    ``twist`` composes phit with the swap of the two elements over the first
    code of size 2, which keeps the phi square a pullback but makes iota and
    psi nontrivial. ``fault="phit"`` collapses that fiber instead, breaking
    the pullback clause.
    """
    from .finset import make_finset, make_universe
    C = make_finset(K)
    u = make_universe(C, sizes)
    C2 = make_finset(K2)
    u2 = make_universe(C2, tuple(sizes) + tuple(extra))
    Phi = Functor(C, C2, lambda X: X, lambda f: f, name="inc")
    phi = C2.fn(u.U, u2.U, lambda c: c)
    c2 = next((c for c, s in enumerate(sizes) if s >= 2), None)

    def tw(ce):
        c, e = ce
        if c == c2 and e < 2:
            if fault == "phit":
                return (c, 0)
            if twist:
                return (c, 1 - e)
        return ce

    phit = C2.fn(u.Ut, u2.Ut, tw)
    name = "INC" + ("~" if twist else "") + (f"!{fault}" if fault else "")
    return UnivCatFunctor(Phi, phi, phit, u, u2, name=name)
