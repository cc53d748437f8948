"""Representing D_p(Yo(Y)) by Yo(I_p(Y)) when the base category is lcc.

I_p(Y) = Hom_U((Ut,p), (U x Y, pr1)). The universe comprehension (X;F) and
the lcc pullback (X,F) x_U (Ut,p) are distinct objects related by the
isomorphism iota_F, which is computed and checked rather than assumed.
"""
from __future__ import annotations

from .category import LawReport, PresheafMorphism, SelectiveReport, pm_compose, yoneda
from .limits import SliceMor, SliceObj
from .universe import DCalculus, Universe, d_on_morphism


class LccRep:
    def __init__(self, C, u: Universe, lcc=None, products=None):
        self.C, self.u = C, u
        self.lcc = lcc or C.lcc
        self.products = products or C.products
        self.ccc = self.lcc.slice_ccc(u.U)
        self.S = self.lcc.slice(u.U)
        self.A = SliceObj(u.Ut, u.p)
        self.D = DCalculus(u)
        self._I = {}
        self._st = {}
        self._iota = {}

    # ---------------------------------------------------------- I_p
    def UxY(self, Y) -> SliceObj:
        d = self.products.product(self.u.U, Y)
        return SliceObj(d.apex, d.pr1)

    def hom_over(self, Y) -> SliceObj:
        if Y not in self._I:
            self._I[Y] = self.ccc.hom_obj(self.A, self.UxY(Y))
        return self._I[Y]

    def I(self, Y):
        return self.hom_over(Y).X

    def prI(self, Y):
        return self.hom_over(Y).f

    def I_mor(self, f):
        C = self.C
        Y, Y2 = C.dom(f), C.cod(f)
        b = SliceMor(self.products.times(C.identity(self.u.U), f), self.UxY(Y), self.UxY(Y2))
        return self.ccc.hom_post(self.A, b).a

    def I_n(self, n, Y):
        for _ in range(n):
            Y = self.I(Y)
        return Y

    def I_n_mor(self, n, f):
        for _ in range(n):
            f = self.I_mor(f)
        return f

    # ---------------------------------------------------------- iota, st
    def iota(self, F):
        """iota_F : (X;F) -> (X,F) x_U (Ut,p)."""
        if F not in self._iota:
            c = self.u.comprehension(F)
            self._iota[F] = self.lcc.pullbacks.pair(F, self.u.p, c.p, c.Q)
        return self._iota[F]

    def iota_inv(self, F):
        sq = self.lcc.pullbacks.square(F, self.u.p)
        return self.u.star(sq.pr1, sq.pr2, F)

    def ev(self, Y):
        return self.ccc.ev(self.A, self.UxY(Y))

    def st(self, Y):
        """st_p(Y) = iota_{prI(Y)} ; evI_p(Y) ; pr2."""
        if Y not in self._st:
            C = self.C
            pr2 = self.products.product(self.u.U, Y).pr2
            self._st[Y] = C.compose(self.iota(self.prI(Y)), self.ev(Y).a, pr2)
        return self._st[Y]

    # ---------------------------------------------------------- eta
    def eta_bang(self, Y, g):
        """eta^!(g) = (g ; prI(Y), Q(g, prI(Y)) ; st(Y))."""
        C = self.C
        pr = self.prI(Y)
        return (C.compose(g, pr), C.compose(self.u.Q(g, pr), self.st(Y)))

    def eta(self, Y, d):
        """eta(F, a): the g : X -> I_p(Y) over U whose adjunct is <F.., iota^-1 ; a>."""
        C = self.C
        F, a = d
        X = C.dom(F)
        XF = SliceObj(X, F)
        P = self.ccc.products.product(XF, self.A).apex
        b = C.compose(self.iota_inv(F), a)
        h = SliceMor(self.products.pair(P.f, b), P, self.UxY(Y))
        return self.ccc.adj_inv(h, XF, self.A, self.UxY(Y)).a

    def eta_n(self, n, Y, d):
        if n == 0:
            return d
        F, a = d
        inner = self.eta_n(n - 1, Y, a)
        return self.eta(self.I_n(n - 1, Y), (F, inner))

    def eta_bang_n(self, n, Y, m):
        if n == 0:
            return m
        F, b = self.eta_bang(self.I_n(n - 1, Y), m)
        return (F, self.eta_bang_n(n - 1, Y, b))

    def id_n(self, n, Y):
        """Id^n_Y = eta_n^!(Id_{I^n Y}) in D^n(I^n Y, Y)."""
        return self.eta_bang_n(n, Y, self.C.identity(self.I_n(n, Y)))

    def eta_pm(self, n, Y) -> PresheafMorphism:
        """eta_{n,Y} as a composite of presheaf morphisms D(eta_{n-1}) ; eta_{1, I^{n-1} Y}."""
        C = self.C
        if n == 0:
            G = yoneda(C, Y)
            return PresheafMorphism(G, G, lambda X, x: x, name="eta0")
        prev = self.eta_pm(n - 1, Y)
        IY = self.I_n(n - 1, Y)
        one = PresheafMorphism(self.D.presheaf(1, IY), yoneda(C, self.I(IY)),
                               lambda X, d: self.eta(IY, d), name=f"eta1[{n}]")
        return pm_compose(d_on_morphism(self.u, prev, source=self.D.presheaf(n, Y)), one)

    # ---------------------------------------------------------- mu
    def mu(self, cc, n, G, T):
        from .cc import cc_maps
        return self.eta_n(n - 1, self.u.U, cc_maps(cc).un(n, G, T))

    def mu_t(self, cc, n, G, o):
        from .cc import cc_maps
        return self.eta_n(n - 1, self.u.Ut, cc_maps(cc).utn(n, G, o))


def st_direct(rep: LccRep, Y):
    """st by chasing elements of the finite-set model: ((u, phi), e) |-> y of phi at (u, e)."""
    C = rep.C
    c = rep.u.comprehension(rep.prI(Y))
    Ut = rep.u.Ut
    table = []
    for (i, e) in c.obj.elems:
        u_, phi = i
        fib = [t for t in Ut.elems if t[0] == u_]
        table.append(phi[fib.index((u_, e))][1])
    return C.fn(c.obj, Y, table)


# ---------------------------------------------------------------- checks

def check_ip(rep: LccRep, objects, name="I_p") -> LawReport:
    """Functor laws of I_p, the iota isomorphisms, cardinalities, and st two ways."""
    C, u = rep.C, rep.u
    out = LawReport(name)
    objects = list(objects)
    for Y in objects:
        IY = rep.I(Y)
        # independent count: one map El(c) -> Y per element over each code c
        want = sum(C.hom_size(u.ext(C.fn(C.terminal, u.U, [c])), Y) for c in u.U)
        out.check(len(IY) == want, "|I_p(Y)| = sum_u |hom(El u, Y)|", Y=Y, size=len(IY), expected=want)
        out.check(rep.I_mor(C.identity(Y)) == C.identity(IY), "I_p(Id)=Id", Y=Y)
        out.check(C.compose(rep.I_mor(C.identity(Y)), rep.prI(Y)) == rep.prI(Y), "I_p(f) over U", Y=Y)
        if hasattr(C, "make"):
            out.check(rep.st(Y) == st_direct(rep, Y), "st-definition=element-chase", Y=Y)
        for Y2 in objects:
            for f in C.hom(Y, Y2):
                If = rep.I_mor(f)
                out.check(C.compose(If, rep.prI(Y2)) == rep.prI(Y), "I_p(f) over U", f=f)
                for Y3 in objects:
                    for f2 in C.hom(Y2, Y3):
                        out.check(rep.I_mor(C.compose(f, f2)) == C.compose(If, rep.I_mor(f2)),
                                  "I_p(f;f')=I_p(f);I_p(f')", f=f, f2=f2)
    for X in objects:
        for F in C.hom(X, u.U):
            i, j = rep.iota(F), rep.iota_inv(F)
            E = u.ext(F)
            out.check(C.compose(i, j) == C.identity(E) and C.compose(j, i) == C.identity(C.cod(i)),
                      "iota-invertible", F=F)
    return out


def check_st_square(rep: LccRep, objects, name="st-square") -> LawReport:
    """Q(I_p f, prI Y') ; st(Y') = st(Y) ; f."""
    C, u = rep.C, rep.u
    out = LawReport(name)
    for Y in objects:
        for Y2 in objects:
            for f in C.hom(Y, Y2):
                lhs = C.compose(u.Q(rep.I_mor(f), rep.prI(Y2)), rep.st(Y2))
                out.check(lhs == C.compose(rep.st(Y), f), "square", f=f)
    return out


def check_eta(rep: LccRep, n, objects, name=None, Ys=None) -> LawReport:
    """eta_n bijective and natural in X and Y; agreement with the presheaf composite."""
    C, D = rep.C, rep.D
    out = LawReport(name or f"eta{n}")
    objects = list(objects)
    Ys = objects if Ys is None else list(Ys)
    for Y in Ys:
        IY = rep.I_n(n, Y)
        pm = rep.eta_pm(n, Y)
        for X in objects:
            ds = D.elements(n, X, Y)
            ms = C.hom(X, IY)
            out.check(len(ds) == len(ms), "|D^n(X,Y)|=|hom(X,I^n Y)|", X=X, Y=Y, D=len(ds),
                      hom=len(ms))
            images = set()
            for d in ds:
                m = rep.eta_n(n, Y, d)
                images.add(m)
                out.check(rep.eta_bang_n(n, Y, m) == d, "eta^!(eta(d))=d", d=d)
                out.check(m == pm(X, d), "recursion=presheaf-composite", d=d)
                for X1 in objects:
                    for f in C.hom(X1, X):
                        out.check(rep.eta_n(n, Y, D.left(f, n, d)) == C.compose(f, m),
                                  "eta(f o d)=f;eta(d)", f=f, d=d)
                for Y2 in Ys:
                    for g in C.hom(Y, Y2):
                        out.check(rep.eta_n(n, Y2, D.right(n, d, g))
                                  == C.compose(m, rep.I_n_mor(n, g)),
                                  "eta(d o g)=eta(d);I^n(g)", g=g, d=d)
            out.check(len(images) == len(ms), "eta-surjective", X=X, Y=Y)
            for m in ms:
                out.check(rep.eta_n(n, Y, rep.eta_bang_n(n, Y, m)) == m, "eta(eta^!(m))=m", m=m)
    return out


def check_id_n(rep: LccRep, n, objects, name=None, m_objects=None, only=None) -> LawReport:
    """m o Id^n_Y = eta^!(m), Id^n_Y o g = eta^!(I^n g), eta(d) o Id^n_Y = d."""
    C, D = rep.C, rep.D
    out = SelectiveReport(name or f"Id{n}", only)
    objects = list(objects)
    m_objects = objects if m_objects is None else list(m_objects)
    for Y in objects:
        idn = rep.id_n(n, Y)
        IY = rep.I_n(n, Y)
        out.check(D.contains(n, IY, Y, idn), "Id^n typing", Y=Y)
        for Y2 in objects:
            for g in C.hom(Y, Y2):
                out.check(D.right(n, idn, g) == rep.eta_bang_n(n, Y2, rep.I_n_mor(n, g)),
                          "Id^n o g = eta^!(I^n g)", g=g)
        for X in m_objects:
            for m in C.hom(X, IY):
                out.check(D.left(m, n, idn) == rep.eta_bang_n(n, Y, m), "m o Id^n = eta^!(m)", m=m)
            for d in D.elements(n, X, Y):
                out.check(D.left(rep.eta_n(n, Y, d), n, idn) == d, "eta(d) o Id^n = d", d=d)
    return out


def check_mu(rep: LccRep, cc, n, objects, name=None, only=None) -> LawReport:
    """mu_n(d o) = mu~_n(o) ; I^{n-1}(p), and mu_n, mu~_n bijective."""
    C, u = rep.C, rep.u
    out = SelectiveReport(name or f"mu{n}", only)
    Ip = rep.I_n_mor(n - 1, u.p)
    for G in objects:
        Ts = cc.ob_n(G, n)
        mus = {rep.mu(cc, n, G, T) for T in Ts}
        out.check(len(mus) == len(Ts) == C.hom_size(G.int, rep.I_n(n - 1, u.U)), "mu-bijective",
                  G=G, size=len(Ts))
        os_ = cc.obt_n(G, n)
        mts = set()
        for o in os_:
            mt = rep.mu_t(cc, n, G, o)
            mts.add(mt)
            out.check(rep.mu(cc, n, G, o.tgt) == C.compose(mt, Ip), "mu(d o)=mu~(o);I^{n-1}(p)",
                      G=G, o=o)
        out.check(len(mts) == len(os_) == C.hom_size(G.int, rep.I_n(n - 1, u.Ut)),
                  "mu~-bijective", G=G, size=len(os_))
    return out
