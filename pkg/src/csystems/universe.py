"""Universes p : Ut -> U, the functor D_p on presheaves, and the D_p^n calculus.

Elements of D_p^n(X, Y) are stored "raw": a morphism X -> Y when n = 0 and a
pair (F, a) with F : X -> U and a a raw element of depth n-1 at ((X;F), Y)
otherwise. :class:`DElement` wraps a raw value together with its typing.
"""
from __future__ import annotations

from dataclasses import dataclass

from .category import (Category, CategoryError, LawReport, Presheaf, PresheafMorphism, SelectiveReport,
                       yoneda, yoneda_on_morphism)


@dataclass(frozen=True)
class Comprehension:
    """The chosen pullback ((X;F), p_F, Q(F)) of p along F."""
    obj: object
    p: object
    Q: object


class Universe:
    """Universe structure on p : Ut -> U.

    Subclasses implement :meth:`comprehension`. ``star`` and ``Q`` have
    generic (search based) implementations that subclasses may speed up.
    """

    def __init__(self, C: Category, p, name="p"):
        self.C = C
        self.p = p
        self.U = C.cod(p)
        self.Ut = C.dom(p)
        self.name = name
        self._Q = {}

    def comprehension(self, F) -> Comprehension:
        raise NotImplementedError

    def ext(self, F):
        """(X;F)."""
        return self.comprehension(F).obj

    def p_of(self, F):
        return self.comprehension(F).p

    def Q_of(self, F):
        return self.comprehension(F).Q

    def star(self, f, g, F):
        """f *_F g : W -> (X;F), the mediator with p_F and Q(F) components f and g."""
        c = self.comprehension(F)
        return self.C.mediate(c.p, c.Q, f, g)

    def Q(self, f, F):
        """Q(f,F) = (p_{f;F} ; f) *_F Q(f;F) : (X';f;F) -> (X;F)."""
        key = (f, F)
        try:
            return self._Q[key]
        except KeyError:
            pass
        C = self.C
        fF = C.compose(f, F)
        c = self.comprehension(fF)
        m = self.star(C.compose(c.p, f), c.Q, F)
        self._Q[key] = m
        return m

    def codes(self, X):
        return self.C.hom(X, self.U)

    def __repr__(self):
        return f"Universe({self.name})"


class TableUniverse(Universe):
    """Universe whose chosen pullbacks are listed explicitly."""

    def __init__(self, C, p, table, name="p"):
        super().__init__(C, p, name)
        self.table = dict(table)

    def comprehension(self, F):
        try:
            return self.table[F]
        except KeyError:
            raise CategoryError(f"no comprehension chosen for {F!r}") from None


def check_universe(u: Universe, objects, probes=None, name="universe") -> LawReport:
    """Chosen squares are pullbacks, star equations, and the three Q identities."""
    from .limits import PullbackSquare, pullback_universal
    C = u.C
    rep = LawReport(name)
    objects = list(objects)
    probes = objects if probes is None else list(probes)
    for X in objects:
        for F in u.codes(X):
            c = u.comprehension(F)
            ok = (C.cod(c.p) == X and C.cod(c.Q) == u.Ut and C.compose(c.p, F) == C.compose(c.Q, u.p))
            if not rep.check(ok, "square-commutes", F=F):
                continue
            sq = PullbackSquare(c.obj, c.p, c.Q, F, u.p)
            pullback_universal(C, sq, probes, rep, F=F)
            rep.check(u.Q(C.identity(X), F) == C.identity(c.obj), "Q(Id,F)=Id", F=F)
            for X1 in objects:
                for f in C.hom(X1, X):
                    fF = C.compose(f, F)
                    q = u.Q(f, F)
                    rep.check(C.compose(q, c.p) == C.compose(u.p_of(fF), f), "star-eq1a", f=f, F=F)
                    rep.check(C.compose(q, c.Q) == u.Q_of(fF), "Q(f;F)=Q(f,F);Q(F)", f=f, F=F)
                    for X2 in objects:
                        for f2 in C.hom(X2, X1):
                            rep.check(u.Q(C.compose(f2, f), F) == C.compose(u.Q(f2, fF), q),
                                      "Q(f';f,F)=Q(f',f;F);Q(f,F)", f2=f2, f=f, F=F)
    return rep


# ---------------------------------------------------------------- D_p

def d_on_presheaf(u: Universe, G: Presheaf, name=None) -> Presheaf:
    C = u.C

    def at(X):
        out = []
        for F in C.hom(X, u.U):
            E = u.ext(F)
            out.extend((F, g) for g in G.at(E))
        return out

    def restrict(f, x):
        F, g = x
        return (C.compose(f, F), G.restrict(u.Q(f, F), g))

    def contains(X, x):
        F, g = x
        return C.dom(F) == X and C.cod(F) == u.U and G.contains(u.ext(F), g)

    return Presheaf(C, at, restrict, name=name or f"D({G.name})", contains=contains)


def d_on_morphism(u: Universe, r: PresheafMorphism, source=None, target=None) -> PresheafMorphism:
    src = source or d_on_presheaf(u, r.source)
    tgt = target or d_on_presheaf(u, r.target)

    def component(X, x):
        F, g = x
        return (F, r(u.ext(F), g))

    return PresheafMorphism(src, tgt, component, name=f"D({r.name})")


def d_iter(u: Universe, n: int, G: Presheaf) -> Presheaf:
    for _ in range(n):
        G = d_on_presheaf(u, G)
    return G


def d_iter_morphism(u: Universe, n: int, r: PresheafMorphism, source=None, target=None):
    """D_p^n(r), built from the generic D_p on morphisms."""
    if n == 0:
        return r
    inner = d_iter_morphism(u, n - 1, r)
    return d_on_morphism(u, inner, source=source, target=target)


class DCalculus:
    """The sets D_p^n(X,Y) with the two circle actions.

    Two implementations are provided: the explicit nested-pair recursion
    (``left``/``right``) and the generic presheaf route (``left_generic``/
    ``right_generic``) which goes through D_p^n(Yo(Y)).
    """

    def __init__(self, u: Universe):
        self.u = u
        self.C = u.C
        self._yo = {}

    def presheaf(self, n, Y) -> Presheaf:
        key = (n, Y)
        if key not in self._yo:
            self._yo[key] = d_iter(self.u, n, yoneda(self.C, Y))
        return self._yo[key]

    def elements(self, n, X, Y):
        return self.presheaf(n, Y).at(X)

    def contains(self, n, X, Y, d) -> bool:
        C = self.C
        if n == 0:
            return C.dom(d) == X and C.cod(d) == Y
        if not (isinstance(d, tuple) and len(d) == 2):
            return False
        F, a = d
        return C.dom(F) == X and C.cod(F) == self.u.U and self.contains(n - 1, self.u.ext(F), Y, a)

    def left(self, f, n, d):
        """f o d for f : X' -> X and d in D^n(X,Y)."""
        if n == 0:
            return self.C.compose(f, d)
        F, a = d
        return (self.C.compose(f, F), self.left(self.u.Q(f, F), n - 1, a))

    def right(self, n, d, g):
        """d o g for d in D^n(X,Y) and g : Y -> Y'."""
        if n == 0:
            return self.C.compose(d, g)
        F, a = d
        return (F, self.right(n - 1, a, g))

    def left_generic(self, f, n, Y, d):
        return self.presheaf(n, Y).restrict(f, d)

    def right_generic(self, n, X, d, g):
        C = self.C
        r = d_iter_morphism(self.u, n, yoneda_on_morphism(C, g))
        return r(X, d)

    def base(self, n, d):
        """First code of a depth n >= 1 element."""
        return d[0]


@dataclass(frozen=True)
class DElement:
    n: int
    X: object
    Y: object
    raw: object

    def __repr__(self):
        return f"D{self.n}({self.raw!r})"


def check_circ_laws(D: DCalculus, n, objects, name="circ-laws", Ys=None, only=None) -> LawReport:
    """The five circle laws and agreement with the generic presheaf route."""
    C = D.C
    rep = SelectiveReport(name, only)
    objects = list(objects)
    Ys = objects if Ys is None else list(Ys)
    homs = {(A, B): list(C.hom(A, B)) for A in objects for B in objects}
    for X in objects:
        for Y in Ys:
            ds = D.elements(n, X, Y)
            for d in ds:
                rep.check(D.left(C.identity(X), n, d) == d, "Id o d = d", d=d)
                rep.check(D.right(n, d, C.identity(Y)) == d, "d o Id = d", d=d)
                for X1 in objects:
                    for f in homs[(X1, X)]:
                        fd = D.left(f, n, d)
                        rep.check(fd == D.left_generic(f, n, Y, d), "left-agrees-generic", f=f, d=d)
                        for X2 in objects:
                            for f2 in homs[(X2, X1)]:
                                rep.check(D.left(C.compose(f2, f), n, d) == D.left(f2, n, fd),
                                          "(f';f) o d = f' o (f o d)", f2=f2, f=f, d=d)
                for Y1 in Ys:
                    for g in homs.get((Y, Y1), ()) if (Y, Y1) in homs else C.hom(Y, Y1):
                        dg = D.right(n, d, g)
                        rep.check(dg == D.right_generic(n, X, d, g), "right-agrees-generic", g=g, d=d)
                        for Y2 in Ys:
                            for g2 in C.hom(Y1, Y2):
                                rep.check(D.right(n, d, C.compose(g, g2)) == D.right(n, dg, g2),
                                          "d o (g;g') = (d o g) o g'", g=g, g2=g2, d=d)
                        for X1 in objects:
                            for f in homs[(X1, X)]:
                                rep.check(D.left(f, n, dg) == D.right(n, D.left(f, n, d), g),
                                          "f o (d o g) = (f o d) o g", f=f, g=g, d=d)
    return rep
