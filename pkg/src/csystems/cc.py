"""The C-system CC(C,p) of a universe category, truncated at length N.

Objects are (n, A) with A built from the root by appending codes
F : int(A) -> U; int(A, F) = (int A; F). Morphisms are triples
((G, G'), a) with a : int G -> int G' in C, so int is fully faithful by
construction.
"""
from __future__ import annotations

from .category import (Category, CategoryError, Functor, LawReport, PresheafMorphism, SelectiveReport,
                       TruncationError, check_functor, pm_compose, precompose, yoneda)
from .csystem import (CSystem, check_naturality, obt_presheaf, ob_presheaf, s_ob_inv, s_obt_inv,
                      sig, sig_morphism)
from .universe import DCalculus, Universe, d_iter, d_on_presheaf


class CCObj:
    __slots__ = ("n", "parent", "F", "int", "_hash", "_kids", "_kidmap")

    def __init__(self, n, parent, F, int_obj):
        self.n, self.parent, self.F, self.int = n, parent, F, int_obj
        self._hash = hash((n, parent, F))
        self._kids = None
        self._kidmap = None

    def __hash__(self):
        return self._hash

    def codes(self):
        out, X = [], self
        while X.parent is not None:
            out.append(X.F)
            X = X.parent
        return tuple(reversed(out))

    def __repr__(self):
        return "(" + str(self.n) + "|" + "/".join(repr(F) for F in self.codes()) + ")"


class CCMor:
    __slots__ = ("src", "tgt", "a", "_hash")

    def __init__(self, src, tgt, a):
        self.src, self.tgt, self.a = src, tgt, a
        self._hash = hash((src, tgt, a))

    def __eq__(self, other):
        return (isinstance(other, CCMor) and self.src is other.src and self.tgt is other.tgt
                and self.a == other.a)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.src!r}-{self.a!r}->{self.tgt!r}"


class CCCategory(Category):
    def __init__(self, cc: "CC"):
        self.cc = cc
        self.C = cc.C
        self.name = f"CC({cc.C.name},{cc.u.name})"

    def objects(self):
        return self.cc.upto(self.cc.N)

    def hom(self, G, G2):
        return [CCMor(G, G2, a) for a in self.C.hom(G.int, G2.int)]

    def hom_size(self, G, G2):
        return self.C.hom_size(G.int, G2.int)

    def dom(self, f):
        return f.src

    def cod(self, f):
        return f.tgt

    def identity(self, G):
        return CCMor(G, G, self.C.identity(G.int))

    def _compose(self, f, g):
        return CCMor(f.src, g.tgt, self.C.compose(f.a, g.a))

    def compose(self, *fs):
        out = fs[0]
        for g in fs[1:]:
            if out.tgt is not g.src:
                raise CategoryError(f"cod({out!r}) != dom({g!r})")
            out = self._compose(out, g)
        return out

    def find_mediators(self, l1, l2, h, k, limit=2):
        ms = self.C.find_mediators(l1.a, l2.a, h.a, k.a, limit=limit)
        return [CCMor(h.src, l1.src, m) for m in ms]

    def inverse(self, f):
        g = self.C.inverse(f.a)
        return None if g is None else CCMor(f.tgt, f.src, g)


class CC(CSystem):
    def __init__(self, C: Category, u: Universe, N: int, terminal=None):
        self.C, self.u, self.N = C, u, N
        term = terminal if terminal is not None else getattr(C, "terminal")
        self.pt = CCObj(0, None, None, term)
        self.category = CCCategory(self)
        self.name = self.category.name
        self.int = Functor(self.category, C, lambda X: X.int, lambda f: f.a, name="int")

    # structure
    def child(self, G, F):
        return self._kid(G, F)

    def children(self, G):
        if G._kids is None:
            if G.n + 1 > self.N:
                raise TruncationError(f"length {G.n + 1} exceeds truncation N={self.N}")
            G._kids = [CCObj(G.n + 1, G, F, self.u.ext(F)) for F in self.C.hom(G.int, self.u.U)]
            G._kidmap = {T.F: T for T in G._kids}
        return G._kids

    def _kid(self, G, F):
        if G._kidmap is None:
            self.children(G)
        try:
            return G._kidmap[F]
        except KeyError:
            raise CategoryError(f"{F!r} is not a code on int{G!r}") from None

    def length(self, X):
        return X.n

    def ft(self, X):
        return X.parent if X.parent is not None else X

    def proj(self, X):
        if X.parent is None:
            return self.category.identity(X)
        return CCMor(X, X.parent, self.u.p_of(X.F))

    def base_change(self, f, T):
        if T.parent is not f.tgt:
            raise CategoryError("base change needs ft T = cod f")
        return self._kid(f.src, self.C.compose(f.a, T.F))

    def q(self, f, T):
        return CCMor(self.base_change(f, T), T, self.u.Q(f.a, T.F))

    def objects(self):
        return self.upto(self.N)

    def sections(self, T):
        fast = getattr(self.C, "sections", None)
        if fast is None or T.parent is None:
            return CSystem.sections(self, T)
        return [CCMor(T.parent, T, s) for s in fast(self.u.p_of(T.F))]

    def mediate(self, f, T, h, k):
        F2 = self.C.compose(f.a, T.F)
        m = self.u.star(h.a, self.C.compose(k.a, self.u.Q_of(T.F)), F2)
        return CCMor(h.src, self.base_change(f, T), m)

    def upto(self, length):
        length = min(length, self.N)
        return CSystem.upto(self, length)

    def scope(self, max_length, max_card=None):
        out = self.upto(max_length)
        if max_card is not None and hasattr(self.C, "make"):
            out = [X for X in out if len(X.int) <= max_card]
        return out

    def int_yo(self, Y):
        return precompose(self.int, yoneda(self.C, Y))

    def int_pre(self, G):
        return precompose(self.int, G)


def build_cc(C, u, N, terminal=None) -> CC:
    return CC(C, u, N, terminal)


# ---------------------------------------------------------------- u_1 and its tilde version

def u1(cc: CC) -> PresheafMorphism:
    return PresheafMorphism(ob_presheaf(cc, 1), cc.int_yo(cc.u.U), lambda G, T: T.F, name="u1")


def u1_inv(cc: CC) -> PresheafMorphism:
    return PresheafMorphism(cc.int_yo(cc.u.U), ob_presheaf(cc, 1), lambda G, F: cc._kid(G, F),
                            name="u1^-1")


def u1t(cc: CC) -> PresheafMorphism:
    C, u = cc.C, cc.u
    return PresheafMorphism(obt_presheaf(cc, 1), cc.int_yo(u.Ut),
                            lambda G, o: C.compose(o.a, u.Q_of(o.tgt.F)), name="u1t")


def u1t_inv(cc: CC) -> PresheafMorphism:
    """H |-> the section Id *_{H;p} H of p over the code H;p."""
    C, u = cc.C, cc.u

    def component(G, H):
        F = C.compose(H, u.p)
        s = u.star(C.identity(G.int), H, F)
        return CCMor(G, cc._kid(G, F), s)

    return PresheafMorphism(cc.int_yo(u.Ut), obt_presheaf(cc, 1), component, name="u1t^-1")


def check_section_bijection(C, u, objects, name="sections-vs-Ut-maps") -> LawReport:
    """(F, s) |-> s;Q(F) is a bijection from sections to hom(X, Ut)."""
    rep = LawReport(name)
    for X in objects:
        images = {}
        for F in C.hom(X, u.U):
            c = u.comprehension(F)
            for s in (C.sections(c.p) if hasattr(C, "sections") else
                      [s for s in C.hom(X, c.obj) if C.compose(s, c.p) == C.identity(X)]):
                H = C.compose(s, c.Q)
                rep.check(H not in images, "injective", X=X, F=F, s=s)
                images[H] = (F, s)
                F2 = C.compose(H, u.p)
                s2 = u.star(C.identity(X), H, F2)
                rep.check((F2, s2) == (F, s), "inverse-formula", X=X, F=F, s=s)
        rep.check(len(images) == C.hom_size(X, u.Ut), "surjective", X=X, images=len(images))
    return rep


# ---------------------------------------------------------------- SD_p

def sd_p(cc: CC, G, source=None, target=None) -> PresheafMorphism:
    """Sig(int°G) -> int°(D_p G), (T, g) |-> (u_1(T), g)."""
    src = source or sig(cc, cc.int_pre(G))
    tgt = target or cc.int_pre(d_on_presheaf(cc.u, G))
    return PresheafMorphism(src, tgt, lambda X, x: (x[0].F, x[1]), name=f"SD({G.name})")


# ---------------------------------------------------------------- u_n, ut_n

class UnMaps:
    """u_n and ut_n both as composites of presheaf morphisms and by the unfolded formula."""

    def __init__(self, cc: CC):
        self.cc = cc
        self.u = cc.u
        self.D = DCalculus(cc.u)
        self._dyo = {}

    def dyo(self, n, Y):
        key = (n, Y)
        if key not in self._dyo:
            self._dyo[key] = d_iter(self.u, n, yoneda(self.cc.C, Y))
        return self._dyo[key]

    def target(self, n, tilde=False):
        Y = self.u.Ut if tilde else self.u.U
        return self.cc.int_pre(self.dyo(n - 1, Y))

    # unfolded formulas
    def un(self, n, G, T):
        cc = self.cc
        if n == 1:
            return T.F
        T1 = cc.ft_n(T, n - 1)
        return (T1.F, self.un(n - 1, T1, T))

    def utn(self, n, G, o):
        cc, C = self.cc, self.cc.C
        if n == 1:
            return C.compose(o.a, self.u.Q_of(o.tgt.F))
        T1 = cc.ft_n(o.tgt, n - 1)
        return (T1.F, self.utn(n - 1, T1, o))

    def u_inv(self, n, G, d):
        cc = self.cc
        if n == 1:
            return cc._kid(G, d)
        F, a = d
        return self.u_inv(n - 1, cc._kid(G, F), a)

    def ut_inv(self, n, G, d):
        cc, C, u = self.cc, self.cc.C, self.u
        if n == 1:
            F = C.compose(d, u.p)
            return CCMor(G, cc._kid(G, F), u.star(C.identity(G.int), d, F))
        F, a = d
        return self.ut_inv(n - 1, cc._kid(G, F), a)

    # presheaf morphisms
    def u_formula(self, n):
        return PresheafMorphism(ob_presheaf(self.cc, n), self.target(n),
                                lambda G, T: self.un(n, G, T), name=f"u{n}")

    def ut_formula(self, n):
        return PresheafMorphism(obt_presheaf(self.cc, n), self.target(n, True),
                                lambda G, o: self.utn(n, G, o), name=f"ut{n}")

    def u_composite(self, n):
        """u_{n+1} = SOb_n^-1 ; Sig(u_n) ; SD_p(D^{n-1}(Yo U))."""
        cc = self.cc
        if n == 1:
            return u1(cc)
        prev = self.u_composite(n - 1)
        return pm_compose(s_ob_inv(cc, n - 1), sig_morphism(cc, prev),
                          sd_p(cc, self.dyo(n - 2, self.u.U)))

    def ut_composite(self, n):
        cc = self.cc
        if n == 1:
            return u1t(cc)
        prev = self.ut_composite(n - 1)
        return pm_compose(s_obt_inv(cc, n - 1), sig_morphism(cc, prev),
                          sd_p(cc, self.dyo(n - 2, self.u.Ut)))


# ---------------------------------------------------------------- checks

def check_int(cc: CC, objects, name="int") -> LawReport:
    rep = check_functor(cc.int, objects, name=name)
    C = cc.C
    for G in objects:
        for G2 in objects:
            ims = {f.a for f in cc.category.hom(G, G2)}
            rep.check(len(ims) == C.hom_size(G.int, G2.int), "int-bijective-on-hom", G=G, G2=G2)
    for G in objects:
        if G.n >= cc.N:
            continue
        for T in cc.children(G):
            rep.check(T.int == cc.u.ext(T.F), "int(T)=(int G; u1 T)", T=T)
            rep.check(cc.proj(T).a == cc.u.p_of(T.F), "int(p_T)=p_{u1 T}", T=T)
            for G1 in objects:
                for f in cc.category.hom(G1, G):
                    rep.check(cc.q(f, T).a == cc.u.Q(f.a, T.F), "int(q(f,T))=Q(int f,u1 T)",
                              f=f, T=T)
    return rep


def check_int_sections(cc: CC, objects, name="int-sections") -> LawReport:
    """int maps sec(p_T) bijectively onto sec(int p_T) in C."""
    rep = LawReport(name)
    C = cc.C
    for G in objects:
        if G.n >= cc.N:
            continue
        for T in cc.children(G):
            ss = CSystem.sections(cc, T)  # generic search, not the backend shortcut
            for s in ss:
                rep.check(C.compose(s.a, cc.proj(T).a) == C.identity(G.int), "int(s) is a section",
                          T=T, s=s)
            ims = {s.a for s in ss}
            p = cc.proj(T).a
            want = {s for s in C.hom(G.int, T.int) if C.compose(s, p) == C.identity(G.int)}
            rep.check(len(ims) == len(ss) and ims == want, "int-sec-bijective", T=T,
                      images=len(ims), expected=len(want))
    return rep


def check_ob1_criterion(cc: CC, objects, candidates, name="ob1-criterion") -> LawReport:
    """T in Ob_1(G) iff T = (n+1, (A, F)) for G = (n, A)."""
    rep = LawReport(name)
    for G in objects:
        for T in candidates:
            semantic = cc.depth_over(T, G) == 1
            structural = T.n == G.n + 1 and T.parent is G
            rep.check(semantic == structural, "criterion", G=G, T=T)
    return rep


def check_u1(cc: CC, objects, name="u1", maps=None, parts=("u1", "u1t")) -> LawReport:
    """``maps`` overrides (u1, u1^-1, ut1, ut1^-1), e.g. with a tabulated variant."""
    from .csystem import check_iso_pair
    rep = LawReport(name)
    a, ai, t, ti = maps or (u1(cc), u1_inv(cc), u1t(cc), u1t_inv(cc))
    if "u1" in parts:
        check_iso_pair(a, ai, objects, rep, "u1")
        check_naturality(a, objects, rep, "u1-natural")
    if "u1t" not in parts:
        return rep
    check_iso_pair(t, ti, objects, rep, "u1t")
    check_naturality(t, objects, rep, "u1t-natural")
    C = cc.C
    for G in objects:
        want = sum(_prod(cc.u.sizes[F(x)] for x in G.int) for F in C.hom(G.int, cc.u.U)) \
            if hasattr(cc.u, "sizes") else None
        if want is not None:
            rep.check(len(cc.obt_n(G, 1)) == want, "section-count", G=G, expected=want)
    return rep


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def check_l4_square(cc: CC, objects, name="ut1;Yo(p)=d;u1") -> LawReport:
    rep = LawReport(name)
    C = cc.C
    a, t = u1(cc), u1t(cc)
    for G in objects:
        for o in cc.obt_n(G, 1):
            rep.check(C.compose(t(G, o), cc.u.p) == a(G, o.tgt), "square", G=G, o=o)
    return rep


def check_sd_p(cc: CC, presheaves, morphisms, objects, name="SD_p") -> LawReport:
    """Bijectivity, naturality in Gamma, and naturality in G for SD_p."""
    from .category import check_presheaf_morphism
    rep = LawReport(name)
    for G in presheaves:
        s = sd_p(cc, G)
        for X in objects:
            src, tgt = s.source.at(X), s.target.at(X)
            ims = {s(X, x) for x in src}
            rep.check(len(ims) == len(src) == len(tgt), "bijective", G=G.name, object=X,
                      source=len(src), target=len(tgt))
        rep.merge(check_presheaf_morphism(s, objects, name="SD-natural-in-Gamma"))
    for r in morphisms:
        s1, s2 = sd_p(cc, r.source), sd_p(cc, r.target)
        left = sig_morphism(cc, PresheafMorphism(cc.int_pre(r.source), cc.int_pre(r.target),
                                                 lambda X, x, r=r: r(cc.int.ob(X), x)))
        for X in objects:
            for x in s1.source.at(X):
                F, g = s1(X, x)
                rhs = (F, r(cc.u.ext(F), g))
                rep.check(s2(X, left(X, x)) == rhs, "SD-natural-in-G", r=r.name, element=x)
    return rep


def check_un(cc: CC, n, objects, name=None, only=None) -> LawReport:
    """u_n, ut_n: composite = formula, bijective, natural, and the boundary square."""
    from .csystem import check_iso_pair
    rep = SelectiveReport(name or f"u{n}", only)
    M = cc_maps(cc)
    uf, uc = M.u_formula(n), M.u_composite(n)
    tf, tc = M.ut_formula(n), M.ut_composite(n)
    C, D = cc.C, M.D
    inv_u = PresheafMorphism(uf.target, uf.source, lambda G, d: M.u_inv(n, G, d))
    inv_t = PresheafMorphism(tf.target, tf.source, lambda G, d: M.ut_inv(n, G, d))
    for G in objects:
        for T in uf.source.at(G):
            rep.check(uf(G, T) == uc(G, T), "u-composite=formula", G=G, T=T)
        for o in tf.source.at(G):
            x = tf(G, o)
            rep.check(x == tc(G, o), "ut-composite=formula", G=G, o=o)
            lhs = D.right(n - 1, x, cc.u.p)
            rep.check(lhs == uf(G, o.tgt), "ut;D(Yo p)=d;u", G=G, o=o)
            rep.check(lhs == D.right_generic(n - 1, G.int, x, cc.u.p), "D(Yo p)-generic", G=G, o=o)
    check_iso_pair(uf, inv_u, objects, rep, "u_n")
    check_iso_pair(tf, inv_t, objects, rep, "ut_n")
    check_naturality(uf, objects, rep, "u_n-natural")
    check_naturality(tf, objects, rep, "ut_n-natural")
    return rep


_MAPS = {}


def cc_maps(cc: CC) -> UnMaps:
    m = _MAPS.get(id(cc))
    if m is None or m.cc is not cc:
        m = _MAPS[id(cc)] = UnMaps(cc)
    return m
