"""C-systems, the presheaves Ob_n and Obt_n, and the Sig construction.

A C-system here is a category with a length function, the father map ft,
canonical projections p_X : X -> ft X, and chosen substitution squares
(f*T, q(f,T)). ``base_change`` and ``q`` take T with ft T = cod f; the
iterated forms for deeper T are derived.
"""
from __future__ import annotations

from itertools import product

from .category import (Category, CategoryError, LawReport, Presheaf, PresheafMorphism, SelectiveReport,
                       TableCategory, TruncationError, pm_compose)


class CSystem:
    category: Category
    pt: object
    N: int | None = None
    name = "csystem"

    def length(self, X) -> int:
        raise NotImplementedError

    def ft(self, X):
        raise NotImplementedError

    def proj(self, X):
        """p_X : X -> ft X."""
        raise NotImplementedError

    def base_change(self, f, T):
        """f*T for f : G' -> G and ft T = G."""
        raise NotImplementedError

    def q(self, f, T):
        """q(f,T) : f*T -> T."""
        raise NotImplementedError

    # ---------------------------------------------------------- overridable enumerations

    def objects(self):
        return self.category.objects()

    def children(self, G):
        """Ob_1(G): objects T with ft T = G and l(T) = l(G) + 1."""
        lG = self.length(G)
        return [T for T in self.objects() if self.length(T) == lG + 1 and self.ft(T) == G]

    def sections(self, T):
        C = self.category
        p = self.proj(T)
        idB = C.identity(self.ft(T))
        return [o for o in C.hom(self.ft(T), T) if C.compose(o, p) == idB]

    def mediate(self, f, T, h, k):
        """The unique m : W -> f*T with m;p = h and m;q(f,T) = k."""
        return self.category.mediate(self.proj(self.base_change(f, T)), self.q(f, T), h, k)

    # ---------------------------------------------------------- derived operations

    def ft_n(self, X, n):
        for _ in range(n):
            X = self.ft(X)
        return X

    def depth_over(self, T, G):
        """k with ft^k T = G and l(T) = l(G) + k, or None."""
        k = self.length(T) - self.length(G)
        if k < 0 or self.ft_n(T, k) != G:
            return None
        return k

    def pullback_obj(self, f, T):
        """f*T for ft^k T = cod f, any k >= 0."""
        C = self.category
        if T == C.cod(f):
            return C.dom(f)
        return self.base_change(self.q_ext(f, self.ft(T)), T)

    def q_ext(self, f, X):
        """q(f, X) : f*X -> X for ft^k X = cod f; q(f, cod f) = f."""
        C = self.category
        if X == C.cod(f):
            return f
        return self.q(self.q_ext(f, self.ft(X)), X)

    def pullback_section(self, f, o):
        """f*(o): the section s of p_{g*T} with s;q(g,T) = g;o, g = q(f, ft T)."""
        C = self.category
        T = C.cod(o)
        g = self.q_ext(f, self.ft(T))
        return self.mediate(g, T, C.identity(C.dom(g)), C.compose(g, o))

    def guard(self, length):
        if self.N is not None and length > self.N:
            raise TruncationError(f"length {length} exceeds truncation N={self.N}")

    def ob_n(self, G, n):
        self.guard(self.length(G) + n)
        layer = [G]
        for _ in range(n):
            layer = [T for X in layer for T in self.children(X)]
        return layer

    def obt_n(self, G, n):
        if n == 0:
            return []
        return [o for T in self.ob_n(G, n) for o in self.sections(T)]

    def upto(self, length):
        """All objects of length <= ``length`` reachable from pt."""
        out, layer = [self.pt], [self.pt]
        for _ in range(length):
            layer = [T for X in layer for T in self.children(X)]
            out.extend(layer)
        return out


class TableCSystem(CSystem):
    """A C-system given by explicit tables over a :class:`TableCategory`."""

    def __init__(self, category: TableCategory, pt, lengths, fts, projs, subst, qs, name="table"):
        self.category = category
        self.pt = pt
        self.lengths, self.fts, self.projs = dict(lengths), dict(fts), dict(projs)
        self.subst, self.qs = dict(subst), dict(qs)
        self.N = max(self.lengths.values(), default=0)
        self.name = name

    def length(self, X):
        return self.lengths[X]

    def ft(self, X):
        return self.fts[X]

    def proj(self, X):
        return self.projs[X]

    def base_change(self, f, T):
        try:
            return self.subst[(f, T)]
        except KeyError:
            raise CategoryError(f"no substitution for ({f}, {T})") from None

    def q(self, f, T):
        try:
            return self.qs[(f, T)]
        except KeyError:
            raise CategoryError(f"no q for ({f}, {T})") from None


class PatchedCSystem(CSystem):
    """Wraps a C-system and overrides chosen q(f,T) values (fault injection)."""

    def __init__(self, base: CSystem, q_patch):
        self.base = base
        self.category = base.category
        self.pt = base.pt
        self.N = base.N
        self.name = base.name + "*"
        self.q_patch = dict(q_patch)

    def __getattr__(self, name):
        # scope, int and the other extras of the wrapped system
        return getattr(self.base, name)

    def length(self, X):
        return self.base.length(X)

    def ft(self, X):
        return self.base.ft(X)

    def proj(self, X):
        return self.base.proj(X)

    def base_change(self, f, T):
        return self.base.base_change(f, T)

    def q(self, f, T):
        return self.q_patch.get((f, T)) or self.base.q(f, T)

    def objects(self):
        return self.base.objects()

    def children(self, G):
        return self.base.children(G)

    def sections(self, T):
        return self.base.sections(T)


# ---------------------------------------------------------------- axioms

def check_csystem(cs: CSystem, bases=None, probes=None, compose_bases=None,
                  name="csystem-axioms") -> LawReport:
    """The seven C-system clauses over substitutions f : G' -> G with G, G' in ``bases``.

    ``compose_bases`` bounds the objects used for the composition clause and
    ``probes`` the test objects for the pullback clause.
    """
    C = cs.category
    rep = LawReport(name)
    N = cs.N if cs.N is not None else 3
    bases = list(cs.upto(N - 1) if bases is None else bases)
    compose_bases = bases if compose_bases is None else list(compose_bases)
    probes = [cs.pt] if probes is None else list(probes)
    pt = cs.pt
    everything = list(cs.upto(N)) if cs.N is not None else list(cs.objects())

    # (1) pt final, (2) ft(pt) = pt, (3) lengths
    for X in everything:
        rep.check(C.hom_size(X, pt) == 1, "pt-final", object=X)
    rep.check(cs.ft(pt) == pt and cs.length(pt) == 0, "ft(pt)=pt")
    for X in everything:
        if X == pt:
            continue
        ok = cs.length(X) > 0 and cs.length(cs.ft(X)) == cs.length(X) - 1
        rep.check(ok, "l(ft X)=l(X)-1", object=X)
        p = cs.proj(X)
        rep.check(C.dom(p) == X and C.cod(p) == cs.ft(X), "p-typing", object=X)

    homs = {}

    def hom(A, B):
        key = (A, B)
        if key not in homs:
            homs[key] = list(C.hom(A, B))
        return homs[key]

    for G in bases:
        kids = cs.children(G)
        # (4) identity substitution
        i = C.identity(G)
        for T in kids:
            rep.check(cs.base_change(i, T) == T, "Id*T=T", T=T)
            rep.check(cs.q(i, T) == C.identity(T), "q(Id,T)=Id", T=T)
        for G1 in bases:
            for f in hom(G1, G):
                for T in kids:
                    fT = cs.base_change(f, T)
                    q = cs.q(f, T)
                    typed = (cs.ft(fT) == G1 and cs.length(fT) == cs.length(G1) + 1
                             and C.dom(q) == fT and C.cod(q) == T)
                    if not rep.check(typed, "substitution-typing", f=f, T=T):
                        continue
                    # (6) the q-square commutes
                    rep.check(C.compose(q, cs.proj(T)) == C.compose(cs.proj(fT), f), "q-square",
                              f=f, T=T)
                    # (7) and is a pullback
                    for W in probes:
                        for h in hom(W, G1):
                            hf = C.compose(h, f)
                            for k in hom(W, T):
                                if C.compose(k, cs.proj(T)) != hf:
                                    continue
                                ms = C.find_mediators(cs.proj(fT), q, h, k, limit=2)
                                rep.check(len(ms) == 1, "q-square-pullback", f=f, T=T, probe=W,
                                          h=h, k=k, mediators=len(ms))
    # (5) composition
    for G in compose_bases:
        kids = cs.children(G)
        for G1 in compose_bases:
            for f in hom(G1, G):
                for G2 in compose_bases:
                    for f2 in hom(G2, G1):
                        ff = C.compose(f2, f)
                        for T in kids:
                            fT = cs.base_change(f, T)
                            ok1 = cs.base_change(ff, T) == cs.base_change(f2, fT)
                            rep.check(ok1, "(f';f)*T=f'*(f*T)", f2=f2, f=f, T=T)
                            if ok1:
                                rep.check(cs.q(ff, T) == C.compose(cs.q(f2, fT), cs.q(f, T)),
                                          "q(f';f,T)=q(f',f*T);q(f,T)", f2=f2, f=f, T=T)
    return rep


# ---------------------------------------------------------------- Ob_n, Obt_n, boundary

def ob_presheaf(cs: CSystem, n: int) -> Presheaf:
    return Presheaf(cs.category, lambda G: cs.ob_n(G, n), lambda f, T: cs.pullback_obj(f, T),
                    name=f"Ob{n}",
                    contains=lambda G, T: cs.depth_over(T, G) == n)


def obt_presheaf(cs: CSystem, n: int) -> Presheaf:
    C = cs.category

    def contains(G, o):
        T = C.cod(o)
        return (n >= 1 and cs.depth_over(T, G) == n and C.dom(o) == cs.ft(T)
                and C.compose(o, cs.proj(T)) == C.identity(cs.ft(T)))

    return Presheaf(C, lambda G: cs.obt_n(G, n), lambda f, o: cs.pullback_section(f, o),
                    name=f"Obt{n}", contains=contains)


def boundary(cs: CSystem, n: int, source=None, target=None) -> PresheafMorphism:
    C = cs.category
    return PresheafMorphism(source or obt_presheaf(cs, n), target or ob_presheaf(cs, n),
                            lambda G, o: C.cod(o), name=f"d{n}")


# ---------------------------------------------------------------- Sig

def sig(cs: CSystem, G: Presheaf) -> Presheaf:
    """Sig(G)(Gamma) = coproduct over T in Ob_1(Gamma) of G(T)."""
    C = cs.category

    def at(X):
        return [(T, g) for T in cs.ob_n(X, 1) for g in G.at(T)]

    def restrict(f, x):
        T, g = x
        return (cs.base_change(f, T), G.restrict(cs.q(f, T), g))

    def contains(X, x):
        T, g = x
        return cs.depth_over(T, X) == 1 and G.contains(T, g)

    return Presheaf(C, at, restrict, name=f"Sig({G.name})", contains=contains)


def sig_morphism(cs: CSystem, r: PresheafMorphism, source=None, target=None) -> PresheafMorphism:
    src = source or sig(cs, r.source)
    tgt = target or sig(cs, r.target)
    return PresheafMorphism(src, tgt, lambda X, x: (x[0], r(x[0], x[1])), name=f"Sig({r.name})")


def sig_iter(cs: CSystem, n: int, G: Presheaf) -> Presheaf:
    for _ in range(n):
        G = sig(cs, G)
    return G


def s_ob(cs, n, source=None, target=None) -> PresheafMorphism:
    """SOb_n : Sig(Ob_n) -> Ob_{n+1}, (T, X) |-> X."""
    return PresheafMorphism(source or sig(cs, ob_presheaf(cs, n)), target or ob_presheaf(cs, n + 1),
                            lambda G, x: x[1], name=f"SOb{n}")


def s_ob_inv(cs, n, source=None, target=None) -> PresheafMorphism:
    return PresheafMorphism(source or ob_presheaf(cs, n + 1), target or sig(cs, ob_presheaf(cs, n)),
                            lambda G, X: (cs.ft_n(X, n), X), name=f"SOb{n}^-1")


def s_obt(cs, n, source=None, target=None) -> PresheafMorphism:
    return PresheafMorphism(source or sig(cs, obt_presheaf(cs, n)), target or obt_presheaf(cs, n + 1),
                            lambda G, x: x[1], name=f"SObt{n}")


def s_obt_inv(cs, n, source=None, target=None) -> PresheafMorphism:
    C = cs.category
    return PresheafMorphism(source or obt_presheaf(cs, n + 1), target or sig(cs, obt_presheaf(cs, n)),
                            lambda G, o: (cs.ft_n(C.cod(o), n), o), name=f"SObt{n}^-1")


def s_ob_iter(cs, n, m) -> PresheafMorphism:
    """SOb^n_m : Sig^n(Ob_m) -> Ob_{n+m} built as Sig(SOb^{n-1}_m) ; SOb_{n-1+m}."""
    if n == 0:
        G = ob_presheaf(cs, m)
        return PresheafMorphism(G, G, lambda X, x: x, name=f"SOb^0_{m}")
    inner = s_ob_iter(cs, n - 1, m)
    return pm_compose(sig_morphism(cs, inner), s_ob(cs, n - 1 + m))


def s_ob_iter_direct(cs, n, m) -> PresheafMorphism:
    """Same map by unpacking nested pairs: (T1, (T2, ... X)) |-> X."""
    def component(G, x):
        for _ in range(n):
            x = x[1]
        return x
    return PresheafMorphism(sig_iter(cs, n, ob_presheaf(cs, m)), ob_presheaf(cs, n + m), component,
                            name=f"SOb^{n}_{m}'")


def s_ob_iter_inv(cs, n, m) -> PresheafMorphism:
    def component(G, X):
        def build(k):
            # element of Sig^k(Ob_m) at ft^{k+m}... rooted at the right base
            if k == 0:
                return X
            return (cs.ft_n(X, k - 1 + m), build(k - 1))
        return build(n)
    return PresheafMorphism(ob_presheaf(cs, n + m), sig_iter(cs, n, ob_presheaf(cs, m)), component,
                            name=f"SOb^{n}_{m}^-1")


# ---------------------------------------------------------------- Sig, SOb and membership checks

def _morphisms_between(C, objs):
    for A in objs:
        for B in objs:
            for f in C.hom(A, B):
                yield A, B, f


def check_iso_pair(r, rinv, objects, rep, law):
    """r;rinv = Id and rinv;r = Id on every element in scope."""
    for G in objects:
        for x in r.source.at(G):
            y = r(G, x)
            rep.check(r.target.contains(G, y), f"{law}-typing", object=G, element=x)
            rep.check(rinv(G, y) == x, f"{law}-left-inverse", object=G, element=x)
        for y in r.target.at(G):
            rep.check(r(G, rinv(G, y)) == y, f"{law}-right-inverse", object=G, element=y)


def check_naturality(r, objects, rep, law):
    C = r.source.base
    for A, B, f in _morphisms_between(C, objects):
        for x in r.source.at(B):
            rep.check(r.target.restrict(f, r(B, x)) == r(A, r.source.restrict(f, x)), law,
                      morphism=f, element=x)


def check_membership(cs: CSystem, n, objects, name="membership", only=None) -> LawReport:
    """Ob_1 / Ob_n nesting and the corresponding statements for sections."""
    rep = SelectiveReport(name, only)
    C = cs.category
    for G in objects:
        for T in cs.ob_n(G, 1):
            for X in cs.ob_n(T, n):
                rep.check(cs.depth_over(X, G) == n + 1, "X in Ob_n(T) => X in Ob_{n+1}(G)", G=G, X=X)
            if n >= 1:
                for o in cs.obt_n(T, n):
                    rep.check(cs.depth_over(C.cod(o), G) == n + 1,
                              "o in Obt_n(T) => o in Obt_{n+1}(G)", G=G, o=o)
        for X in cs.ob_n(G, n + 1):
            T = cs.ft_n(X, n)
            rep.check(cs.depth_over(T, G) == 1 and cs.depth_over(X, T) == n,
                      "ft^n X in Ob_1(G) and X in Ob_n(ft^n X)", G=G, X=X)
        if n >= 1:
            for o in cs.obt_n(G, n + 1):
                X = C.cod(o)
                T = cs.ft_n(X, n)
                rep.check(cs.depth_over(T, G) == 1 and o in cs.obt_n(T, n),
                          "ft^n(d o) in Ob_1(G) and o in Obt_n(ft^n(d o))", G=G, o=o)
    return rep


def check_sig_functor(cs: CSystem, morphisms, objects, name="sig-functor") -> LawReport:
    """Sig(G) is a presheaf, Sig(r) is natural, Sig(Id) = Id and Sig(r;r') = Sig(r);Sig(r')."""
    from .category import check_presheaf, check_presheaf_morphism
    rep = LawReport(name)
    seen = set()
    for r in morphisms:
        for G in (r.source, r.target):
            if id(G) not in seen:
                seen.add(id(G))
                rep.merge(check_presheaf(sig(cs, G), objects))
                SG = sig(cs, G)
                Sid = sig_morphism(cs, PresheafMorphism(G, G, lambda X, x: x), SG, SG)
                for X in objects:
                    for x in SG.at(X):
                        rep.check(Sid(X, x) == x, "Sig(Id)=Id", object=X, element=x)
        rep.merge(check_presheaf_morphism(sig_morphism(cs, r), objects))
    for r1, r2 in zip(morphisms, morphisms[1:]):
        if r1.target is not r2.source:
            continue
        lhs = sig_morphism(cs, pm_compose(r1, r2))
        rhs = pm_compose(sig_morphism(cs, r1), sig_morphism(cs, r2))
        for X in objects:
            for x in lhs.source.at(X):
                rep.check(lhs(X, x) == rhs(X, x), "Sig(r;r')=Sig(r);Sig(r')", r=r1.name,
                          r2=r2.name, element=x)
    return rep


def check_sob(cs: CSystem, n, objects, name=None) -> LawReport:
    rep = LawReport(name or f"SOb{n}")
    r, ri = s_ob(cs, n), s_ob_inv(cs, n)
    check_iso_pair(r, ri, objects, rep, "SOb")
    check_naturality(r, objects, rep, "SOb-natural")
    return rep


def check_sobt(cs: CSystem, n, objects, name=None) -> LawReport:
    rep = LawReport(name or f"SObt{n}")
    r, ri = s_obt(cs, n), s_obt_inv(cs, n)
    check_iso_pair(r, ri, objects, rep, "SObt")
    check_naturality(r, objects, rep, "SObt-natural")
    return rep


def check_boundary_square(cs: CSystem, n, objects, name=None) -> LawReport:
    """SObt_n ; d = Sig(d) ; SOb_n."""
    rep = LawReport(name or f"boundary-square{n}")
    d_n, d_n1 = boundary(cs, n), boundary(cs, n + 1)
    top = pm_compose(s_obt(cs, n), d_n1)
    bottom = pm_compose(sig_morphism(cs, d_n), s_ob(cs, n))
    for G in objects:
        for x in top.source.at(G):
            a, b = top(G, x), bottom(G, x)
            rep.check(a == b, "SObt;d=Sig(d);SOb", object=G, element=x)
    check_naturality(d_n, objects, rep, "d-natural")
    return rep


def check_sob_iter(cs: CSystem, n, m, objects, name=None) -> LawReport:
    rep = LawReport(name or f"SOb^{n}_{m}")
    a, b, inv = s_ob_iter(cs, n, m), s_ob_iter_direct(cs, n, m), s_ob_iter_inv(cs, n, m)
    for G in objects:
        for x in a.source.at(G):
            rep.check(a(G, x) == b(G, x), "composite=unpacked", object=G, element=x)
    check_iso_pair(b, inv, objects, rep, "SOb^n_m")
    return rep
