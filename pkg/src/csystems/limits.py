"""Binary products, pullbacks, cartesian closure, slices and lcc structures.

All structures here have generic implementations that find mediating
morphisms by search, so they work on any enumerable category. The finite
set backend overrides them with direct constructions.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .category import Category, CategoryError, LawReport, SelectiveReport


@dataclass(frozen=True)
class ProductDiagram:
    apex: object
    pr1: object
    pr2: object


@dataclass(frozen=True)
class PullbackSquare:
    """apex --pr1--> X --f--> Z and apex --pr2--> Y --g--> Z."""
    apex: object
    pr1: object
    pr2: object
    f: object
    g: object


# ---------------------------------------------------------------- products

class BinaryProducts:
    def __init__(self, C: Category):
        self.C = C

    def product(self, X, Y) -> ProductDiagram:
        raise NotImplementedError

    def pair(self, a, b):
        d = self.product(self.C.cod(a), self.C.cod(b))
        return self.C.mediate(d.pr1, d.pr2, a, b)

    def times(self, a, b):
        """a x b : X x Y -> X' x Y'."""
        C = self.C
        d = self.product(C.dom(a), C.dom(b))
        return self.pair(C.compose(d.pr1, a), C.compose(d.pr2, b))


class TableProducts(BinaryProducts):
    def __init__(self, C, table):
        super().__init__(C)
        self.table = dict(table)

    def product(self, X, Y):
        try:
            return self.table[(X, Y)]
        except KeyError:
            raise CategoryError(f"no product chosen for ({X}, {Y})") from None


def product_universal(C, d: ProductDiagram, probes, rep: LawReport, **ctx):
    """Check hom(A, XxY) -> hom(A,X) x hom(A,Y) is a bijection for A in probes."""
    X, Y = C.cod(d.pr1), C.cod(d.pr2)
    for A in probes:
        seen = {}
        for m in C.hom(A, d.apex):
            key = (C.compose(m, d.pr1), C.compose(m, d.pr2))
            if key in seen:
                rep.fail("product-uniqueness", probe=A, **ctx)
                break
            seen[key] = m
        else:
            want = C.hom_size(A, X) * C.hom_size(A, Y)
            rep.check(len(seen) == want, "product-existence", probe=A, found=len(seen),
                      expected=want, **ctx)


def check_binary_products(C, bp: BinaryProducts, objects, probes=None, name="binary-products"):
    rep = LawReport(name)
    objects = list(objects)
    probes = objects if probes is None else list(probes)
    for X in objects:
        for Y in objects:
            d = bp.product(X, Y)
            ok = (C.dom(d.pr1) == d.apex == C.dom(d.pr2) and C.cod(d.pr1) == X and C.cod(d.pr2) == Y)
            if rep.check(ok, "typing", X=X, Y=Y):
                product_universal(C, d, probes, rep, X=X, Y=Y)
    return rep


def product_compare_iso(C, d1: ProductDiagram, d2: ProductDiagram):
    """The canonical comparison isomorphisms (iota12, iota21) between two products."""
    i12 = C.mediate(d2.pr1, d2.pr2, d1.pr1, d1.pr2)
    i21 = C.mediate(d1.pr1, d1.pr2, d2.pr1, d2.pr2)
    return i12, i21


def check_product_compare(C, bp1, bp2, objects, natural=True, name="product-comparison"):
    """iota12 and iota21 are mutually inverse, and (if ``natural``) commute with a x b."""
    rep = LawReport(name)
    objects = list(objects)
    isos = {}
    for X in objects:
        for Y in objects:
            d1, d2 = bp1.product(X, Y), bp2.product(X, Y)
            i12, i21 = product_compare_iso(C, d1, d2)
            isos[(X, Y)] = i12
            rep.check(C.compose(i12, i21) == C.identity(d1.apex), "iota12;iota21=Id", X=X, Y=Y)
            rep.check(C.compose(i21, i12) == C.identity(d2.apex), "iota21;iota12=Id", X=X, Y=Y)
    if not natural:
        return rep
    for (X, Y), i in isos.items():
        for (X2, Y2), i2 in isos.items():
            for a in C.hom(X, X2):
                for b in C.hom(Y, Y2):
                    lhs = C.compose(bp1.times(a, b), i2)
                    rhs = C.compose(i, bp2.times(a, b))
                    rep.check(lhs == rhs, "comparison-natural", a=a, b=b)
    return rep


# ---------------------------------------------------------------- pullbacks

class PullbackStructure:
    def __init__(self, C: Category):
        self.C = C

    def square(self, f, g) -> PullbackSquare:
        raise NotImplementedError

    def pair(self, f, g, h, k):
        sq = self.square(f, g)
        return self.C.mediate(sq.pr1, sq.pr2, h, k)


class TablePullbacks(PullbackStructure):
    def __init__(self, C, table):
        super().__init__(C)
        self.table = dict(table)

    def square(self, f, g):
        try:
            return self.table[(f, g)]
        except KeyError:
            raise CategoryError(f"no pullback chosen for ({f}, {g})") from None


def pullback_universal(C, sq: PullbackSquare, probes, rep: LawReport, **ctx) -> bool:
    """Universal property of a commuting square against the given probe objects."""
    X, Y = C.dom(sq.f), C.dom(sq.g)
    ok = True
    for W in probes:
        cones = {(h, k) for h in C.hom(W, X) for k in C.hom(W, Y)
                 if C.compose(h, sq.f) == C.compose(k, sq.g)}
        seen = set()
        for m in C.hom(W, sq.apex):
            key = (C.compose(m, sq.pr1), C.compose(m, sq.pr2))
            if key in seen:
                ok = False
                rep.fail("pullback-uniqueness", probe=W, **ctx)
                break
            seen.add(key)
        else:
            good = seen == cones
            ok &= good
            rep.check(good, "pullback-existence", probe=W, cones=len(cones), mediated=len(seen), **ctx)
    return ok


def is_pullback(C, sq: PullbackSquare, probes) -> bool:
    if C.compose(sq.pr1, sq.f) != C.compose(sq.pr2, sq.g):
        return False
    return pullback_universal(C, sq, probes, LawReport("scratch"))


def check_pullbacks(C, pbs: PullbackStructure, cospans, probes, name="pullbacks"):
    rep = LawReport(name)
    probes = list(probes)
    for f, g in cospans:
        sq = pbs.square(f, g)
        if not rep.check(sq.f == f and sq.g == g and C.compose(sq.pr1, f) == C.compose(sq.pr2, g),
                         "square-commutes", f=f, g=g):
            continue
        pullback_universal(C, sq, probes, rep, f=f, g=g)
    return rep


def cospans(C, objects):
    objects = list(objects)
    for Z in objects:
        for X in objects:
            for f in C.hom(X, Z):
                for Y in objects:
                    for g in C.hom(Y, Z):
                        yield f, g


# ---------------------------------------------------------------- ccc

class CartesianClosed:
    """Internal homs Hom(X,Y) with evaluation ev : Hom(X,Y) x X -> Y."""

    def __init__(self, C: Category, products: BinaryProducts):
        self.C = C
        self.products = products

    def hom_obj(self, X, Y):
        raise NotImplementedError

    def ev(self, X, Y):
        raise NotImplementedError

    def hom_post(self, X, b):
        """Hom(X, b) : Hom(X,Y) -> Hom(X,Y'), the unique map making the eval square commute."""
        C = self.C
        Y, Y2 = C.dom(b), C.cod(b)
        return self.adj_inv(C.compose(self.ev(X, Y), b), self.hom_obj(X, Y), X, Y2)

    def adj(self, u, X, Y):
        """adj(u) = (u x Id_X) ; ev."""
        return self.C.compose(self.products.times(u, self.C.identity(X)), self.ev(X, Y))

    def adj_inv(self, h, W, X, Y):
        """The u : W -> Hom(X,Y) with adj(u) = h, found by search."""
        for u in self.C.hom(W, self.hom_obj(X, Y)):
            if self.adj(u, X, Y) == h:
                return u
        raise CategoryError("adj is not surjective here")

    def hom_pre(self, a, Y):
        """Hom(a, Y) : Hom(X',Y) -> Hom(X,Y) for a : X -> X'."""
        C = self.C
        X, X2 = C.dom(a), C.cod(a)
        H2 = self.hom_obj(X2, Y)
        h = C.compose(self.products.times(C.identity(H2), a), self.ev(X2, Y))
        return self.adj_inv(h, H2, X, Y)


def check_ccc(ccc: CartesianClosed, objects, probes=None, name="ccc") -> LawReport:
    """Functoriality of Hom(X,-), the eq1 square, and bijectivity of adj."""
    C, bp = ccc.C, ccc.products
    rep = LawReport(name)
    objects = list(objects)
    probes = objects if probes is None else list(probes)
    for X in objects:
        for Y in objects:
            H = ccc.hom_obj(X, Y)
            ev = ccc.ev(X, Y)
            rep.check(C.dom(ev) == bp.product(H, X).apex and C.cod(ev) == Y, "ev-typing", X=X, Y=Y)
            rep.check(ccc.hom_post(X, C.identity(Y)) == C.identity(H), "Hom(X,Id)=Id", X=X, Y=Y)
            for Y2 in objects:
                for b in C.hom(Y, Y2):
                    hb = ccc.hom_post(X, b)
                    lhs = C.compose(bp.times(hb, C.identity(X)), ccc.ev(X, Y2))
                    rep.check(lhs == C.compose(ev, b), "eval-square", X=X, b=b)
                    for Y3 in objects:
                        for b2 in C.hom(Y2, Y3):
                            rep.check(ccc.hom_post(X, C.compose(b, b2))
                                      == C.compose(hb, ccc.hom_post(X, b2)),
                                      "Hom(X,-)-composition", X=X, b=b, b2=b2)
            for W in probes:
                seen = set()
                for u in C.hom(W, H):
                    seen.add(ccc.adj(u, X, Y))
                n_src = C.hom_size(W, H)
                n_tgt = C.hom_size(bp.product(W, X).apex, Y)
                rep.check(len(seen) == n_src == n_tgt, "adj-bijective", W=W, X=X, Y=Y,
                          images=len(seen), source=n_src, target=n_tgt)
    return rep


def check_hom_contravariant(ccc: CartesianClosed, objects, name="hom-contravariant",
                            only=None) -> LawReport:
    """Hom(-,Y) is a contravariant functor and Hom(-,-) a bifunctor.

    ``only`` restricts to a subset of the law names.
    """
    C, bp = ccc.C, ccc.products
    rep = SelectiveReport(name, only)
    objects = list(objects)
    for Y in objects:
        for X in objects:
            rep.check(ccc.hom_pre(C.identity(X), Y) == C.identity(ccc.hom_obj(X, Y)),
                      "Hom(Id,Y)=Id", X=X, Y=Y)
            for X2 in objects:
                for a in C.hom(X, X2):
                    ha = ccc.hom_pre(a, Y)
                    # defining square of Hom(a,Y)
                    lhs = C.compose(bp.times(ha, C.identity(X)), ccc.ev(X, Y))
                    rhs = C.compose(bp.times(C.identity(ccc.hom_obj(X2, Y)), a), ccc.ev(X2, Y))
                    rep.check(lhs == rhs, "pre-eval-square", a=a, Y=Y)
                    for X3 in objects:
                        for a2 in C.hom(X2, X3):
                            rep.check(ccc.hom_pre(C.compose(a, a2), Y)
                                      == C.compose(ccc.hom_pre(a2, Y), ha),
                                      "Hom(a;a',Y)=Hom(a',Y);Hom(a,Y)", a=a, a2=a2, Y=Y)
                    for Y2 in objects:
                        for b in C.hom(Y, Y2):
                            lhs = C.compose(ccc.hom_post(X2, b), ccc.hom_pre(a, Y2))
                            rhs = C.compose(ha, ccc.hom_post(X, b))
                            rep.check(lhs == rhs, "bifunctor-square", a=a, b=b)
    return rep


def check_adj_laws(ccc: CartesianClosed, objects, name="adj-laws") -> LawReport:
    """Three compatibilities of adj with post-, pre- and W-composition."""
    C, bp = ccc.C, ccc.products
    rep = LawReport(name)
    objects = list(objects)
    for W in objects:
        for X in objects:
            for Y in objects:
                H = ccc.hom_obj(X, Y)
                for r in C.hom(W, H):
                    ar = ccc.adj(r, X, Y)
                    for Y2 in objects:
                        for b in C.hom(Y, Y2):
                            lhs = ccc.adj(C.compose(r, ccc.hom_post(X, b)), X, Y2)
                            rep.check(lhs == C.compose(ar, b), "adj(r;Hom(X,b))=adj(r);b", r=r, b=b)
                    for X0 in objects:
                        for a in C.hom(X0, X):
                            lhs = ccc.adj(C.compose(r, ccc.hom_pre(a, Y)), X0, Y)
                            rhs = C.compose(bp.times(C.identity(W), a), ar)
                            rep.check(lhs == rhs, "adj(r;Hom(a,Y))=(Id x a);adj(r)", r=r, a=a)
                    for W0 in objects:
                        for c in C.hom(W0, W):
                            lhs = ccc.adj(C.compose(c, r), X, Y)
                            rhs = C.compose(bp.times(c, C.identity(X)), ar)
                            rep.check(lhs == rhs, "adj(c;r)=(c x Id);adj(r)", r=r, c=c)
    return rep


# ---------------------------------------------------------------- slices

@dataclass(frozen=True)
class SliceObj:
    X: object
    f: object

    def __repr__(self):
        return f"({self.X!r},{self.f!r})"


@dataclass(frozen=True)
class SliceMor:
    a: object
    src: SliceObj
    tgt: SliceObj

    def __repr__(self):
        return f"{self.a!r}^{self.tgt.f!r}"


class SliceCategory(Category):
    """C/Z. Morphisms (X,f) -> (Y,g) are a : X -> Y with a;g = f."""

    def __init__(self, C: Category, Z, base_objects=None):
        self.C, self.Z = C, Z
        self.base_objects = list(C.objects() if base_objects is None else base_objects)
        self.name = f"{C.name}/{Z!r}"

    def objects(self):
        return [SliceObj(X, f) for X in self.base_objects for f in self.C.hom(X, self.Z)]

    def hom(self, A, B):
        fast = getattr(self.C, "slice_hom", None)
        if fast is not None:
            return [SliceMor(a, A, B) for a in fast(A.X, A.f, B.X, B.f)]
        return [SliceMor(a, A, B) for a in self.C.hom(A.X, B.X) if self.C.compose(a, B.f) == A.f]

    def hom_size(self, A, B):
        return len(self.hom(A, B))

    def dom(self, m):
        return m.src

    def cod(self, m):
        return m.tgt

    def identity(self, A):
        return SliceMor(self.C.identity(A.X), A, A)

    def _compose(self, m, n):
        return SliceMor(self.C.compose(m.a, n.a), m.src, n.tgt)

    def lift(self, a, A, B):
        if self.C.compose(a, B.f) != A.f:
            raise CategoryError(f"{a!r} is not over {self.Z!r}")
        return SliceMor(a, A, B)

    def find_mediators(self, l1, l2, h, k, limit=2):
        ms = self.C.find_mediators(l1.a, l2.a, h.a, k.a, limit=limit)
        W, P = h.src, l1.src
        return [SliceMor(m, W, P) for m in ms]


class SliceProducts(BinaryProducts):
    """Binary products in C/Z from a pullback structure on C."""

    def __init__(self, S: SliceCategory, pullbacks: PullbackStructure):
        super().__init__(S)
        self.pullbacks = pullbacks
        self._cache = {}

    def product(self, A, B):
        key = (A, B)
        if key not in self._cache:
            C = self.C.C
            sq = self.pullbacks.square(A.f, B.f)
            P = SliceObj(sq.apex, C.compose(sq.pr1, A.f))
            self._cache[key] = ProductDiagram(P, SliceMor(sq.pr1, P, A), SliceMor(sq.pr2, P, B))
        return self._cache[key]

    def pair(self, a, b):
        sq = self.pullbacks.square(a.tgt.f, b.tgt.f)
        m = self.pullbacks.pair(a.tgt.f, b.tgt.f, a.a, b.a)
        return SliceMor(m, a.src, self.product(a.tgt, b.tgt).apex)


class Lcc:
    """A chosen ccc structure on every slice C/Z."""

    def __init__(self, C: Category, pullbacks: PullbackStructure, base_objects=None):
        self.C = C
        self.pullbacks = pullbacks
        self.base_objects = base_objects
        self._slices = {}

    def slice(self, Z) -> SliceCategory:
        if Z not in self._slices:
            self._slices[Z] = SliceCategory(self.C, Z, self.base_objects)
        return self._slices[Z]

    def slice_ccc(self, Z) -> CartesianClosed:
        raise NotImplementedError

    # notation
    def times_Z(self, Z, A, B) -> SliceObj:
        return self.slice_ccc(Z).products.product(A, B).apex

    def hom_Z(self, Z, A, B) -> SliceObj:
        return self.slice_ccc(Z).hom_obj(A, B)


def check_lcc(lcc: Lcc, Zs, base_objects=None, name="lcc") -> LawReport:
    rep = LawReport(name)
    for Z in Zs:
        S = lcc.slice(Z)
        objs = [SliceObj(X, f) for X in (base_objects or S.base_objects) for f in lcc.C.hom(X, Z)]
        ccc = lcc.slice_ccc(Z)
        rep.merge(check_binary_products(S, ccc.products, objs))
        rep.merge(check_ccc(ccc, objs))
    return rep


def pullback_slice_equiv(C, sq: PullbackSquare, probes):
    """(is pullback in C, is binary product in C/Z) for a commuting square.

    The two verdicts are computed independently: the first by the universal
    property of the square in C, the second by the universal property of the
    product diagram in the slice over the common codomain.
    """
    Z = C.cod(sq.f)
    pb = is_pullback(C, sq, probes)
    S = SliceCategory(C, Z, probes)
    A, B = SliceObj(C.dom(sq.f), sq.f), SliceObj(C.dom(sq.g), sq.g)
    P = SliceObj(sq.apex, C.compose(sq.pr1, sq.f))
    d = ProductDiagram(P, SliceMor(sq.pr1, P, A), SliceMor(sq.pr2, P, B))
    slice_probes = [SliceObj(W, w) for W in probes for w in C.hom(W, Z)]
    rep = LawReport("scratch")
    product_universal(S, d, slice_probes, rep)
    return pb, rep.ok


def check_pullback_slice_equiv(C, squares, probes, name="pullback-iff-slice-product"):
    rep = LawReport(name)
    agree_pb = 0
    for sq in squares:
        a, b = pullback_slice_equiv(C, sq, probes)
        agree_pb += a
        rep.check(a == b, "verdicts-agree", square=sq, pullback=a, slice_product=b)
    rep.pullbacks_seen = agree_pb
    return rep


def commuting_squares(C, objects, apexes=None):
    """All commuting squares over cospans in scope with apex in ``apexes``."""
    objects = list(objects)
    apexes = objects if apexes is None else list(apexes)
    for f, g in cospans(C, objects):
        X, Y = C.dom(f), C.dom(g)
        for P in apexes:
            for l1 in C.hom(P, X):
                fl = C.compose(l1, f)
                for l2 in C.hom(P, Y):
                    if C.compose(l2, g) == fl:
                        yield PullbackSquare(P, l1, l2, f, g)


def slice_times(S: SliceCategory, bp: BinaryProducts, a, b):
    """a^f x_Z b^g."""
    return bp.times(a, b)


def check_slice_product_functor(S: SliceCategory, bp: BinaryProducts, objects,
                                name="slice-product-functor") -> LawReport:
    rep = LawReport(name)
    objects = list(objects)
    for A in objects:
        for B in objects:
            rep.check(bp.times(S.identity(A), S.identity(B)) == S.identity(bp.product(A, B).apex),
                      "Id x Id = Id", A=A, B=B)
    homs = {(A, B): S.hom(A, B) for A in objects for B in objects}
    for (A, A2), as_ in homs.items():
        for (B, B2), bs in homs.items():
            for a, b in product(as_, bs):
                ab = bp.times(a, b)
                for A3 in objects:
                    for B3 in objects:
                        for a2 in homs[(A2, A3)]:
                            for b2 in homs[(B2, B3)]:
                                lhs = bp.times(S.compose(a, a2), S.compose(b, b2))
                                rep.check(lhs == S.compose(ab, bp.times(a2, b2)), "composition",
                                          a=a, b=b, a2=a2, b2=b2)
    return rep


# ---------------------------------------------------------------- the two F structures

def make_str_variants(bound=3):
    """Two pullback structures on finite sets {0..n-1} that differ only at (Id_2, Id_2).

    Returns (F, str_1, str_sigma) where F is the skeletal category of finite
    sets and str_sigma uses the swap sigma on both legs of that one square.
    """
    from .finset import SkeletalFinSet, SkeletalPullbacks, SigmaPullbacks
    F = SkeletalFinSet(bound)
    return F, SkeletalPullbacks(F), SigmaPullbacks(F)


def str_differences(F, s1, s2, objects):
    out = []
    for f, g in cospans(F, objects):
        a, b = s1.square(f, g), s2.square(f, g)
        if a != b:
            out.append((f, g))
    return out
