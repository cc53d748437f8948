"""Finite sets and functions, with canonical limits, internal homs and universes.

Objects are content-addressed: an :class:`FSet` is determined by its sorted
tuple of atoms, so the same recipe always produces the same object.
"""
from __future__ import annotations

from itertools import product

from .category import Category, CategoryError, CompositionError
from .limits import (BinaryProducts, CartesianClosed, Lcc, ProductDiagram, PullbackSquare,
                     PullbackStructure, SliceCategory, SliceMor, SliceObj, SliceProducts)
from .universe import Comprehension, Universe


class BoundExceeded(CategoryError):
    pass


def akey(a):
    """Total order on atoms (ints, strings, tuples, functions, sets)."""
    if isinstance(a, bool):
        return (0, int(a))
    if isinstance(a, int):
        return (0, a)
    if isinstance(a, str):
        return (1, a)
    if isinstance(a, tuple):
        return (2, tuple(akey(x) for x in a))
    if isinstance(a, Fn):
        return (3, akey(a.dom.elems), akey(a.cod.elems), akey(a.table))
    if isinstance(a, FSet):
        return (4, akey(a.elems))
    return (5, repr(a))


class FSet:
    __slots__ = ("elems", "index", "_hash")
    _interned: dict = {}

    def __new__(cls, elems=(), presorted=False):
        if not presorted:
            elems = tuple(sorted(set(elems), key=akey))
        else:
            elems = tuple(elems)
        hit = cls._interned.get(elems)
        if hit is not None:
            return hit
        self = object.__new__(cls)
        self.elems = elems
        self.index = {x: i for i, x in enumerate(elems)}
        if len(self.index) != len(elems):
            raise CategoryError("duplicate atoms in presorted set")
        self._hash = hash(("FSet", elems))
        cls._interned[elems] = self
        return self

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x):
        return x in self.index

    def __eq__(self, other):
        return self is other or (isinstance(other, FSet) and self.elems == other.elems)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (FSet, (self.elems, True))

    def __repr__(self):
        if self.elems == tuple(range(len(self.elems))):
            return f"[{len(self.elems)}]"
        shown = ",".join(repr(x) for x in self.elems[:6])
        more = f",...+{len(self.elems) - 6}" if len(self.elems) > 6 else ""
        return "{" + shown + more + "}"


class Fn:
    """A function between finite sets, stored as a table aligned with dom.elems."""

    __slots__ = ("dom", "cod", "table", "_hash")

    def __init__(self, dom: FSet, cod: FSet, table):
        self.dom, self.cod, self.table = dom, cod, tuple(table)
        self._hash = hash((dom, cod, self.table))

    def __call__(self, x):
        return self.table[self.dom.index[x]]

    def __eq__(self, other):
        return self is other or (isinstance(other, Fn) and self._hash == other._hash
                                 and self.table == other.table and self.dom == other.dom
                                 and self.cod == other.cod)

    def __hash__(self):
        return self._hash

    def items(self):
        return zip(self.dom.elems, self.table)

    def __repr__(self):
        if self.dom.elems == tuple(range(len(self.dom))):
            return f"<{','.join(repr(y) for y in self.table)}>"
        return "<" + ",".join(f"{x!r}:{y!r}" for x, y in self.items()) + ">"


def canonical(n: int) -> FSet:
    return FSet(range(n), presorted=True)


class FinSet(Category):
    """Finite sets and functions; ``objects()`` lists {0..k-1} for k <= K.

    Derived objects (products, internal homs, comprehensions) may be larger
    than K; they are allowed up to ``max_card`` and recorded in ``oversize``.
    """

    def __init__(self, K=2, max_card=1 << 16, name=None):
        self.K = K
        self.max_card = max_card
        self.name = name or f"FS{K}"
        self.oversize = set()
        self.terminal = canonical(1)

    def objects(self):
        return [canonical(k) for k in range(self.K + 1)]

    def make(self, elems, presorted=False) -> FSet:
        S = FSet(elems, presorted)
        if len(S) > self.max_card:
            raise BoundExceeded(f"derived set of size {len(S)} exceeds {self.max_card}")
        if len(S) > self.K:
            self.oversize.add(len(S))
        return S

    def fn(self, dom, cod, f) -> Fn:
        if callable(f):
            table = tuple(f(x) for x in dom.elems)
        elif isinstance(f, dict):
            table = tuple(f[x] for x in dom.elems)
        else:
            table = tuple(f)
        return Fn(dom, cod, table)

    def hom(self, X, Y):
        if len(Y) ** len(X) > self.max_card * 16:
            raise BoundExceeded(f"hom({len(X)},{len(Y)}) too large to enumerate")
        return [Fn(X, Y, t) for t in product(Y.elems, repeat=len(X))]

    def hom_size(self, X, Y):
        return len(Y) ** len(X)

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def identity(self, X):
        return Fn(X, X, X.elems)

    def _compose(self, f, g):
        gi, gt = g.dom.index, g.table
        return Fn(f.dom, g.cod, tuple(gt[gi[y]] for y in f.table))

    def compose(self, *fs):
        out = fs[0]
        for g in fs[1:]:
            if out.cod is not g.dom and out.cod != g.dom:
                raise CompositionError(f"cod({out!r}) != dom({g!r})")
            out = self._compose(out, g)
        return out

    def find_mediators(self, l1, l2, h, k, limit=2):
        P = l1.dom
        by = {}
        for z, a, b in zip(P.elems, l1.table, l2.table):
            by.setdefault((a, b), []).append(z)
        cands = [by.get((a, b), ()) for a, b in zip(h.table, k.table)]
        if any(len(c) == 0 for c in cands):
            return []
        W = h.dom
        first = Fn(W, P, tuple(c[0] for c in cands))
        if all(len(c) == 1 for c in cands):
            return [first]
        out = [first]
        if limit > 1:
            i = next(i for i, c in enumerate(cands) if len(c) > 1)
            t = list(first.table)
            t[i] = cands[i][1]
            out.append(Fn(W, P, tuple(t)))
        return out

    def inverse(self, f):
        if len(f.dom) != len(f.cod) or len(set(f.table)) != len(f.table):
            return None
        inv = {y: x for x, y in f.items()}
        return Fn(f.cod, f.dom, tuple(inv[y] for y in f.cod.elems))

    def sections(self, p):
        """All s : cod p -> dom p with s;p = Id."""
        fib = {b: [] for b in p.cod.elems}
        for e, b in p.items():
            fib[b].append(e)
        for choice in product(*(fib[b] for b in p.cod.elems)):
            yield Fn(p.cod, p.dom, choice)

    def slice_hom(self, X, f, Y, g):
        """a : X -> Y with a;g = f, enumerated fiberwise."""
        fib = {}
        for y, z in g.items():
            fib.setdefault(z, []).append(y)
        opts = [fib.get(z, ()) for z in f.table]
        return [Fn(X, Y, t) for t in product(*opts)]

    def fiber(self, f, z):
        return [x for x, w in f.items() if w == z]


# ---------------------------------------------------------------- canonical structures

class FinSetProducts(BinaryProducts):
    """X x Y = {(x, y)} with the two coordinate projections."""

    def __init__(self, C: FinSet):
        super().__init__(C)
        self._cache = {}

    def product(self, X, Y):
        key = (X, Y)
        d = self._cache.get(key)
        if d is None:
            P = self.C.make(((x, y) for x in X.elems for y in Y.elems))
            d = ProductDiagram(P, Fn(P, X, (e[0] for e in P.elems)), Fn(P, Y, (e[1] for e in P.elems)))
            self._cache[key] = d
        return d

    def pair(self, a, b):
        P = self.product(a.cod, b.cod).apex
        return Fn(a.dom, P, tuple(zip(a.table, b.table)))

    def times(self, a, b):
        P = self.product(a.dom, b.dom).apex
        Q = self.product(a.cod, b.cod).apex
        return Fn(P, Q, tuple((a(x), b(y)) for x, y in P.elems))


class SwappedProducts(BinaryProducts):
    """X x Y = {(y, x)}: a second product structure, isomorphic by the swap."""

    def __init__(self, C: FinSet):
        super().__init__(C)
        self._cache = {}

    def product(self, X, Y):
        key = (X, Y)
        d = self._cache.get(key)
        if d is None:
            P = self.C.make(((y, x) for x in X.elems for y in Y.elems))
            d = ProductDiagram(P, Fn(P, X, (e[1] for e in P.elems)), Fn(P, Y, (e[0] for e in P.elems)))
            self._cache[key] = d
        return d


class FinSetPullbacks(PullbackStructure):
    def __init__(self, C: FinSet):
        super().__init__(C)
        self._cache = {}

    def square(self, f, g):
        key = (f, g)
        sq = self._cache.get(key)
        if sq is None:
            if f.cod != g.cod:
                raise CategoryError("not a cospan")
            P = self.C.make(((x, y) for x, a in f.items() for y, b in g.items() if a == b))
            sq = PullbackSquare(P, Fn(P, f.dom, (e[0] for e in P.elems)),
                                Fn(P, g.dom, (e[1] for e in P.elems)), f, g)
            self._cache[key] = sq
        return sq

    def pair(self, f, g, h, k):
        P = self.square(f, g).apex
        return Fn(h.dom, P, tuple(zip(h.table, k.table)))


class FinSetCcc(CartesianClosed):
    """Hom(X,Y) is the set of image tuples aligned with X."""

    def __init__(self, C: FinSet, products: FinSetProducts | None = None):
        super().__init__(C, products or FinSetProducts(C))
        self._hom = {}

    def hom_obj(self, X, Y):
        key = (X, Y)
        H = self._hom.get(key)
        if H is None:
            H = self.C.make(product(Y.elems, repeat=len(X)))
            self._hom[key] = H
        return H

    def ev(self, X, Y):
        H = self.hom_obj(X, Y)
        P = self.products.product(H, X).apex
        return Fn(P, Y, tuple(t[X.index[x]] for t, x in P.elems))

    def hom_post(self, X, b):
        H, H2 = self.hom_obj(X, b.dom), self.hom_obj(X, b.cod)
        return Fn(H, H2, tuple(tuple(b(y) for y in t) for t in H.elems))

    def adj_inv(self, h, W, X, Y):
        H = self.hom_obj(X, Y)
        return Fn(W, H, tuple(tuple(h((w, x)) for x in X.elems) for w in W.elems))


class FinSetSliceCcc(CartesianClosed):
    """Internal homs in FinSet/Z: Hom_Z(A,B) = {(z, phi) : phi : A_z -> B_z}."""

    def __init__(self, S: SliceCategory, pullbacks: FinSetPullbacks):
        super().__init__(S, SliceProducts(S, pullbacks))
        self.base = S.C
        self._hom = {}

    def _fibers(self, A):
        fib = {z: [] for z in self.C.Z.elems}
        for x, z in A.f.items():
            fib[z].append(x)
        return fib

    def hom_obj(self, A, B):
        key = (A, B)
        H = self._hom.get(key)
        if H is None:
            fa, fb = self._fibers(A), self._fibers(B)
            elems = [(z, phi) for z in self.C.Z.elems for phi in product(fb[z], repeat=len(fa[z]))]
            Hx = self.base.make(elems)
            H = SliceObj(Hx, Fn(Hx, self.C.Z, (e[0] for e in Hx.elems)))
            self._hom[key] = H
        return H

    def ev(self, A, B):
        H = self.hom_obj(A, B)
        d = self.products.product(H, A)
        fa = self._fibers(A)
        pos = {x: fa[z].index(x) for z in fa for x in fa[z]}
        table = tuple(phi[pos[x]] for (z, phi), x in d.apex.X.elems)
        return SliceMor(Fn(d.apex.X, B.X, table), d.apex, B)

    def hom_post(self, A, b):
        H, H2 = self.hom_obj(A, b.src), self.hom_obj(A, b.tgt)
        table = tuple((z, tuple(b.a(y) for y in phi)) for z, phi in H.X.elems)
        return SliceMor(Fn(H.X, H2.X, table), H, H2)

    def adj_inv(self, h, W, A, B):
        H = self.hom_obj(A, B)
        fa = self._fibers(A)
        table = []
        for w, z in W.f.items():
            table.append((z, tuple(h.a((w, x)) for x in fa[z])))
        return SliceMor(Fn(W.X, H.X, tuple(table)), W, H)


class FinSetLcc(Lcc):
    def __init__(self, C: FinSet, pullbacks: FinSetPullbacks | None = None, base_objects=None):
        super().__init__(C, pullbacks or FinSetPullbacks(C), base_objects)
        self._cccs = {}

    def slice_ccc(self, Z):
        if Z not in self._cccs:
            self._cccs[Z] = FinSetSliceCcc(self.slice(Z), self.pullbacks)
        return self._cccs[Z]


def make_finset(K=2, max_card=1 << 16):
    """FinSet with its canonical products, pullbacks, ccc and lcc structures."""
    C = FinSet(K, max_card)
    C.products = FinSetProducts(C)
    C.pullbacks = FinSetPullbacks(C)
    C.ccc = FinSetCcc(C, C.products)
    C.lcc = FinSetLcc(C, C.pullbacks)
    return C


# ---------------------------------------------------------------- coding universe

class CodingUniverse(Universe):
    """U = {0..k-1} codes, El(c) = {0..sizes[c]-1}, Ut = {(c, e)}.

    (X;F) = {(x, e) : e in El(F x)}, p_F is the first projection and
    Q(F)(x, e) = (F x, e).
    """

    def __init__(self, C: FinSet, sizes, name=None):
        self.sizes = tuple(sizes)
        U = canonical(len(self.sizes))
        Ut = FSet(((c, e) for c in range(len(self.sizes)) for e in range(self.sizes[c])))
        p = Fn(Ut, U, (c for c, _ in Ut.elems))
        super().__init__(C, p, name or "U" + "".join(map(str, self.sizes)))
        self._comp = {}

    def comprehension(self, F):
        c = self._comp.get(F)
        if c is None:
            if F.cod != self.U:
                raise CategoryError(f"{F!r} is not a code map")
            sizes = self.sizes
            elems = tuple((x, e) for x, code in F.items() for e in range(sizes[code]))
            E = self.C.make(elems)
            c = Comprehension(E, Fn(E, F.dom, (x for x, _ in E.elems)),
                              Fn(E, self.Ut, ((F(x), e) for x, e in E.elems)))
            self._comp[F] = c
        return c

    def star(self, f, g, F):
        E = self.ext(F)
        table = []
        for x, (c, e) in zip(f.table, g.table):
            if F(x) != c:
                raise CategoryError("star: cone does not commute")
            table.append((x, e))
        return Fn(f.dom, E, tuple(table))

    def Q(self, f, F):
        key = (f, F)
        m = self._Q.get(key)
        if m is None:
            src = self.ext(self.C.compose(f, F))
            m = Fn(src, self.ext(F), tuple((f(x), e) for x, e in src.elems))
            self._Q[key] = m
        return m


def make_universe(C: FinSet, sizes=(0, 1, 2)) -> CodingUniverse:
    if sum(sizes) > C.max_card:
        raise BoundExceeded("universe too large")
    return CodingUniverse(C, sizes)


# ---------------------------------------------------------------- skeletal finite sets

class SFn:
    """A morphism n -> m of the skeletal category: a tuple of images."""

    __slots__ = ("n", "m", "table", "_hash")

    def __init__(self, n, m, table):
        self.n, self.m, self.table = n, m, tuple(table)
        self._hash = hash((n, m, self.table))

    def __eq__(self, other):
        return isinstance(other, SFn) and (self.n, self.m, self.table) == (other.n, other.m, other.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{self.n}->{self.m}<{','.join(map(str, self.table))}>"


class SkeletalFinSet(Category):
    """Objects are naturals n, Mor(n,m) = functions {0..n-1} -> {0..m-1}.

    ``objects()`` stops at ``bound``; larger objects are still accepted
    (pullback apexes may exceed the bound).
    """

    def __init__(self, bound=3):
        self.bound = bound
        self.name = f"F{bound}"

    def objects(self):
        return list(range(self.bound + 1))

    def hom(self, n, m):
        return [SFn(n, m, t) for t in product(range(m), repeat=n)]

    def hom_size(self, n, m):
        return m ** n

    def dom(self, f):
        return f.n

    def cod(self, f):
        return f.m

    def identity(self, n):
        return SFn(n, n, range(n))

    def _compose(self, f, g):
        return SFn(f.n, g.m, (g.table[i] for i in f.table))

    def find_mediators(self, l1, l2, h, k, limit=2):
        by = {}
        for z in range(l1.n):
            by.setdefault((l1.table[z], l2.table[z]), []).append(z)
        cands = [by.get(ab, ()) for ab in zip(h.table, k.table)]
        if any(not c for c in cands):
            return []
        first = SFn(h.n, l1.n, (c[0] for c in cands))
        if all(len(c) == 1 for c in cands) or limit < 2:
            return [first]
        i = next(i for i, c in enumerate(cands) if len(c) > 1)
        t = list(first.table)
        t[i] = cands[i][1]
        return [first, SFn(h.n, l1.n, t)]

    def automorphisms(self):
        """Object-fixing automorphisms by conjugation with permutations of each n.

        Any automorphism of this category fixes objects (hom-set sizes differ)
        and is determined by its action on points 1 -> n, so these exhaust
        the automorphism group of the bounded category.
        """
        from itertools import permutations
        perms = [list(permutations(range(n))) for n in range(self.bound + 1)]
        for choice in product(*perms):
            yield choice

    def conjugate(self, perm, f):
        """Apply the automorphism given by permutations ``perm`` to f."""
        pn = perm[f.n] if f.n < len(perm) else tuple(range(f.n))
        pm = perm[f.m] if f.m < len(perm) else tuple(range(f.m))
        inv = {v: i for i, v in enumerate(pn)}
        return SFn(f.n, f.m, (pm[f.table[inv[i]]] for i in range(f.n)))


class SkeletalPullbacks(PullbackStructure):
    """Pullback apex = number of compatible pairs in lexicographic order."""

    def square(self, f, g):
        if f.m != g.m:
            raise CategoryError("not a cospan")
        pairs = [(x, y) for x in range(f.n) for y in range(g.n) if f.table[x] == g.table[y]]
        k = len(pairs)
        return PullbackSquare(k, SFn(k, f.n, (a for a, _ in pairs)), SFn(k, g.n, (b for _, b in pairs)), f, g)


class SigmaPullbacks(SkeletalPullbacks):
    """Same as the lexicographic structure except at the cospan (Id_2, Id_2),
    whose chosen square has both legs equal to the swap sigma."""

    def square(self, f, g):
        C2 = SFn(2, 2, (0, 1))
        if f == C2 and g == C2:
            s = SFn(2, 2, (1, 0))
            return PullbackSquare(2, s, s, f, g)
        return super().square(f, g)
