"""Turn a parsed document into the objects the checks run on.

Parts are built lazily; ``Model.missing(need)`` says why a part is not
available so that checks depending on it can be skipped with a reason.
Faults from a ``[fault]`` block are applied here, each as a seeded change
to one table entry.
"""
from __future__ import annotations

import random

from .category import Category, PresheafMorphism, TableCategory, render
from .cc import build_cc, u1, u1_inv, u1t, u1t_inv
from .csystem import PatchedCSystem, TableCSystem, boundary
from .finset import (FinSet, SigmaPullbacks, SkeletalFinSet, SkeletalPullbacks, SwappedProducts,
                     make_finset, make_universe)
from .functoriality import identity_ucf, make_inc
from .limits import CartesianClosed, ProductDiagram, PullbackSquare, TableProducts, TablePullbacks
from .universe import Comprehension, TableUniverse

DEFAULT_TRUNCATION = 3


class TableCcc(CartesianClosed):
    def __init__(self, C, products, table):
        super().__init__(C, products)
        self.table = dict(table)

    def hom_obj(self, X, Y):
        return self.table[(X, Y)][0]

    def ev(self, X, Y):
        return self.table[(X, Y)][1]


class MutatedCategory(Category):
    """``base`` with one composition entry overridden."""

    def __init__(self, base, f, g, h):
        self.base, self.entry = base, (f, g, h)
        self.name = getattr(base, "name", "C") + "*"

    def __getattr__(self, name):
        return getattr(self.base, name)

    def objects(self):
        return self.base.objects()

    def hom(self, X, Y):
        return self.base.hom(X, Y)

    def hom_size(self, X, Y):
        return self.base.hom_size(X, Y)

    def dom(self, f):
        return self.base.dom(f)

    def cod(self, f):
        return self.base.cod(f)

    def identity(self, X):
        return self.base.identity(X)

    def compose(self, *fs):
        out = fs[0]
        for g in fs[1:]:
            f, g0, h = self.entry
            out = h if (out, g) == (f, g0) else self.base.compose(out, g)
        return out


def _seeded(seed, items):
    items = sorted(items, key=lambda x: repr(render(x)))
    if not items:
        return None
    return random.Random(seed).choice(items)


def tabulate(r: PresheafMorphism, objects, name=None):
    """A presheaf morphism given by its table on ``objects``."""
    table = {(X, x): r(X, x) for X in objects for x in r.source.at(X)}
    return PresheafMorphism(r.source, r.target, lambda X, x: table[(X, x)], name=name or r.name), table


class Model:
    def __init__(self, doc):
        self.doc = doc
        self._cache = {}
        f = doc.block("fault")
        self.fault = f.get("kind") if f else None
        self.seed = f.get_int("seed", 0) if f else 0
        self.fault_site = None

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    # ---------------------------------------------------------------- what is there

    @property
    def backend(self):
        if "finset" in self.doc:
            return "finset"
        c = self.doc.block("category")
        if c is not None:
            return c.get("kind", "table")
        return None

    def missing(self, need):
        """None if the part ``need`` can be built, else the reason it cannot."""
        d = self.doc
        be = self.backend
        if need == "category":
            return None if be else "document has no [category] or [finset] block"
        if need == "finset":
            return None if be == "finset" else "needs the finite-set backend ([finset] block)"
        if need == "skeletal":
            return None if be == "skeletal" else "needs a skeletal category ([category] kind = skeletal)"
        if need == "products":
            if be == "finset" or "products" in d:
                return None
            return "document has no [products] block"
        if need == "two-products":
            return None if be == "finset" else "needs two product structures (finite-set backend)"
        if need == "pullbacks":
            return None if be in ("finset", "skeletal") or "pullbacks" in d else \
                "document has no [pullbacks] block"
        if need == "ccc":
            if be == "finset" or ("ccc" in d and "products" in d):
                return None
            return "document has no [ccc] block"
        if need == "lcc":
            return None if be == "finset" else "lcc structure needs the finite-set backend"
        if need == "universe":
            return None if "universe" in d and be in ("finset", "table") else \
                "document has no [universe] block"
        if need == "coding":
            return None if be == "finset" and "universe" in d else "needs a coded universe (sizes)"
        if need == "csystem":
            return None if "csystem" in d else "document has no [csystem] block"
        if need == "cc":
            b = d.block("csystem")
            if b is None or b.get("source", "cc") != "cc":
                return "needs [csystem] source = cc"
            return self.missing("universe")
        if need == "ucf":
            return None if "ucf" in d and be == "finset" else "document has no [ucf] block"
        if need == "inclusion":
            b = d.block("ucf")
            if b is None or b.get("kind", "inclusion") != "inclusion" or be != "finset":
                return "needs [ucf] kind = inclusion"
            return None
        raise KeyError(need)

    # ---------------------------------------------------------------- category and structures

    @property
    def C(self):
        return self._memo("C", self._build_category)

    def _base_category(self):
        d, be = self.doc, self.backend
        if be == "finset":
            b = d.block("finset")
            return make_finset(b.get_int("K", 2), b.get_int("max_card", 1 << 16))
        if be == "skeletal":
            C = SkeletalFinSet(d.block("category").get_int("bound", 3))
            return C
        t = d.table
        C = TableCategory(t.name, t.objects, t.morphisms, t.identities, t.composition)
        C.terminal = t.terminal
        return C

    def _build_category(self):
        C = self._base_category()
        if self.fault != "unit-law":
            return C
        # replace Id;f by another morphism for a seeded non-identity f
        objs = list(C.objects())
        cands = [(f, h) for X in objs for Y in objs for f in C.hom(X, Y)
                 for h in C.hom(X, Y) if h != f and f != C.identity(X)]
        f, h = _seeded(self.seed, cands)
        i = C.identity(C.dom(f))
        self.fault_site = {"entry": f"{render(i)};{render(f)}", "was": render(f), "now": render(h)}
        if isinstance(C, TableCategory):
            M = C.with_composition(i, f, h)
            M.terminal = C.terminal
            return M
        M = MutatedCategory(C, i, f, h)
        for attr in ("terminal", "products", "pullbacks", "ccc", "lcc"):
            if hasattr(C, attr):
                setattr(M, attr, getattr(C, attr))
        return M

    @property
    def products(self):
        return self._memo("products", self._build_products)

    def _build_products(self):
        C, b = self.C, self.doc.block("products")
        if self.backend == "finset":
            mode = b.get("mode", "canonical") if b else "canonical"
            return SwappedProducts(C) if mode == "swapped" else C.products
        table = {}
        for e in b.rows("product"):
            X, Y, P, p1, p2 = (t.text for i, t in enumerate(e.args) if i != 2)
            table[(X, Y)] = ProductDiagram(P, p1, p2)
        return TableProducts(C, table)

    @property
    def other_products(self):
        C = self.C
        return C.products if isinstance(self.products, SwappedProducts) else SwappedProducts(C)

    @property
    def pullbacks(self):
        return self._memo("pullbacks", self._build_pullbacks)

    def _build_pullbacks(self):
        C, b = self.C, self.doc.block("pullbacks")
        mode = b.get("mode", "canonical") if b else "canonical"
        if self.backend == "finset":
            return C.pullbacks
        if self.backend == "skeletal":
            return SigmaPullbacks(C) if mode == "sigma" else SkeletalPullbacks(C)
        table = {}
        for e in b.rows("pullback"):
            f, g, P, p1, p2 = (t.text for i, t in enumerate(e.args) if i != 2)
            table[(f, g)] = PullbackSquare(P, p1, p2, f, g)
        return TablePullbacks(C, table)

    @property
    def ccc(self):
        return self._memo("ccc", self._build_ccc)

    def _build_ccc(self):
        C = self.C
        if self.backend == "finset":
            return C.ccc
        table = {}
        for e in self.doc.block("ccc").rows("hom"):
            X, Y, H, ev = (t.text for i, t in enumerate(e.args) if i != 2)
            table[(X, Y)] = (H, ev)
        return TableCcc(C, self.products, table)

    @property
    def lcc(self):
        return self.C.lcc

    # ---------------------------------------------------------------- universe and C-systems

    @property
    def u(self):
        return self._memo("u", self._build_universe)

    def _build_universe(self):
        C, b = self.C, self.doc.block("universe")
        if self.backend == "finset":
            return make_universe(C, tuple(int(x) for x in b.get_list("sizes")))
        table = {}
        for e in b.rows("comprehension"):
            F, E, pF, QF = (t.text for i, t in enumerate(e.args) if i != 1)
            table[F] = Comprehension(E, pF, QF)
        return TableUniverse(C, b.get("p"), table)

    def truncation(self, N=None):
        if N is not None:
            return N
        b = self.doc.block("csystem")
        return b.get_int("truncation", DEFAULT_TRUNCATION) if b else DEFAULT_TRUNCATION

    def default_depth(self):
        b = self.doc.block("csystem")
        return b.get_int("max_card") if b else None

    def cc(self, N=None):
        N = self.truncation(N)
        return self._memo(("cc", N), lambda: build_cc(self.C, self.u, N))

    def csystem(self, N=None):
        """The C-system of the document, with a q-square fault applied if requested."""
        b = self.doc.block("csystem")
        if b.get("source", "cc") == "table":
            return self._memo("table-cs", self._build_table_csystem)
        cs = self.cc(N)
        if self.fault != "q-square":
            return cs
        return self._memo(("patched", cs.N), lambda: self._patch_q(cs))

    def _patch_q(self, cs):
        C = cs.category
        # small contexts keep the candidate list enumerable
        bases = [G for G in cs.upto(cs.N - 1) if len(G.int) <= 2]
        cands = []
        for G in bases:
            for G1 in bases:
                for f in C.hom(G1, G):
                    for T in cs.children(G):
                        fT = cs.base_change(f, T)
                        good = C.compose(cs.proj(fT), f)
                        for q in C.hom(fT, T):
                            if C.compose(q, cs.proj(T)) != good:
                                cands.append((f, T, q))
        f, T, q = _seeded(self.seed, cands)
        self.fault_site = {"f": render(f), "T": render(T), "was": render(cs.q(f, T)),
                           "now": render(q)}
        return PatchedCSystem(cs, {(f, T): q})

    def _build_table_csystem(self):
        b, C = self.doc.block("csystem"), self.C
        lengths, fts, projs, subst, qs = {}, {}, {}, {}, {}
        for e in b.rows("object"):
            X, L, Y, p = (t.text for t in e.args)
            lengths[X], fts[X], projs[X] = int(L), Y, p
        for e in b.rows("subst"):
            f, T, fT, q = (t.text for i, t in enumerate(e.args) if i != 2)
            subst[(f, T)], qs[(f, T)] = fT, q
        pt = b.get("pt") or next(X for X, L in lengths.items() if L == 0)
        return TableCSystem(C, pt, lengths, fts, projs, subst, qs, name=self.doc.table.name)

    # ---------------------------------------------------------------- universe category functors

    @property
    def ucf(self):
        return self._memo("ucf", self._build_ucf)

    def _build_ucf(self):
        b, u = self.doc.block("ucf"), self.u
        if b.get("kind", "inclusion") == "identity":
            return identity_ucf(self.C, u)
        fb = self.doc.block("finset")
        K = fb.get_int("K", 2)
        target = tuple(int(x) for x in b.get_list("target_sizes", list(u.sizes) + [3]))
        if target[:len(u.sizes)] != u.sizes:
            raise ValueError("target_sizes must extend the source sizes")
        fault = "phit" if self.fault == "phit-pullback" else None
        F = make_inc(twist=b.get("twist", "false") == "true", fault=fault, sizes=u.sizes,
                     extra=target[len(u.sizes):], K=K, K2=b.get_int("target_K", K + 1))
        if fault:
            self.fault_site = {"phit": render(F.phit)}
        return F

    # ---------------------------------------------------------------- tabulated maps for faults

    def sig_test_morphisms(self, cs, objects):
        """Presheaf morphisms fed to the Sig functor checks: d_1 then u_1."""
        d1 = boundary(cs, 1)
        rest = [u1(cs)] if hasattr(cs, "int_yo") else []
        if self.fault != "sig-naturality":
            return [d1] + rest
        return [self._mutate(d1, objects, cs, lambda G, x, y: cs.ob_n(G, 1))] + rest

    def u1_maps(self, cs, objects):
        maps = (u1(cs), u1_inv(cs), u1t(cs), u1t_inv(cs))
        if self.fault != "u1-naturality":
            return maps
        a = self._mutate(maps[0], objects, cs, lambda G, x, y: list(cs.C.hom(G.int, cs.u.U)))
        return (a,) + maps[1:]

    def _mutate(self, r, objects, cs, alternatives):
        """Tabulate r on ``objects`` and change one seeded value to a same-typed alternative."""
        t, table = tabulate(r, objects)
        cands = [(k, y) for k, v in table.items() for y in alternatives(k[0], k[1], v) if y != v]
        (k, y) = _seeded(self.seed, cands)
        self.fault_site = {"object": render(k[0]), "element": render(k[1]),
                           "was": render(table[k]), "now": render(y)}
        table[k] = y
        return t
