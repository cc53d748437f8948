"""Finite category kernel: categories, functors, presheaves and law checks.

Composition is diagrammatic everywhere: ``compose(f, g)`` means f first,
then g. Presheaves are contravariant, so
``G.restrict(compose(f, g), x) == G.restrict(f, G.restrict(g, x))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable


class CategoryError(Exception):
    pass


class CompositionError(CategoryError):
    pass


class TruncationError(CategoryError):
    """Raised when a construction would leave the configured truncation bound."""


class NotInvertible(CategoryError):
    def __init__(self, where, msg="component is not invertible"):
        super().__init__(f"{msg} at {where!r}")
        self.where = where


# ---------------------------------------------------------------- reports

MAX_WITNESSES = 8


@dataclass
class Violation:
    law: str
    witness: dict

    def as_dict(self):
        return {"law": self.law, **{k: render(v) for k, v in self.witness.items()}}


@dataclass
class LawReport:
    """Accumulates instance counts and counterexamples for one named check."""

    name: str
    instances: int = 0
    failures: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def check(self, cond: bool, law: str, **witness) -> bool:
        self.instances += 1
        if not cond:
            self.fail(law, **witness)
        return cond

    def fail(self, law: str, **witness):
        self.failures += 1
        if len(self.violations) < MAX_WITNESSES:
            self.violations.append(Violation(law, witness))

    def merge(self, other: "LawReport") -> "LawReport":
        self.instances += other.instances
        self.failures += other.failures
        room = MAX_WITNESSES - len(self.violations)
        self.violations.extend(other.violations[:max(room, 0)])
        return self

    def first(self):
        return self.violations[0] if self.violations else None

    def __repr__(self):
        return f"LawReport({self.name!r}, instances={self.instances}, failures={self.failures})"


class SelectiveReport(LawReport):
    """A report that only records the laws named in ``only`` (all if None)."""

    def __init__(self, name, only=None):
        super().__init__(name)
        self._only = None if only is None else set(only)

    def check(self, cond, law, **witness):
        if self._only is not None and law not in self._only:
            return True
        return super().check(cond, law, **witness)


def render(v: Any) -> Any:
    """Deterministic JSON-friendly rendering of witnesses."""
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    if isinstance(v, (list, tuple)) and not hasattr(v, "_fields"):
        return [render(x) for x in v]
    if isinstance(v, dict):
        return {str(k): render(x) for k, x in v.items()}
    return repr(v)


# ---------------------------------------------------------------- categories

class Category:
    """Abstract finite (or finitely enumerable) category.

    Subclasses provide ``objects``, ``hom``, ``dom``, ``cod``, ``identity`` and
    ``_compose``. ``objects()`` enumerates the bounded default scope; a
    category may accept more objects than it enumerates.
    """

    name = "category"

    def objects(self) -> Iterable:
        raise NotImplementedError

    def hom(self, X, Y) -> Iterable:
        raise NotImplementedError

    def dom(self, f):
        raise NotImplementedError

    def cod(self, f):
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def _compose(self, f, g):
        raise NotImplementedError

    def compose(self, *fs):
        if not fs:
            raise CompositionError("empty composite")
        out = fs[0]
        for g in fs[1:]:
            if self.cod(out) != self.dom(g):
                raise CompositionError(f"cod({out!r}) != dom({g!r})")
            out = self._compose(out, g)
        return out

    def morphisms(self, objects=None):
        objs = list(self.objects() if objects is None else objects)
        for X in objs:
            for Y in objs:
                yield from self.hom(X, Y)

    def equal(self, f, g) -> bool:
        return f == g

    def find_mediators(self, l1, l2, h, k, limit=2):
        """Morphisms m with m;l1 = h and m;l2 = k, at most ``limit`` of them."""
        out = []
        for m in self.hom(self.dom(h), self.dom(l1)):
            if self.compose(m, l1) == h and self.compose(m, l2) == k:
                out.append(m)
                if len(out) >= limit:
                    break
        return out

    def mediate(self, l1, l2, h, k):
        ms = self.find_mediators(l1, l2, h, k, limit=2)
        if len(ms) != 1:
            raise CategoryError(f"expected a unique mediator, found {len(ms)}")
        return ms[0]

    def inverse(self, f):
        """Two-sided inverse of f, or None."""
        X, Y = self.dom(f), self.cod(f)
        idX, idY = self.identity(X), self.identity(Y)
        for g in self.hom(Y, X):
            if self.compose(f, g) == idX and self.compose(g, f) == idY:
                return g
        return None

    def hom_size(self, X, Y) -> int:
        return sum(1 for _ in self.hom(X, Y))

    def __repr__(self):
        return self.name


class TableCategory(Category):
    """A category given by explicit finite tables.

    ``composition`` maps (f, g) to f;g for every composable pair. Use
    :func:`complete_identities` to add the identity rows.
    """

    def __init__(self, name, objects, morphisms, identities, composition):
        self.name = name
        self._objects = tuple(objects)
        self._mor = dict(morphisms)           # id -> (dom, cod)
        self._ids = dict(identities)          # object -> id
        self._comp = dict(composition)        # (f, g) -> h
        self._hom = {}
        for m, (a, b) in self._mor.items():
            self._hom.setdefault((a, b), []).append(m)
        for v in self._hom.values():
            v.sort(key=str)

    def objects(self):
        return self._objects

    def hom(self, X, Y):
        return tuple(self._hom.get((X, Y), ()))

    def dom(self, f):
        return self._mor[f][0]

    def cod(self, f):
        return self._mor[f][1]

    def identity(self, X):
        return self._ids[X]

    def _compose(self, f, g):
        try:
            return self._comp[(f, g)]
        except KeyError:
            raise CompositionError(f"composition table has no entry for ({f}, {g})") from None

    def table(self):
        return dict(self._comp)

    def with_composition(self, f, g, h) -> "TableCategory":
        comp = dict(self._comp)
        comp[(f, g)] = h
        return TableCategory(self.name, self._objects, self._mor, self._ids, comp)


def complete_identities(morphisms, identities, composition):
    comp = dict(composition)
    for m, (a, b) in morphisms.items():
        comp.setdefault((identities[a], m), m)
        comp.setdefault((m, identities[b]), m)
    return comp


def check_category(C: Category, objects=None, name="category-laws") -> LawReport:
    """Identity and associativity laws over every composable triple in scope."""
    rep = LawReport(name)
    objs = list(C.objects() if objects is None else objects)
    homs = {(X, Y): list(C.hom(X, Y)) for X in objs for Y in objs}
    for X in objs:
        i = C.identity(X)
        rep.check(C.dom(i) == X and C.cod(i) == X, "identity-typing", object=X)
    for (X, Y), fs in homs.items():
        for f in fs:
            rep.check(C.dom(f) == X and C.cod(f) == Y, "hom-typing", morphism=f)
            for law, lhs in (("left-unit", (C.identity(X), f)), ("right-unit", (f, C.identity(Y)))):
                try:
                    ok = C.compose(*lhs) == f
                except CategoryError:
                    ok = False
                rep.check(ok, law, morphism=f)
    for X in objs:
        for Y in objs:
            for Z in objs:
                for W in objs:
                    for f, g, h in product(homs[(X, Y)], homs[(Y, Z)], homs[(Z, W)]):
                        try:
                            ok = C.compose(C.compose(f, g), h) == C.compose(f, C.compose(g, h))
                        except CategoryError:
                            ok = False
                        rep.check(ok, "associativity", f=f, g=g, h=h)
    return rep


# ---------------------------------------------------------------- functors

class Functor:
    def __init__(self, source: Category, target: Category, on_objects, on_morphisms, name="F"):
        self.source, self.target = source, target
        self._ob, self._mor = on_objects, on_morphisms
        self.name = name

    def ob(self, X):
        return self._ob(X)

    def mor(self, f):
        return self._mor(f)

    def __call__(self, x, *, morphism=False):
        return self._mor(x) if morphism else self._ob(x)

    def __repr__(self):
        return f"Functor({self.name})"


def identity_functor(C: Category) -> Functor:
    return Functor(C, C, lambda X: X, lambda f: f, name=f"Id_{C.name}")


def compose_functors(F: Functor, G: Functor) -> Functor:
    """F first, then G."""
    return Functor(F.source, G.target, lambda X: G.ob(F.ob(X)), lambda f: G.mor(F.mor(f)),
                   name=f"{F.name};{G.name}")


def check_functor(F: Functor, objects=None, name="functor-laws") -> LawReport:
    rep = LawReport(name)
    C, D = F.source, F.target
    objs = list(C.objects() if objects is None else objects)
    homs = {(X, Y): list(C.hom(X, Y)) for X in objs for Y in objs}
    for X in objs:
        rep.check(F.mor(C.identity(X)) == D.identity(F.ob(X)), "preserves-identity", object=X)
    for (X, Y), fs in homs.items():
        for f in fs:
            Ff = F.mor(f)
            rep.check(D.dom(Ff) == F.ob(X) and D.cod(Ff) == F.ob(Y), "typing", morphism=f)
            for Z in objs:
                for g in homs[(Y, Z)]:
                    rep.check(F.mor(C.compose(f, g)) == D.compose(Ff, F.mor(g)),
                              "preserves-composition", f=f, g=g)
    return rep


class NatTrans:
    """Natural transformation F => G given by components X -> (F X -> G X)."""

    def __init__(self, source: Functor, target: Functor, component, name="t"):
        self.source, self.target = source, target
        self._component = component
        self.name = name

    def __getitem__(self, X):
        return self._component(X)


def check_nat_trans(t: NatTrans, objects=None, name="naturality") -> LawReport:
    rep = LawReport(name)
    F, G = t.source, t.target
    C, D = F.source, F.target
    objs = list(C.objects() if objects is None else objects)
    for X in objs:
        for Y in objs:
            for f in C.hom(X, Y):
                rep.check(D.compose(F.mor(f), t[Y]) == D.compose(t[X], G.mor(f)),
                          "naturality-square", morphism=f)
    return rep


def nat_iso_inverse(t: NatTrans, objects=None) -> NatTrans:
    """Componentwise inverse; raises NotInvertible naming the first bad object."""
    D = t.source.target
    objs = list(t.source.source.objects() if objects is None else objects)
    inv = {}
    for X in objs:
        g = D.inverse(t[X])
        if g is None:
            raise NotInvertible(X)
        inv[X] = g

    def component(X):
        if X not in inv:
            g = D.inverse(t[X])
            if g is None:
                raise NotInvertible(X)
            inv[X] = g
        return inv[X]

    return NatTrans(t.target, t.source, component, name=f"{t.name}^-1")


# ---------------------------------------------------------------- presheaves

class Presheaf:
    """Contravariant Set-valued functor on ``base``.

    ``at(X)`` returns the elements over X in a fixed deterministic order,
    ``restrict(f, x)`` sends x in G(cod f) to G(f)(x) in G(dom f).
    """

    def __init__(self, base: Category, at: Callable, restrict: Callable, name="G",
                 contains: Callable | None = None):
        self.base = base
        self._at = at
        self._restrict = restrict
        self._contains = contains
        self._cache = {}
        self._sets = {}
        self.name = name

    def at(self, X) -> tuple:
        try:
            return self._cache[X]
        except KeyError:
            v = tuple(self._at(X))
            self._cache[X] = v
            return v

    def elements(self, X) -> frozenset:
        try:
            return self._sets[X]
        except KeyError:
            s = frozenset(self.at(X))
            self._sets[X] = s
            return s

    def contains(self, X, x) -> bool:
        if self._contains is not None:
            return self._contains(X, x)
        return x in self.elements(X)

    def restrict(self, f, x):
        return self._restrict(f, x)

    def __repr__(self):
        return f"Presheaf({self.name})"


class PresheafMorphism:
    """Family of functions r_X : G(X) -> G'(X)."""

    def __init__(self, source: Presheaf, target: Presheaf, component: Callable, name="r"):
        self.source, self.target = source, target
        self._component = component
        self.name = name

    def __call__(self, X, x):
        return self._component(X, x)

    def __repr__(self):
        return f"PresheafMorphism({self.name})"


def check_presheaf(G: Presheaf, objects=None, name="presheaf-laws") -> LawReport:
    rep = LawReport(name)
    C = G.base
    objs = list(C.objects() if objects is None else objects)
    homs = {(X, Y): list(C.hom(X, Y)) for X in objs for Y in objs}
    for X in objs:
        i = C.identity(X)
        for x in G.at(X):
            rep.check(G.restrict(i, x) == x, "identity", object=X, element=x)
    for (X, Y), fs in homs.items():
        for f in fs:
            for x in G.at(Y):
                y = G.restrict(f, x)
                if not rep.check(G.contains(X, y), "typing", morphism=f, element=x):
                    continue
                for W in objs:
                    for e in homs[(W, X)]:
                        rep.check(G.restrict(C.compose(e, f), x) == G.restrict(e, y),
                                  "composition", f=e, g=f, element=x)
    return rep


def check_presheaf_morphism(r: PresheafMorphism, objects=None, name="presheaf-naturality") -> LawReport:
    rep = LawReport(name)
    G, H = r.source, r.target
    C = G.base
    objs = list(C.objects() if objects is None else objects)
    for X in objs:
        for x in G.at(X):
            rep.check(H.contains(X, r(X, x)), "typing", object=X, element=x)
    for X in objs:
        for Y in objs:
            for f in C.hom(X, Y):
                for x in G.at(Y):
                    rep.check(H.restrict(f, r(Y, x)) == r(X, G.restrict(f, x)),
                              "naturality", morphism=f, element=x)
    return rep


def pm_identity(G: Presheaf) -> PresheafMorphism:
    return PresheafMorphism(G, G, lambda X, x: x, name=f"Id_{G.name}")


def pm_compose(*rs: PresheafMorphism) -> PresheafMorphism:
    """Diagrammatic composite of presheaf morphisms."""
    def component(X, x):
        for r in rs:
            x = r(X, x)
        return x
    return PresheafMorphism(rs[0].source, rs[-1].target, component,
                            name=";".join(r.name for r in rs))


def pm_equal(r1: PresheafMorphism, r2: PresheafMorphism, objects, rep: LawReport | None = None,
             law="equal-components") -> LawReport:
    rep = rep or LawReport(law)
    for X in objects:
        for x in r1.source.at(X):
            a, b = r1(X, x), r2(X, x)
            rep.check(a == b, law, object=X, element=x, left=a, right=b)
    return rep


def invert_presheaf_morphism(r: PresheafMorphism, objects=None) -> PresheafMorphism:
    """Inverse computed by tabulating each component (bijection required)."""
    tables = {}

    def table(X):
        if X not in tables:
            src, tgt = r.source.at(X), r.target.at(X)
            inv = {}
            for x in src:
                y = r(X, x)
                if y in inv:
                    raise NotInvertible(X, "component is not injective")
                inv[y] = x
            if len(inv) != len(tgt):
                raise NotInvertible(X, "component is not surjective")
            tables[X] = inv
        return tables[X]

    for X in objects or ():
        table(X)
    return PresheafMorphism(r.target, r.source, lambda X, y: table(X)[y], name=f"{r.name}^-1")


def yoneda(C: Category, Y) -> Presheaf:
    """Yo(Y) = hom(-, Y); restriction is precomposition."""
    return Presheaf(C, lambda X: C.hom(X, Y), lambda f, x: C.compose(f, x), name=f"Yo({Y!r})",
                    contains=lambda X, x: C.dom(x) == X and C.cod(x) == Y)


def yoneda_on_morphism(C: Category, g) -> PresheafMorphism:
    Y, Y2 = C.dom(g), C.cod(g)
    return PresheafMorphism(yoneda(C, Y), yoneda(C, Y2), lambda X, x: C.compose(x, g),
                            name=f"Yo({g!r})")


def precompose(F: Functor, G: Presheaf) -> Presheaf:
    """F°G = G composed with F^op, a presheaf on F.source."""
    return Presheaf(F.source, lambda X: G.at(F.ob(X)), lambda f, x: G.restrict(F.mor(f), x),
                    name=f"{F.name}°{G.name}",
                    contains=lambda X, x: G.contains(F.ob(X), x))


def precompose_morphism(F: Functor, r: PresheafMorphism, source=None, target=None) -> PresheafMorphism:
    src = source or precompose(F, r.source)
    tgt = target or precompose(F, r.target)
    return PresheafMorphism(src, tgt, lambda X, x: r(F.ob(X), x), name=f"{F.name}°{r.name}")
