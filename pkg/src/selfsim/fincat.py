"""Finite categories, set-valued functors and partitions.

Every identifier (object, morphism, element) is a string, and every
enumeration in this package runs in lexicographic order so that results,
witnesses and printed output are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Hashable, Iterable


class UnionFind:
    """Disjoint sets whose root is always the least member.

    >>> uf = UnionFind(["b", "a", "c"])
    >>> uf.union("c", "b"); uf.find("c")
    'b'
    >>> uf.union("b", "a"); uf.find("c")
    'a'
    """

    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        lo, hi = (rx, ry) if rx < ry else (ry, rx)
        self.parent[hi] = lo


@dataclass(frozen=True)
class Partition:
    """A partition of a finite carrier; ``rep`` sends each member to the least member of its class."""

    carrier: tuple
    rep: dict

    @classmethod
    def from_union_find(cls, uf: UnionFind) -> "Partition":
        carrier = tuple(sorted(uf.parent))
        return cls(carrier, {x: uf.find(x) for x in carrier})

    def class_of(self, x):
        return self.rep[x]

    def same(self, x, y) -> bool:
        return self.rep[x] == self.rep[y]

    @cached_property
    def classes(self) -> dict:
        out: dict = {}
        for x in self.carrier:
            out.setdefault(self.rep[x], []).append(x)
        return {r: tuple(ms) for r, ms in sorted(out.items())}

    def __len__(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class FinCategory:
    """A finite category given by explicit tables.

    ``compose[(f, g)]`` is the composite "f then g", i.e. g∘f, defined exactly
    when the codomain of f is the domain of g.
    """

    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    identities: dict[str, str]
    compose: dict[tuple[str, str], str]

    @classmethod
    def build(cls, objects, arrows=None, composites=None, identity_names=None) -> "FinCategory":
        """Assemble a category from its non-identity data.

        ``arrows`` maps morphism ids to ``(dom, cod)``; ``composites`` maps
        ``(f, g)`` to the id of g∘f. Identities are named ``id_<object>``
        unless ``identity_names`` says otherwise, and their composites are
        filled in automatically.
        """
        objects = tuple(sorted(objects))
        identity_names = dict(identity_names or {})
        identities = {a: identity_names.get(a, f"id_{a}") for a in objects}
        morphisms = {identities[a]: (a, a) for a in objects}
        for f, (d, c) in (arrows or {}).items():
            morphisms[f] = (d, c)
        compose = dict(composites or {})
        for f, (d, c) in morphisms.items():
            compose[(identities[d], f)] = f
            compose[(f, identities[c])] = f
        return cls(objects, morphisms, identities, compose)

    def dom(self, f: str) -> str:
        return self.morphisms[f][0]

    def cod(self, f: str) -> str:
        return self.morphisms[f][1]

    def then(self, f: str, g: str) -> str:
        return self.compose[(f, g)]

    def comp(self, g: str, f: str) -> str:
        """g∘f"""
        return self.compose[(f, g)]

    def identity(self, a: str) -> str:
        return self.identities[a]

    def is_identity(self, f: str) -> bool:
        return self.identities.get(self.dom(f)) == f

    @cached_property
    def sorted_morphisms(self) -> tuple[str, ...]:
        return tuple(sorted(self.morphisms))

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict = {(a, b): [] for a in self.objects for b in self.objects}
        for f in self.sorted_morphisms:
            out[self.morphisms[f]].append(f)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._homs[(a, b)]

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        return {a: tuple(f for f in self.sorted_morphisms if self.dom(f) == a) for a in self.objects}

    @cached_property
    def _in(self) -> dict[str, tuple[str, ...]]:
        return {a: tuple(f for f in self.sorted_morphisms if self.cod(f) == a) for a in self.objects}

    def out_of(self, a: str) -> tuple[str, ...]:
        return self._out[a]

    def into(self, b: str) -> tuple[str, ...]:
        return self._in[b]

    def is_iso(self, f: str) -> bool:
        d, c = self.morphisms[f]
        return any(
            self.then(f, g) == self.identities[d] and self.then(g, f) == self.identities[c]
            for g in self.hom(c, d)
        )


def opposite(c: FinCategory) -> FinCategory:
    """Same ids, arrows reversed."""
    return FinCategory(
        c.objects,
        {f: (cd, d) for f, (d, cd) in c.morphisms.items()},
        dict(c.identities),
        {(g, f): h for (f, g), h in c.compose.items()},
    )


def validate_category(c: FinCategory) -> list[str]:
    """Return every violated category axiom; an empty list means the tables form a category."""
    bad: list[str] = []
    objs = set(c.objects)
    if len(objs) != len(c.objects):
        bad.append("duplicate object ids")
    for f, (d, cd) in sorted(c.morphisms.items()):
        if d not in objs or cd not in objs:
            bad.append(f"morphism {f}: endpoints {d} -> {cd} are not objects")
    if bad:
        return bad
    for a in c.objects:
        i = c.identities.get(a)
        if i is None:
            bad.append(f"object {a} has no identity")
        elif c.morphisms.get(i) != (a, a):
            bad.append(f"identity {i} of {a} is not an endomorphism of {a}")
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            h = c.compose.get((f, g))
            if h is None:
                bad.append(f"composite {g} o {f} is missing")
            elif c.morphisms.get(h) != (c.dom(f), c.cod(g)):
                bad.append(f"composite {g} o {f} = {h} has the wrong type")
    for (f, g), h in sorted(c.compose.items()):
        if f not in c.morphisms or g not in c.morphisms or c.cod(f) != c.dom(g):
            bad.append(f"compose entry ({f}, {g}) is not a composable pair")
    if bad:
        return bad
    for f in c.sorted_morphisms:
        d, cd = c.morphisms[f]
        if c.then(c.identities[d], f) != f or c.then(f, c.identities[cd]) != f:
            bad.append(f"unit law fails at {f}")
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            fg = c.then(f, g)
            for h in c.out_of(c.cod(g)):
                if c.then(fg, h) != c.then(f, c.then(g, h)):
                    bad.append(f"associativity fails at ({f}, {g}, {h})")
    return bad


@dataclass(frozen=True)
class SetValuedFunctor:
    """A covariant functor from a finite category to finite sets.

    Element ids only need to be unique within each ``elements[a]``.
    ``action[(f, x)]`` is the image of x, an element over the domain of f.
    """

    base: FinCategory
    elements: dict[str, tuple[str, ...]]
    action: dict[tuple[str, str], str]
    name: str = "X"
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, base: FinCategory, elements, action=None, name: str = "X") -> "SetValuedFunctor":
        elements = {a: tuple(sorted(elements.get(a, ()))) for a in base.objects}
        table = dict(action or {})
        for a in base.objects:
            for x in elements[a]:
                table[(base.identities[a], x)] = x
        return cls(base, elements, table, name)

    def apply(self, f: str, x: str) -> str:
        return self.action[(f, x)]

    def size(self) -> int:
        return sum(len(v) for v in self.elements.values())


def validate_functor(x: SetValuedFunctor) -> list[str]:
    c = x.base
    bad: list[str] = []
    for f in c.sorted_morphisms:
        d, cd = c.morphisms[f]
        for e in x.elements.get(d, ()):
            y = x.action.get((f, e))
            if y is None:
                bad.append(f"action of {f} on {e} is missing")
            elif y not in x.elements.get(cd, ()):
                bad.append(f"action of {f} on {e} lands outside X({cd})")
    if bad:
        return bad
    for a in c.objects:
        for e in x.elements[a]:
            if x.apply(c.identities[a], e) != e:
                bad.append(f"identity of {a} moves {e}")
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            for e in x.elements[c.dom(f)]:
                if x.apply(g, x.apply(f, e)) != x.apply(c.then(f, g), e):
                    bad.append(f"functoriality fails at ({f}, {g}) on {e}")
    return bad


@dataclass(frozen=True)
class ElementsCategory:
    category: FinCategory
    point: dict[str, tuple[str, str]]  # object id -> (a, x)
    over: dict[str, str]  # morphism id -> underlying morphism

    def object_id(self, a: str, x: str) -> str:
        return element_object_id(a, x)


def element_object_id(a: str, x: str) -> str:
    return f"({a},{x})"


def category_of_elements(x: SetValuedFunctor) -> ElementsCategory:
    """Objects (a, x); a morphism (a, x) -> (a', x') is an f with f.x = x'."""
    c = x.base
    point = {}
    for a in c.objects:
        for e in x.elements[a]:
            point[element_object_id(a, e)] = (a, e)
    arrows = {}
    over = {}
    idnames = {}
    for f in c.sorted_morphisms:
        d, cd = c.morphisms[f]
        for e in x.elements[d]:
            mid = f"{f}@{e}"
            src, tgt = element_object_id(d, e), element_object_id(cd, x.apply(f, e))
            over[mid] = f
            if c.is_identity(f):
                idnames[src] = mid
            else:
                arrows[mid] = (src, tgt)
    composites = {}
    for f in c.sorted_morphisms:
        for g in c.out_of(c.cod(f)):
            for e in x.elements[c.dom(f)]:
                composites[(f"{f}@{e}", f"{g}@{x.apply(f, e)}")] = f"{c.then(f, g)}@{e}"
    cat = FinCategory.build(point, arrows, composites, identity_names=idnames)
    return ElementsCategory(cat, point, over)


def connected_components(c: FinCategory) -> Partition:
    uf = UnionFind(c.objects)
    for f, (d, cd) in c.morphisms.items():
        uf.union(d, cd)
    return Partition.from_union_find(uf)


@dataclass(frozen=True)
class FilteredVerdict:
    holds: bool
    span_failures: tuple[tuple[str, str], ...]
    pair_failures: tuple[tuple[str, str], ...]

    @property
    def witness(self):
        if self.pair_failures:
            return ("pair",) + self.pair_failures[0]
        if self.span_failures:
            return ("span",) + self.span_failures[0]
        return None


def _span_completes(c: FinCategory, f1: str, f2: str) -> bool:
    for h1 in c.out_of(c.cod(f1)):
        x = c.cod(h1)
        for h2 in c.hom(c.cod(f2), x):
            if c.then(f1, h1) == c.then(f2, h2):
                return True
    return False


def _has_coequalizing_map(c: FinCategory, f: str, g: str) -> bool:
    return any(c.then(f, h) == c.then(g, h) for h in c.out_of(c.cod(f)))


def is_componentwise_filtered(c: FinCategory) -> FilteredVerdict:
    """Every span completes to a commuting square and every parallel pair to a cofork."""
    spans = []
    for f1, f2 in product(c.sorted_morphisms, repeat=2):
        if c.dom(f1) == c.dom(f2) and f1 <= f2 and not _span_completes(c, f1, f2):
            spans.append((f1, f2))
    pairs = []
    for f, g in product(c.sorted_morphisms, repeat=2):
        if f < g and c.morphisms[f] == c.morphisms[g] and not _has_coequalizing_map(c, f, g):
            pairs.append((f, g))
    return FilteredVerdict(not spans and not pairs, tuple(spans), tuple(pairs))


def is_componentwise_cofiltered(c: FinCategory) -> FilteredVerdict:
    return is_componentwise_filtered(opposite(c))
