"""Nondegeneracy and flatness of set-valued functors and modules.

A functor X is nondegenerate when two conditions hold:

* every cospan f: a -> b <- a2: f2 with f.x = f2.x2 lifts to a commuting
  square g, g2 out of some c together with z ∈ X(c) hitting x and x2
  (condition ND1);
* every parallel pair f, f2: a -> b with f.x = f2.x is equalised by some
  g: c -> a carrying a z ∈ X(c) onto x (condition ND2).
"""
from __future__ import annotations

from dataclasses import dataclass

from .fincat import SetValuedFunctor, category_of_elements, connected_components
from .modules import Module


@dataclass(frozen=True, order=True)
class ND1Failure:
    f: str
    f2: str
    x: str
    x2: str
    source: str | None = None

    def describe(self) -> str:
        at = f" in row {self.source}" if self.source is not None else ""
        return f"ND1{at}: {self.f}.{self.x} = {self.f2}.{self.x2} has no lifting square"


@dataclass(frozen=True, order=True)
class ND2Failure:
    f: str
    f2: str
    x: str
    source: str | None = None

    def describe(self) -> str:
        at = f" in row {self.source}" if self.source is not None else ""
        return f"ND2{at}: {self.f}.{self.x} = {self.f2}.{self.x} has no equalising lift"


@dataclass(frozen=True)
class NDVerdict:
    holds: bool
    nd1: tuple[ND1Failure, ...] = ()
    nd2: tuple[ND2Failure, ...] = ()

    @property
    def witness(self):
        """Least failure, ND1 before ND2."""
        if self.nd1:
            return self.nd1[0]
        if self.nd2:
            return self.nd2[0]
        return None


def _commuting_squares(c, f, f2):
    """All (g, g2) from a common object with f∘g = f2∘g2."""
    a, a2 = c.dom(f), c.dom(f2)
    out = []
    for g in c.into(a):
        for g2 in c.hom(c.dom(g), a2):
            if c.then(g, f) == c.then(g2, f2):
                out.append((g, g2))
    return out


def nd1_lift(x: SetValuedFunctor, f: str, f2: str, e: str, e2: str):
    """Return (g, g2, z) lifting the pair (e, e2) over the cospan, or None."""
    c = x.base
    for g, g2 in _commuting_squares(c, f, f2):
        for z in x.elements[c.dom(g)]:
            if x.apply(g, z) == e and x.apply(g2, z) == e2:
                return g, g2, z
    return None


def nd2_lift(x: SetValuedFunctor, f: str, f2: str, e: str):
    c = x.base
    for g in c.into(c.dom(f)):
        if c.then(g, f) != c.then(g, f2):
            continue
        for z in x.elements[c.dom(g)]:
            if x.apply(g, z) == e:
                return g, z
    return None


def check_nondegenerate_functor(x: SetValuedFunctor, fast: bool = True, source: str | None = None) -> NDVerdict:
    """Exhaustive check of ND1 and ND2.

    With ``fast`` the cases that hold automatically are skipped: ND1 for
    cospans with an invertible leg, ND2 for a pair with f = f2.
    """
    c = x.base
    iso = {f: c.is_iso(f) for f in c.sorted_morphisms} if fast else {}
    nd1, nd2 = [], []
    for b in c.objects:
        into = c.into(b)
        for i, f in enumerate(into):
            for f2 in into[i:]:
                if fast and (iso[f] or iso[f2]):
                    continue
                squares = None
                for e in x.elements[c.dom(f)]:
                    y = x.apply(f, e)
                    for e2 in x.elements[c.dom(f2)]:
                        if x.apply(f2, e2) != y:
                            continue
                        if squares is None:
                            squares = _commuting_squares(c, f, f2)
                        if not any(
                            x.apply(g, z) == e and x.apply(g2, z) == e2
                            for g, g2 in squares
                            for z in x.elements[c.dom(g)]
                        ):
                            nd1.append(ND1Failure(f, f2, e, e2, source))
                for e in x.elements[c.dom(f)] if c.dom(f) == c.dom(f2) else ():
                    if fast and f == f2:
                        continue
                    if x.apply(f, e) == x.apply(f2, e) and nd2_lift(x, f, f2, e) is None:
                        nd2.append(ND2Failure(f, f2, e, source))
    nd1.sort()
    nd2.sort()
    return NDVerdict(not nd1 and not nd2, tuple(nd1), tuple(nd2))


def is_nondegenerate_cached(x: SetValuedFunctor) -> bool:
    key = "nondegenerate"
    if key not in x._memo:
        x._memo[key] = check_nondegenerate_functor(x).holds
    return x._memo[key]


def check_nondegenerate_module(mod: Module, fast: bool = True) -> NDVerdict:
    """M is nondegenerate when every row M(b, -) is; failures carry their row b."""
    nd1, nd2 = [], []
    for b in mod.source.objects:
        v = check_nondegenerate_functor(mod.row(b), fast=fast, source=b)
        nd1.extend(v.nd1)
        nd2.extend(v.nd2)
    return NDVerdict(not nd1 and not nd2, tuple(nd1), tuple(nd2))


def verify_nd_failure(x: SetValuedFunctor, w) -> bool:
    """Re-check a reported counterexample directly against the definitions."""
    c = x.base
    if isinstance(w, ND1Failure):
        if c.cod(w.f) != c.cod(w.f2) or x.apply(w.f, w.x) != x.apply(w.f2, w.x2):
            return False
        return nd1_lift(x, w.f, w.f2, w.x, w.x2) is None
    if c.morphisms[w.f] != c.morphisms[w.f2] or x.apply(w.f, w.x) != x.apply(w.f2, w.x):
        return False
    return nd2_lift(x, w.f, w.f2, w.x) is None


@dataclass(frozen=True)
class FlatVerdict:
    holds: bool
    reason: str = ""
    witness: tuple = ()


def check_flat(x: SetValuedFunctor) -> FlatVerdict:
    """Flat means: some X(a) is nonempty, any two elements share a span, and ND2 holds."""
    c = x.base
    points = [(a, e) for a in c.objects for e in x.elements[a]]
    if not points:
        return FlatVerdict(False, "empty")
    for i, (a, e) in enumerate(points):
        for a2, e2 in points[i + 1:]:
            if not _share_span(x, a, e, a2, e2):
                return FlatVerdict(False, "no common span", ((a, e), (a2, e2)))
    nd = check_nondegenerate_functor(x)
    if nd.nd2:
        w = nd.nd2[0]
        return FlatVerdict(False, "ND2", (w.f, w.f2, w.x))
    return FlatVerdict(True)


def _share_span(x, a, e, a2, e2) -> bool:
    c = x.base
    for cc in c.objects:
        for z in x.elements[cc]:
            if any(x.apply(g, z) == e for g in c.hom(cc, a)) and any(
                x.apply(g2, z) == e2 for g2 in c.hom(cc, a2)
            ):
                return True
    return False


def components_of_functor(x: SetValuedFunctor) -> list[SetValuedFunctor]:
    """Split X into the summands indexed by the components of its category of elements."""
    elt = category_of_elements(x)
    part = connected_components(elt.category)
    out = []
    for k, (rep, members) in enumerate(part.classes.items()):
        keep = {elt.point[m] for m in members}
        elems = {a: tuple(e for e in x.elements[a] if (a, e) in keep) for a in x.base.objects}
        action = {(f, e): y for (f, e), y in x.action.items() if (x.base.dom(f), e) in keep}
        out.append(SetValuedFunctor(x.base, elems, action, name=f"{x.name}[{k}]"))
    return out
