"""Modules (profunctors) between finite categories and their tensor products."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import PreconditionError, ValidationError
from .fincat import FinCategory, Partition, SetValuedFunctor, UnionFind, validate_category


@dataclass(frozen=True)
class Module:
    """A module M from ``source`` to ``target``: sets M(b, a) with a ∈ target, b ∈ source.

    Morphisms of ``target`` act on the left, f: a -> a' sends M(b, a) to
    M(b, a'); morphisms of ``source`` act on the right, g: b' -> b sends
    M(b, a) to M(b', a). Element ids are unique across the whole module, so
    an element determines its pair (b, a).
    """

    source: FinCategory
    target: FinCategory
    elements: dict[tuple[str, str], tuple[str, ...]]
    left: dict[tuple[str, str], str]
    right: dict[tuple[str, str], str]
    name: str = "M"

    @classmethod
    def build(cls, source, target, elements, left=None, right=None, name="M") -> "Module":
        elements = {
            (b, a): tuple(sorted(elements.get((b, a), ())))
            for b in source.objects
            for a in target.objects
        }
        lt, rt = dict(left or {}), dict(right or {})
        for (b, a), ms in elements.items():
            for m in ms:
                lt[(target.identities[a], m)] = m
                rt[(m, source.identities[b])] = m
        return cls(source, target, elements, lt, rt, name)

    @cached_property
    def hom_of(self) -> dict[str, tuple[str, str]]:
        """element id -> (b, a)"""
        return {m: ba for ba, ms in self.elements.items() for m in ms}

    def over(self, b: str, a: str) -> tuple[str, ...]:
        return self.elements.get((b, a), ())

    def lact(self, f: str, m: str) -> str:
        return self.left[(f, m)]

    def ract(self, m: str, g: str) -> str:
        return self.right[(m, g)]

    def dom(self, m: str) -> str:
        return self.hom_of[m][0]

    def cod(self, m: str) -> str:
        return self.hom_of[m][1]

    @cached_property
    def _into(self) -> dict[str, tuple[str, ...]]:
        out = {a: [] for a in self.target.objects}
        for (b, a), ms in sorted(self.elements.items()):
            out[a].extend(ms)
        return {a: tuple(sorted(v)) for a, v in out.items()}

    def into(self, a: str) -> tuple[str, ...]:
        """All elements of M(b, a) over every b."""
        return self._into[a]

    def row(self, b: str) -> SetValuedFunctor:
        """The covariant functor M(b, -) with the left action."""
        c = self.target
        elems = {a: self.over(b, a) for a in c.objects}
        action = {(f, m): self.lact(f, m) for f in c.sorted_morphisms for m in elems[c.dom(f)]}
        return SetValuedFunctor(c, elems, action, name=f"{self.name}({b},-)")

    def size(self) -> int:
        return len(self.hom_of)


@dataclass(frozen=True)
class ModuleReport:
    violations: tuple[str, ...]
    elements_per_object: dict[str, int]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_module(mod: Module) -> ModuleReport:
    """Check typing and totality of both actions and the five module axioms."""
    bad: list[str] = []
    A, B = mod.target, mod.source
    seen: dict[str, tuple[str, str]] = {}
    for ba, ms in sorted(mod.elements.items()):
        for m in ms:
            if m in seen:
                bad.append(f"element id {m} used in both M{seen[m]} and M{ba}")
            seen[m] = ba
    for (b, a), ms in sorted(mod.elements.items()):
        for m in ms:
            for f in A.out_of(a):
                r = mod.left.get((f, m))
                if r is None:
                    bad.append(f"left action {f} . {m} is missing")
                elif r not in mod.over(b, A.cod(f)):
                    bad.append(f"left action {f} . {m} = {r} lands outside M({b},{A.cod(f)})")
            for g in B.into(b):
                r = mod.right.get((m, g))
                if r is None:
                    bad.append(f"right action {m} . {g} is missing")
                elif r not in mod.over(B.dom(g), a):
                    bad.append(f"right action {m} . {g} = {r} lands outside M({B.dom(g)},{a})")
    counts = {a: len(mod.into(a)) for a in A.objects}
    if bad:
        return ModuleReport(tuple(bad), counts)
    for (b, a), ms in sorted(mod.elements.items()):
        for m in ms:
            if mod.lact(A.identities[a], m) != m:
                bad.append(f"identity of {a} moves {m} on the left")
            if mod.ract(m, B.identities[b]) != m:
                bad.append(f"identity of {b} moves {m} on the right")
            for f in A.out_of(a):
                for f2 in A.out_of(A.cod(f)):
                    if mod.lact(f2, mod.lact(f, m)) != mod.lact(A.then(f, f2), m):
                        bad.append(f"left action not associative at ({f2}, {f}, {m})")
            for g in B.into(b):
                for g2 in B.into(B.dom(g)):
                    if mod.ract(mod.ract(m, g), g2) != mod.ract(m, B.then(g2, g)):
                        bad.append(f"right action not associative at ({m}, {g}, {g2})")
                for f in A.out_of(a):
                    if mod.ract(mod.lact(f, m), g) != mod.lact(f, mod.ract(m, g)):
                        bad.append(f"actions do not commute at ({f}, {m}, {g})")
    return ModuleReport(tuple(bad), counts)


def hom_module(c: FinCategory) -> Module:
    """M(b, a) = hom(b, a), acted on by composition."""
    elems = {(b, a): c.hom(b, a) for b in c.objects for a in c.objects}
    left = {(f, m): c.then(m, f) for m in c.morphisms for f in c.out_of(c.cod(m))}
    right = {(m, g): c.then(g, m) for m in c.morphisms for g in c.into(c.dom(m))}
    return Module(c, c, elems, left, right, name="hom")


@dataclass(frozen=True)
class QuotientSet:
    """Raw pairs modulo an equivalence, each class named after its least pair."""

    partition: Partition
    names: dict[tuple[str, str], str]

    @property
    def raw(self) -> tuple:
        return self.partition.carrier

    def class_of(self, pair) -> tuple[str, str]:
        return self.partition.rep[tuple(pair)]

    def name_of(self, pair) -> str:
        return self.names[self.class_of(pair)]

    @cached_property
    def by_name(self) -> dict[str, tuple[str, str]]:
        return {v: k for k, v in self.names.items()}

    def members(self, name: str) -> tuple:
        return self.partition.classes[self.by_name[name]]

    def __len__(self) -> int:
        return len(self.partition)


def pair_name(left: str, right: str) -> str:
    return f"{left}⊗{right}"


def _quotient(raw, relations) -> QuotientSet:
    uf = UnionFind(raw)
    for p, q in relations:
        uf.union(p, q)
    part = Partition.from_union_find(uf)
    return QuotientSet(part, {r: pair_name(*r) for r in part.classes})


def tensor_raw_pairs(mod: Module, x: SetValuedFunctor, a: str) -> list[tuple[str, str]]:
    return sorted((m, e) for b in mod.source.objects for m in mod.over(b, a) for e in x.elements[b])


def tensor_relations(mod: Module, x: SetValuedFunctor, a: str):
    """Generating pairs (m.g, e) ~ (m, g.e) of the tensor quotient at ``a``."""
    B = mod.source
    for g in B.sorted_morphisms:
        bp, b = B.morphisms[g]
        for m in mod.over(b, a):
            for e in x.elements[bp]:
                yield (mod.ract(m, g), e), (m, x.apply(g, e))


@dataclass(frozen=True)
class TensorFunctor(SetValuedFunctor):
    quotients: dict = field(default_factory=dict, compare=False, repr=False)


def tensor_functor(mod: Module, x: SetValuedFunctor) -> TensorFunctor:
    """The functor a ↦ (Σ_b M(b, a) × X(b)) / ~ with f acting on the module factor."""
    if x.base is not mod.source and x.base != mod.source:
        raise PreconditionError("functor and module live over different categories")
    A = mod.target
    quotients = {a: _quotient(tensor_raw_pairs(mod, x, a), tensor_relations(mod, x, a)) for a in A.objects}
    elements = {a: tuple(sorted(q.names.values())) for a, q in quotients.items()}
    action = {}
    for f in A.sorted_morphisms:
        d, c = A.morphisms[f]
        for rep, nm in quotients[d].names.items():
            m, e = rep
            action[(f, nm)] = quotients[c].name_of((mod.lact(f, m), e))
    return TensorFunctor(A, elements, action, f"{mod.name}⊗{x.name}", quotients=quotients)


@dataclass(frozen=True)
class TensorModule(Module):
    quotients: dict = field(default_factory=dict, compare=False, repr=False)


def tensor_modules(m: Module, n: Module) -> TensorModule:
    """(M⊗N)(c, a) = (Σ_b M(b, a) × N(c, b)) / ((m.g, n) ~ (m, g.n))."""
    if n.target != m.source:
        raise PreconditionError("modules are not composable")
    A, B, C = m.target, m.source, n.source
    quotients = {}
    for c in C.objects:
        for a in A.objects:
            raw = sorted((mm, nn) for b in B.objects for mm in m.over(b, a) for nn in n.over(c, b))
            rel = []
            for g in B.sorted_morphisms:
                bp, b = B.morphisms[g]
                for mm in m.over(b, a):
                    for nn in n.over(c, bp):
                        rel.append(((m.ract(mm, g), nn), (mm, n.lact(g, nn))))
            quotients[(c, a)] = _quotient(raw, rel)
    elements = {ca: tuple(sorted(q.names.values())) for ca, q in quotients.items()}
    left, right = {}, {}
    for (c, a), q in quotients.items():
        for (mm, nn), nm in q.names.items():
            for f in A.out_of(a):
                left[(f, nm)] = quotients[(c, A.cod(f))].name_of((m.lact(f, mm), nn))
            for h in C.into(c):
                right[(nm, h)] = quotients[(C.dom(h), a)].name_of((mm, n.ract(nn, h)))
    return TensorModule(C, A, elements, left, right, f"{m.name}⊗{n.name}", quotients=quotients)


@dataclass(frozen=True)
class SpanWitness:
    """c, f: c -> b, f2: c -> b2 and z ∈ X(c) with f.z = x, f2.z = x2 and m.f = m2.f2."""

    apex: str
    f: str
    f2: str
    z: str


def tensor_equal(mod: Module, x: SetValuedFunctor, p1, p2) -> SpanWitness | None:
    """Decide m⊗x = m2⊗x2 by a single span, which is exact when X is nondegenerate."""
    from .nondegeneracy import is_nondegenerate_cached

    if not is_nondegenerate_cached(x):
        raise PreconditionError(f"functor {x.name} is degenerate; single-span equality does not apply")
    (m, e), (m2, e2) = p1, p2
    if mod.cod(m) != mod.cod(m2):
        return None
    B = mod.source
    b, b2 = mod.dom(m), mod.dom(m2)
    for c in B.objects:
        for f in B.hom(c, b):
            for f2 in B.hom(c, b2):
                if mod.ract(m, f) != mod.ract(m2, f2):
                    continue
                for z in x.elements[c]:
                    if x.apply(f, z) == e and x.apply(f2, z) == e2:
                        return SpanWitness(c, f, f2, z)
    return None


def verify_span_witness(mod: Module, x: SetValuedFunctor, p1, p2, w: SpanWitness) -> bool:
    (m, e), (m2, e2) = p1, p2
    B = mod.source
    return (
        B.morphisms.get(w.f) == (w.apex, mod.dom(m))
        and B.morphisms.get(w.f2) == (w.apex, mod.dom(m2))
        and w.z in x.elements[w.apex]
        and x.apply(w.f, w.z) == e
        and x.apply(w.f2, w.z) == e2
        and mod.ract(m, w.f) == mod.ract(m2, w.f2)
    )


class SelfSimilaritySystem:
    """A finite category together with an endo-module on it."""

    def __init__(self, category: FinCategory, module: Module, name: str = "system", check: bool = True):
        self.category = category
        self.module = module
        self.name = name
        if check:
            bad = validate_category(category)
            if module.source != category or module.target != category:
                bad.append("module is not an endo-module on the category")
            if not bad:
                bad.extend(validate_module(module).violations)
            if bad:
                raise ValidationError(f"{name} is not a valid self-similarity system", bad)

    @cached_property
    def nondegeneracy(self):
        from .nondegeneracy import check_nondegenerate_module

        return check_nondegenerate_module(self.module)

    @property
    def nondegenerate(self) -> bool:
        return self.nondegeneracy.holds

    @cached_property
    def solvability(self):
        from .omega import check_solvable

        return check_solvable(self)

    @property
    def solvable(self) -> bool:
        return self.solvability.holds

    def __repr__(self) -> str:
        return f"SelfSimilaritySystem({self.name!r}, {len(self.category.objects)} objects, {self.module.size()} elements)"
