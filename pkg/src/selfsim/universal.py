"""The universal solution: chains of module elements up to ladders.

A point of the solution at an object a is a connected component of the
category of infinite chains anchored at a, with ladders as morphisms.
Points are handled through eventually periodic representatives
(:class:`PeriodicAddress`), and equality of points is decided by searching
for a span of ladders with the omega engine.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .chains import FiniteChain, PeriodicAddress, chain_objects, prepend
from .errors import PreconditionError, ValidationError
from .fincat import FinCategory, Partition, SetValuedFunctor, UnionFind, validate_functor
from .modules import TensorFunctor, tensor_functor
from .nondegeneracy import check_nondegenerate_functor
from .omega import AddressLeg, LassoCertificate, SpanShape, apex_address, has_infinite_path


def chains(mod, anchor: str, n: int) -> list[FiniteChain]:
    """All chains of length n anchored at ``anchor``, in lexicographic order."""
    out: list[tuple[str, ...]] = []

    def grow(obj, acc):
        if len(acc) == n:
            out.append(tuple(acc))
            return
        for m in mod.into(obj):
            acc.append(m)
            grow(mod.dom(m), acc)
            acc.pop()

    grow(anchor, [])
    return [FiniteChain(anchor, e) for e in sorted(out)]


@dataclass(frozen=True)
class Ladder:
    source: FiniteChain
    target: FiniteChain
    verticals: tuple[str, ...]  # f_0 = identity, f_1, ..., f_n


def ladders_from(mod, src: FiniteChain):
    """Every ladder out of ``src``: verticals f_i: a_i -> a2_i with m2_i.f_i = f_{i-1}.m_i."""
    cat = mod.target
    objs = src.objects(mod)
    n = len(src)

    def grow(i, verts, tgt):
        if i > n:
            yield Ladder(src, FiniteChain(src.anchor, tuple(tgt)), tuple(verts))
            return
        want = mod.lact(verts[-1], src.elements[i - 1])
        target_obj = cat.cod(verts[-1])
        for f in cat.out_of(objs[i]):
            for m2 in mod.over(cat.cod(f), target_obj):
                if mod.ract(m2, f) == want:
                    yield from grow(i + 1, verts + [f], tgt + [m2])

    yield from grow(1, [cat.identities[src.anchor]], [])


def verify_ladder(mod, lad: Ladder) -> bool:
    cat = mod.target
    n = len(lad.source)
    if len(lad.target) != n or len(lad.verticals) != n + 1:
        return False
    so, to = lad.source.objects(mod), lad.target.objects(mod)
    if lad.verticals[0] != cat.identities[lad.source.anchor] or lad.source.anchor != lad.target.anchor:
        return False
    for i, f in enumerate(lad.verticals):
        if cat.morphisms[f] != (so[i], to[i]):
            return False
    for i in range(1, n + 1):
        m, m2 = lad.source.elements[i - 1], lad.target.elements[i - 1]
        if mod.ract(m2, lad.verticals[i]) != mod.lact(lad.verticals[i - 1], m):
            return False
    return True


def chain_id(ch: FiniteChain) -> str:
    return f"{ch.anchor}:" + " ".join(ch.elements)


def level_category(system, a: str, n: int) -> FinCategory:
    """Chains of length n anchored at a, with ladders as morphisms."""
    mod, cat = system.module, system.category
    objs = chains(mod, a, n)
    ids = {ch: chain_id(ch) for ch in objs}
    arrows, idnames, key = {}, {}, {}
    for ch in objs:
        for lad in ladders_from(mod, ch):
            lid = f"{ids[ch]}|{'/'.join(lad.verticals)}|{ids[lad.target]}"
            key[(ch, lad.target, lad.verticals)] = lid
            if all(cat.is_identity(f) for f in lad.verticals):
                idnames[ids[ch]] = lid
            else:
                arrows[lid] = (ids[ch], ids[lad.target])
    by_source: dict = {}
    for (s, t, v), lid in key.items():
        by_source.setdefault(s, []).append((t, v, lid))
    composites = {}
    for (s, t, v), lid in key.items():
        for u, w, lid2 in by_source.get(t, ()):
            comp = tuple(cat.then(f, g) for f, g in zip(v, w))
            composites[(lid, lid2)] = key[(s, u, comp)]
    return FinCategory.build(list(ids.values()), arrows, composites, identity_names=idnames)


@dataclass(frozen=True)
class LevelComponents:
    chains: tuple[FiniteChain, ...]
    partition: Partition

    def __len__(self) -> int:
        return len(self.partition)

    def class_of(self, ch: FiniteChain) -> FiniteChain:
        return self.partition.rep[ch]


def level_components(system, a: str, n: int) -> LevelComponents:
    """Connected components of the length-n chain category at a."""
    mod = system.module
    objs = chains(mod, a, n)
    uf = UnionFind(objs)
    for ch in objs:
        for lad in ladders_from(mod, ch):
            uf.union(ch, lad.target)
    return LevelComponents(tuple(objs), Partition.from_union_find(uf))


def level_projection(system, a: str, n: int) -> dict[FiniteChain, FiniteChain]:
    """Truncation from level n+1 components to level n components, checked to be well defined."""
    upper, lower = level_components(system, a, n + 1), level_components(system, a, n)
    out: dict = {}
    for ch in upper.chains:
        r = upper.class_of(ch)
        img = lower.class_of(ch.truncate(n))
        if out.setdefault(r, img) != img:
            raise ValidationError(f"truncation is not well defined on the class of {r}")
    return out


def iota(system, t: PeriodicAddress) -> tuple[str, PeriodicAddress]:
    """Split a point into its first element and the point of the tail."""
    u = t.unroll(1)
    return u.pre[0], t.tail(system.module)


def iota_inverse(system, m: str, t: PeriodicAddress) -> PeriodicAddress:
    return prepend(system.module, m, t)


@dataclass(frozen=True)
class EqualityVerdict:
    status: str  # "equal", "not_equal" or "unknown"
    certificate: LassoCertificate | None = None
    shape: SpanShape | None = field(default=None, compare=False, repr=False)
    states: int = 0

    @property
    def equal(self) -> bool:
        return self.status == "equal"

    def verify(self) -> bool:
        if self.status != "equal":
            return self.certificate is None
        return self.certificate is not None and self.certificate.verify(self.shape)

    def apex(self) -> PeriodicAddress | None:
        if self.certificate is None:
            return None
        return apex_address(self.shape.anchor, self.certificate)


def decide_equal(system, t: PeriodicAddress, t2: PeriodicAddress) -> EqualityVerdict:
    """Equal iff some chain maps by ladders onto both addresses.

    A found span is always a proof of equality. Its absence proves
    inequality only when the system is solvable; otherwise the answer is
    ``unknown``.
    """
    mod = system.module
    t.check(mod)
    t2.check(mod)
    if t.anchor != t2.anchor:
        raise PreconditionError(f"addresses are anchored at {t.anchor} and {t2.anchor}")
    shape = SpanShape(mod, t.anchor, AddressLeg(t), AddressLeg(t2))
    res = has_infinite_path(shape)
    if res.holds:
        return EqualityVerdict("equal", res.certificate, shape, res.states)
    status = "not_equal" if system.solvable else "unknown"
    return EqualityVerdict(status, None, shape, res.states)


# ---------------------------------------------------------------------------
# coalgebras


@dataclass
class Coalgebra:
    """A functor X with a structure map X -> M⊗X, given by one representative pair per element."""

    system: object
    carrier: SetValuedFunctor
    structure: dict[tuple[str, str], tuple[str, str]]
    name: str = "xi"

    @cached_property
    def tensor(self) -> TensorFunctor:
        return tensor_functor(self.system.module, self.carrier)

    def step(self, a: str, x: str) -> tuple[str, str]:
        return self.structure[(a, x)]

    def step_class(self, a: str, x: str) -> tuple:
        """All representative pairs of the tensor class of the structure at (a, x)."""
        q = self.tensor.quotients[a]
        return q.partition.classes[q.class_of(self.step(a, x))]


def validate_coalgebra(c: Coalgebra) -> list[str]:
    mod, x = c.system.module, c.carrier
    bad = validate_functor(x)
    if x.base != c.system.category:
        bad.append("carrier lives over a different category")
    if bad:
        return bad
    nd = check_nondegenerate_functor(x)
    if not nd.holds:
        bad.append(f"carrier is degenerate: {nd.witness.describe()}")
    for a in x.base.objects:
        for e in x.elements[a]:
            pair = c.structure.get((a, e))
            if pair is None:
                bad.append(f"structure map missing at ({a}, {e})")
                continue
            m, y = pair
            if m not in mod.hom_of or mod.cod(m) != a:
                bad.append(f"structure at ({a}, {e}) uses {m}, which does not land in {a}")
            elif y not in x.elements[mod.dom(m)]:
                bad.append(f"structure at ({a}, {e}) uses {y}, not an element of X({mod.dom(m)})")
    if bad:
        return bad
    q = c.tensor.quotients
    cat = x.base
    for f in cat.sorted_morphisms:
        d, cd = cat.morphisms[f]
        for e in x.elements[d]:
            m, y = c.step(d, e)
            lhs = q[cd].class_of(c.step(cd, x.apply(f, e)))
            rhs = q[cd].class_of((mod.lact(f, m), y))
            if lhs != rhs:
                bad.append(f"structure map is not natural at {f} on {e}")
    return bad


ChoiceOrder = str | Callable[[Coalgebra, str, str], tuple[str, str]]


def _choose(c: Coalgebra, a: str, x: str, choice: ChoiceOrder) -> tuple[str, str]:
    if callable(choice):
        return choice(c, a, x)
    if choice == "stored":
        return c.step(a, x)
    members = c.step_class(a, x)
    if choice == "least":
        return min(members)
    if choice == "greatest":
        return max(members)
    raise ValueError(f"unknown choice order {choice!r}")


@dataclass(frozen=True)
class ResolutionRun:
    address: PeriodicAddress
    states: tuple[tuple[str, str], ...]  # (a_n, x_n) for n up to the first repeat
    loop_start: int


def resolution_run(c: Coalgebra, a: str, x: str, choice: ChoiceOrder = "stored") -> ResolutionRun:
    """Follow the structure map until an (object, element) state repeats."""
    seen: dict[tuple[str, str], int] = {}
    elems, states = [], []
    cur = (a, x)
    while cur not in seen:
        seen[cur] = len(states)
        states.append(cur)
        m, y = _choose(c, *cur, choice)
        elems.append(m)
        cur = (c.system.module.dom(m), y)
    k = seen[cur]
    addr = PeriodicAddress(a, tuple(elems[:k]), tuple(elems[k:]))
    return ResolutionRun(addr, tuple(states), k)


def resolve(c: Coalgebra, a: str, x: str, choice: ChoiceOrder = "stored") -> PeriodicAddress:
    return resolution_run(c, a, x, choice).address.normalized()


def verify_resolution(c: Coalgebra, run: ResolutionRun) -> bool:
    """Each step must satisfy xi(x_n) = m_{n+1} ⊗ x_{n+1} in the tensor."""
    q = c.tensor.quotients
    n = len(run.states)
    for i, (a, x) in enumerate(run.states):
        m = run.address.element(i)
        nxt = run.states[i + 1] if i + 1 < n else run.states[run.loop_start]
        if c.system.module.hom_of[m] != (nxt[0], a):
            return False
        if q[a].class_of(c.step(a, x)) != q[a].class_of((m, nxt[1])):
            return False
    return True


def canonical_map(c: Coalgebra, a: str, x: str, choice: ChoiceOrder = "stored") -> PeriodicAddress:
    """The point of the universal solution that x resolves to."""
    if not c.system.solvable:
        raise PreconditionError("the system is not solvable, so the canonical map is not defined")
    return resolve(c, a, x, choice)


def resolutions_along_prefix(c: Coalgebra, x: str, prefix: FiniteChain) -> list[tuple[str, ...]]:
    """Every finite resolution x = x0, x1, ..., xn whose chain is the given prefix."""
    mod = c.system.module
    objs = chain_objects(mod, prefix.anchor, prefix.elements)
    q = c.tensor.quotients
    out = []

    def grow(i, acc):
        if i == len(prefix):
            out.append(tuple(acc))
            return
        a, m = objs[i], prefix.elements[i]
        target = q[a].class_of(c.step(a, acc[-1]))
        for y in c.carrier.elements[objs[i + 1]]:
            if q[a].class_of((m, y)) == target:
                grow(i + 1, acc + [y])

    if x in c.carrier.elements[prefix.anchor]:
        grow(0, [x])
    return out


def res_set(c: Coalgebra, prefix: FiniteChain) -> frozenset[str]:
    """Elements over the anchor that resolve along the prefix, by backward recursion."""
    mod = c.system.module
    objs = chain_objects(mod, prefix.anchor, prefix.elements)
    q = c.tensor.quotients
    current = set(c.carrier.elements[objs[-1]])
    for i in range(len(prefix) - 1, -1, -1):
        a, m = objs[i], prefix.elements[i]
        targets = {q[a].class_of((m, y)) for y in current}
        current = {x for x in c.carrier.elements[a] if q[a].class_of(c.step(a, x)) in targets}
    return frozenset(current)
