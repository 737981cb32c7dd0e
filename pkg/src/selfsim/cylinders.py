"""Cylinder sets of the universal solution and the relations they generate.

The cylinder of a finite chain p is the set of points having a
representative that starts with p.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .chains import FiniteChain, PeriodicAddress
from .errors import PreconditionError
from .omega import AddressLeg, FrontierGraph, LassoCertificate, PrefixLeg, SpanShape, has_infinite_path
from .universal import Coalgebra, canonical_map, chains, res_set

Cylinder = FiniteChain


@dataclass(frozen=True)
class SpanVerdict:
    holds: bool
    certificate: LassoCertificate | None = None
    shape: SpanShape | None = field(default=None, compare=False, repr=False)

    def verify(self) -> bool:
        if not self.holds:
            return self.certificate is None
        return self.certificate.verify(self.shape)


def _require_solvable(system):
    if not system.solvable:
        raise PreconditionError("cylinder queries need a solvable system")


def _span(system, anchor, leg1, leg2) -> SpanVerdict:
    shape = SpanShape(system.module, anchor, leg1, leg2)
    res = has_infinite_path(shape)
    return SpanVerdict(res.holds, res.certificate, shape)


def cylinder_member(system, t: PeriodicAddress, cyl: Cylinder) -> SpanVerdict:
    """Is the point of t represented by some chain starting with the cylinder's prefix?"""
    _require_solvable(system)
    t.check(system.module)
    if t.anchor != cyl.anchor:
        return SpanVerdict(False)
    cyl.objects(system.module)
    return _span(system, t.anchor, AddressLeg(t), PrefixLeg(cyl))


def cylinder_intersect(system, c1: Cylinder, c2: Cylinder) -> SpanVerdict:
    _require_solvable(system)
    if c1.anchor != c2.anchor:
        return SpanVerdict(False)
    return _span(system, c1.anchor, PrefixLeg(c1), PrefixLeg(c2))


class _FreeSpans:
    """Liveness of span states whose second leg is unconstrained, one graph per address."""

    def __init__(self, system):
        self.system = system
        self.cache: dict = {}

    def live(self, t: PeriodicAddress, states) -> set:
        shape = SpanShape(self.system.module, t.anchor, AddressLeg(t), PrefixLeg(FiniteChain(t.anchor, ())))
        key = (t, frozenset(states))
        if key not in self.cache:
            starts = sorted({(g, h, pos, 0) for g, h, pos in states})
            live = FrontierGraph(shape, starts=starts).live_states()
            self.cache[key] = {s[:3] for s in live}
        return self.cache[key]


def _steps_with(mod, state, t: PeriodicAddress, p: str) -> set:
    """Span states one level deeper when the free leg takes the element p."""
    cat = mod.target
    g, h, pos = state
    m, npos = t.position_element(pos), t.next_position(pos)
    out = set()
    for q in mod.into(cat.dom(g)):
        c1 = mod.dom(q)
        gq, hq = mod.lact(g, q), mod.lact(h, q)
        left = [g1 for g1 in cat.hom(c1, mod.dom(m)) if mod.ract(m, g1) == gq]
        if not left:
            continue
        right = [h1 for h1 in cat.hom(c1, mod.dom(p)) if mod.ract(p, h1) == hq]
        out.update((g1, h1, npos) for g1 in left for h1 in right)
    return out


def rn_related(system, t: PeriodicAddress, t2: PeriodicAddress, n: int) -> bool:
    """Do t and t2 lie in a common depth-n cylinder?

    Rather than trying every depth-n chain one by one, the two membership
    searches run side by side over the shared prefix, then each side must
    continue forever on its own.
    """
    _require_solvable(system)
    mod = system.module
    t.check(mod)
    t2.check(mod)
    if t.anchor != t2.anchor:
        return False
    cat = mod.target
    i = cat.identities[t.anchor]
    layer = {((i, i, 0), (i, i, 0))}
    for _ in range(n):
        nxt = set()
        for s1, s2 in layer:
            for p in mod.into(cat.cod(s1[1])):
                a1 = _steps_with(mod, s1, t, p)
                if not a1:
                    continue
                a2 = _steps_with(mod, s2, t2, p)
                nxt.update((x, y) for x in a1 for y in a2)
        layer = nxt
        if not layer:
            return False
    free = _FreeSpans(system)
    live1 = free.live(t, {s for s, _ in layer})
    live2 = free.live(t2, {s for _, s in layer})
    return any(s1 in live1 and s2 in live2 for s1, s2 in layer)


def first_separating_depth(system, t, t2, limit: int = 12) -> int | None:
    for n in range(limit + 1):
        if not rn_related(system, t, t2, n):
            return n
    return None


def inverse_image_cylinder(c: Coalgebra, cyl: Cylinder) -> frozenset[str]:
    """Elements whose canonical point lies in the cylinder."""
    system = c.system
    return frozenset(
        x for x in c.carrier.elements[cyl.anchor]
        if cylinder_member(system, canonical_map(c, cyl.anchor, x), cyl).holds
    )


def resolution_cover(c: Coalgebra, cyl: Cylinder, depth: int) -> frozenset[str]:
    """Union of Res(m) over depth-``depth`` chains m whose cylinder meets ``cyl``."""
    out: set = set()
    for m in chains(c.system.module, cyl.anchor, depth):
        if cylinder_intersect(c.system, m, cyl).holds:
            out |= res_set(c, m)
    return frozenset(out)


def adjacency_graph(system, a: str, n: int, fmt: str = "json"):
    """Depth-n chains at a, joined when their cylinders meet."""
    nodes = chains(system.module, a, n)
    edges = [
        [i, j]
        for i in range(len(nodes))
        for j in range(i + 1, len(nodes))
        if cylinder_intersect(system, nodes[i], nodes[j]).holds
    ]
    if fmt == "json":
        return {"nodes": [{"id": i, "chain": list(ch.elements)} for i, ch in enumerate(nodes)], "edges": edges}
    if fmt == "dot":
        lines = ["graph cylinders {"]
        for i, ch in enumerate(nodes):
            lines.append(f"  {i} [label={json.dumps(' '.join(ch.elements))}];")
        lines.extend(f"  {i} -- {j};" for i, j in edges)
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")
