"""Deciding existence of infinite ladder-shaped diagrams.

Each query is a *shape*: a finite set of frontier states together with a
one-level transition relation whose constraints only involve adjacent levels.
An infinite diagram of the shape exists exactly when the frontier graph has
an infinite path from an initial state, which for a finite graph means a
reachable cycle. The engine returns that cycle as a lasso (stem plus loop)
that can be re-checked square by square without trusting the search.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Hashable, Protocol

from .chains import FiniteChain, PeriodicAddress
from .errors import PreconditionError
from .modules import Module

State = Hashable
Edge = tuple  # (state, label, next_state)


class Shape(Protocol):
    def initial(self) -> list[State]: ...

    def successors(self, state: State) -> list[tuple[Any, State]]: ...

    def check_step(self, state: State, label: Any, nxt: State) -> bool: ...


@dataclass(frozen=True)
class LassoCertificate:
    stem: tuple[Edge, ...]
    cycle: tuple[Edge, ...]

    @property
    def start(self) -> State:
        return (self.stem or self.cycle)[0][0]

    def labels(self) -> tuple[list, list]:
        return [e[1] for e in self.stem], [e[1] for e in self.cycle]

    def verify(self, shape: Shape) -> bool:
        """Re-check every square of the stem and one full period of the loop."""
        if not self.cycle or self.start not in set(shape.initial()):
            return False
        path = list(self.stem) + list(self.cycle)
        for (s, _, t), (s2, _, _) in zip(path, path[1:]):
            if t != s2:
                return False
        if self.cycle[-1][2] != self.cycle[0][0]:
            return False
        return all(shape.check_step(s, lab, t) for s, lab, t in path)


class FrontierGraph:
    """Explicit graph of the states reachable from ``starts`` (default: the shape's initial states)."""

    def __init__(self, shape: Shape, starts=None, shuffle: random.Random | None = None):
        self.shape = shape
        self.starts = list(shape.initial() if starts is None else starts)
        self.edges: dict[State, list[tuple[Any, State]]] = {}
        order = list(self.starts)
        seen = set(order)
        i = 0
        while i < len(order):
            s = order[i]
            i += 1
            succ = list(shape.successors(s))
            if shuffle is not None:
                shuffle.shuffle(succ)
            self.edges[s] = succ
            for _, t in succ:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
        self.states = order

    def __len__(self) -> int:
        return len(self.states)

    def live_states(self) -> set:
        """States with an infinite path: repeatedly discard states whose successors are all gone."""
        live = set(self.states)
        changed = True
        while changed:
            changed = False
            for s in list(live):
                if not any(t in live for _, t in self.edges[s]):
                    live.discard(s)
                    changed = True
        return live

    def find_lasso(self) -> LassoCertificate | None:
        colour: dict[State, int] = {}
        for root in self.starts:
            if root in colour:
                continue
            colour[root] = 1
            stack = [(root, iter(self.edges[root]))]
            path: list[Edge] = []
            while stack:
                s, it = stack[-1]
                advanced = False
                for label, t in it:
                    c = colour.get(t, 0)
                    if c == 1:
                        edge = (s, label, t)
                        on_path = [e[0] for e in path]
                        k = on_path.index(t) if t in on_path else len(path)
                        return LassoCertificate(tuple(path[:k]), tuple(path[k:]) + (edge,))
                    if c == 0:
                        colour[t] = 1
                        path.append((s, label, t))
                        stack.append((t, iter(self.edges[t])))
                        advanced = True
                        break
                if not advanced:
                    colour[s] = 2
                    stack.pop()
                    if path:
                        path.pop()
        return None


@dataclass(frozen=True)
class OmegaResult:
    holds: bool
    certificate: LassoCertificate | None
    states: int


def has_infinite_path(shape: Shape, shuffle: random.Random | None = None) -> OmegaResult:
    g = FrontierGraph(shape, shuffle=shuffle)
    lasso = g.find_lasso()
    return OmegaResult(lasso is not None, lasso, len(g))


def truncation_nonempty(shape: Shape, depth: int) -> bool:
    """Is there a path of exactly ``depth`` steps? Plain layer-by-layer enumeration."""
    layer = set(shape.initial())
    for _ in range(depth):
        if not layer:
            return False
        layer = {t for s in layer for _, t in shape.successors(s)}
    return bool(layer)


def truncation_agrees(shape: Shape) -> bool:
    """Compare the cycle search against the depth 2|states|+1 truncation."""
    res = has_infinite_path(shape)
    return res.holds == truncation_nonempty(shape, 2 * res.states + 1)


# ---------------------------------------------------------------------------
# shapes for the solvability conditions


def _least_per_target(items):
    best: dict = {}
    for label, nxt in items:
        if nxt not in best or label < best[nxt]:
            best[nxt] = label
    return sorted(((lab, nxt) for nxt, lab in best.items()), key=lambda e: (e[1], e[0]))


def _lifts(mod: Module, f: str) -> dict[str, list[str]]:
    """For f: a -> b, group the elements m ∈ M(-, a) by f.m."""
    out: dict[str, list[str]] = {}
    for m in mod.into(mod.target.dom(f)):
        out.setdefault(mod.lact(f, m), []).append(m)
    return out


class TripleLadderShape:
    """Three chains a, b, a2 joined by vertical maps f_k: a_k -> b_k <- a2_k: f2_k.

    State is the bottom cospan (f_k, f2_k); a step picks m ∈ M(a_{k+1}, a_k),
    p ∈ M(b_{k+1}, b_k), m2 ∈ M(a2_{k+1}, a2_k) and the next cospan, with
    p.f_{k+1} = f_k.m and p.f2_{k+1} = f2_k.m2.
    """

    def __init__(self, mod: Module, starts):
        self.mod = mod
        self.starts = list(starts)
        self._lift_cache: dict = {}

    def initial(self):
        return list(self.starts)

    def _lift(self, f):
        if f not in self._lift_cache:
            self._lift_cache[f] = _lifts(self.mod, f)
        return self._lift_cache[f]

    def successors(self, state):
        f, f2 = state
        mod, cat = self.mod, self.mod.target
        lf, lf2 = self._lift(f), self._lift(f2)
        out = []
        for p in mod.into(cat.cod(f)):
            b1 = mod.dom(p)
            left = [(g, ms[0]) for g in cat.into(b1) if (ms := lf.get(mod.ract(p, g)))]
            right = [(g, ms[0]) for g in cat.into(b1) if (ms := lf2.get(mod.ract(p, g)))]
            for g, m in left:
                for g2, m2 in right:
                    out.append(((m, p, m2), (g, g2)))
        return _least_per_target(out)

    def check_step(self, state, label, nxt):
        mod, cat = self.mod, self.mod.target
        (f, f2), (m, p, m2), (g, g2) = state, label, nxt
        try:
            return (
                cat.cod(f) == cat.cod(f2) == mod.cod(p)
                and cat.cod(g) == cat.cod(g2) == mod.dom(p)
                and mod.hom_of[m] == (cat.dom(g), cat.dom(f))
                and mod.hom_of[m2] == (cat.dom(g2), cat.dom(f2))
                and mod.ract(p, g) == mod.lact(f, m)
                and mod.ract(p, g2) == mod.lact(f2, m2)
            )
        except KeyError:
            return False


class SerialPairShape:
    """Two chains a, b joined by a parallel pair f_k, f2_k: a_k -> b_k sharing the chain elements."""

    def __init__(self, mod: Module, starts):
        self.mod = mod
        self.starts = list(starts)

    def initial(self):
        return list(self.starts)

    def successors(self, state):
        f, f2 = state
        mod, cat = self.mod, self.mod.target
        a = cat.dom(f)
        out = []
        for p in mod.into(cat.cod(f)):
            b1 = mod.dom(p)
            for g in cat.into(b1):
                pg = mod.ract(p, g)
                for g2 in cat.hom(cat.dom(g), b1):
                    pg2 = mod.ract(p, g2)
                    for m in mod.over(cat.dom(g), a):
                        if mod.lact(f, m) == pg and mod.lact(f2, m) == pg2:
                            out.append(((m, p), (g, g2)))
                            break
        return _least_per_target(out)

    def check_step(self, state, label, nxt):
        mod, cat = self.mod, self.mod.target
        (f, f2), (m, p), (g, g2) = state, label, nxt
        try:
            return (
                cat.morphisms[f] == cat.morphisms[f2]
                and cat.morphisms[g] == cat.morphisms[g2]
                and mod.hom_of[p] == (cat.cod(g), cat.cod(f))
                and mod.hom_of[m] == (cat.dom(g), cat.dom(f))
                and mod.ract(p, g) == mod.lact(f, m)
                and mod.ract(p, g2) == mod.lact(f2, m)
            )
        except KeyError:
            return False


def _square_completes(cat, f, f2) -> bool:
    return any(
        cat.then(g, f) == cat.then(g2, f2)
        for g in cat.into(cat.dom(f))
        for g2 in cat.hom(cat.dom(g), cat.dom(f2))
    )


def _fork_exists(cat, f, f2) -> bool:
    return any(cat.then(g, f) == cat.then(g, f2) for g in cat.into(cat.dom(f)))


def open_cospans(cat) -> list[tuple[str, str]]:
    """Cospans f, f2 with f <= f2 that admit no commuting square."""
    out = []
    for b in cat.objects:
        into = cat.into(b)
        for i, f in enumerate(into):
            for f2 in into[i:]:
                if not _square_completes(cat, f, f2):
                    out.append((f, f2))
    return out


def open_pairs(cat) -> list[tuple[str, str]]:
    """Parallel pairs f < f2 that no map equalises."""
    out = []
    for f in cat.sorted_morphisms:
        for f2 in cat.hom(*cat.morphisms[f]):
            if f < f2 and not _fork_exists(cat, f, f2):
                out.append((f, f2))
    return out


@dataclass(frozen=True)
class ConditionVerdict:
    holds: bool
    witness: tuple[str, str] | None
    certificate: LassoCertificate | None
    states: int
    shape: Any = None


@dataclass(frozen=True)
class SolvabilityVerdict:
    holds: bool
    s1: ConditionVerdict
    s2: ConditionVerdict

    @property
    def witness(self):
        if not self.s1.holds:
            return ("S1", self.s1.witness)
        if not self.s2.holds:
            return ("S2", self.s2.witness)
        return None


def _require_nondegenerate(system):
    if not system.nondegenerate:
        w = system.nondegeneracy.witness
        raise PreconditionError(f"module is degenerate ({w.describe()})")


def _condition(shape) -> ConditionVerdict:
    res = has_infinite_path(shape)
    if res.holds:
        return ConditionVerdict(False, res.certificate.start, res.certificate, res.states, shape)
    return ConditionVerdict(True, None, None, res.states, shape)


def check_S1(system) -> ConditionVerdict:
    """No open cospan carries an infinite commuting triple ladder."""
    _require_nondegenerate(system)
    return _condition(TripleLadderShape(system.module, open_cospans(system.category)))


def check_S2(system) -> ConditionVerdict:
    """No unequalised parallel pair carries an infinite serially commuting ladder."""
    _require_nondegenerate(system)
    return _condition(SerialPairShape(system.module, open_pairs(system.category)))


def check_solvable(system) -> SolvabilityVerdict:
    s1, s2 = check_S1(system), check_S2(system)
    return SolvabilityVerdict(s1.holds and s2.holds, s1, s2)


# ---------------------------------------------------------------------------
# span-shaped queries between chains


class AddressLeg:
    """A leg that must follow a fixed address; its state is the position in the address."""

    def __init__(self, address: PeriodicAddress):
        self.address = address

    def start(self):
        return 0

    def options(self, mod, state, obj):
        t = self.address
        return [(t.position_element(state), t.next_position(state))]


class PrefixLeg:
    """A leg that follows a finite prefix and then continues freely."""

    def __init__(self, chain: FiniteChain):
        self.chain = chain

    def start(self):
        return 0

    def options(self, mod, state, obj):
        n = len(self.chain)
        if state < n:
            return [(self.chain.elements[state], state + 1)]
        return [(m, n) for m in mod.into(obj)]


class SpanShape:
    """An apex chain c mapping by ladders into two legs anchored at the same object.

    State is (g_k, g2_k, leg state, leg state) where g_k: c_k -> a_k and
    g2_k: c_k -> a2_k. A step picks q ∈ M(c_{k+1}, c_k), the next leg
    elements m, m2 and verticals with m.g_{k+1} = g_k.q and m2.g2_{k+1} = g2_k.q.
    """

    def __init__(self, mod: Module, anchor: str, leg1, leg2, starts=None):
        self.mod = mod
        self.anchor = anchor
        self.leg1, self.leg2 = leg1, leg2
        i = mod.target.identities[anchor]
        self.starts = list(starts) if starts is not None else [(i, i, leg1.start(), leg2.start())]

    def initial(self):
        return list(self.starts)

    def _leg_moves(self, leg, g, s, gq, c1):
        mod, cat = self.mod, self.mod.target
        out = []
        for m, s1 in leg.options(mod, s, cat.cod(g)):
            for g1 in cat.hom(c1, mod.dom(m)):
                if mod.ract(m, g1) == gq:
                    out.append((m, g1, s1))
        return out

    def successors(self, state):
        g, g2, s, s2 = state
        mod, cat = self.mod, self.mod.target
        out = []
        for q in mod.into(cat.dom(g)):
            c1 = mod.dom(q)
            left = self._leg_moves(self.leg1, g, s, mod.lact(g, q), c1)
            if not left:
                continue
            right = self._leg_moves(self.leg2, g2, s2, mod.lact(g2, q), c1)
            for m, g1, s1 in left:
                for m2, h1, t1 in right:
                    out.append(((q, m, m2), (g1, h1, s1, t1)))
        return _least_per_target(out)

    def check_step(self, state, label, nxt):
        mod, cat = self.mod, self.mod.target
        (g, g2, s, s2), (q, m, m2), (g1, h1, s1, t1) = state, label, nxt
        try:
            if (m, s1) not in self.leg1.options(mod, s, cat.cod(g)):
                return False
            if (m2, t1) not in self.leg2.options(mod, s2, cat.cod(g2)):
                return False
            return (
                cat.dom(g) == cat.dom(g2) == mod.cod(q)
                and cat.dom(g1) == cat.dom(h1) == mod.dom(q)
                and mod.hom_of[m] == (cat.cod(g1), cat.cod(g))
                and mod.hom_of[m2] == (cat.cod(h1), cat.cod(g2))
                and mod.ract(m, g1) == mod.lact(g, q)
                and mod.ract(m2, h1) == mod.lact(g2, q)
            )
        except KeyError:
            return False


def apex_address(anchor: str, cert: LassoCertificate) -> PeriodicAddress:
    """The apex chain of a span certificate, read off the chosen q's."""
    stem, loop = cert.labels()
    return PeriodicAddress(anchor, tuple(lab[0] for lab in stem), tuple(lab[0] for lab in loop))
