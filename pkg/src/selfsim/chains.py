"""Finite chains and eventually periodic addresses of module elements.

A chain anchored at a0 is a sequence m1, m2, ... with m_i ∈ M(a_i, a_{i-1}).
Addresses are infinite chains given as a preperiod followed by a repeated
period, written ``pre=[m1,m2] period=[p1] at OBJECT``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import AddressError
from .modules import Module


def chain_objects(mod: Module, anchor: str, elements) -> list[str]:
    """Objects a0, a1, ... visited by the elements; raises on a type mismatch."""
    objs = [anchor]
    for i, m in enumerate(elements):
        if m not in mod.hom_of:
            raise AddressError(f"unknown module element {m!r}")
        b, a = mod.hom_of[m]
        if a != objs[-1]:
            raise AddressError(f"element {m!r} at position {i + 1} lands in {a}, expected {objs[-1]}")
        objs.append(b)
    return objs


@dataclass(frozen=True, order=True)
class FiniteChain:
    anchor: str
    elements: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def objects(self, mod: Module) -> list[str]:
        return chain_objects(mod, self.anchor, self.elements)

    def end(self, mod: Module) -> str:
        return self.objects(mod)[-1]

    def truncate(self, n: int) -> "FiniteChain":
        return FiniteChain(self.anchor, self.elements[:n])

    def __str__(self) -> str:
        return " ".join(self.elements) if self.elements else f"(empty at {self.anchor})"


@dataclass(frozen=True, order=True)
class PeriodicAddress:
    anchor: str
    pre: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self):
        if not self.period:
            raise AddressError("an address needs a nonempty period")

    def check(self, mod: Module) -> "PeriodicAddress":
        objs = chain_objects(mod, self.anchor, self.pre + self.period)
        loop_start = objs[len(self.pre)]
        if objs[-1] != loop_start:
            raise AddressError(
                f"period starts at {loop_start} but ends at {objs[-1]}, so it cannot repeat"
            )
        return self

    def element(self, i: int) -> str:
        """m_{i+1}, the element leaving level i."""
        p = len(self.pre)
        return self.pre[i] if i < p else self.period[(i - p) % len(self.period)]

    def prefix(self, n: int) -> FiniteChain:
        return FiniteChain(self.anchor, tuple(self.element(i) for i in range(n)))

    @property
    def positions(self) -> int:
        return len(self.pre) + len(self.period)

    def next_position(self, p: int) -> int:
        return p + 1 if p + 1 < self.positions else len(self.pre)

    def position_element(self, p: int) -> str:
        return (self.pre + self.period)[p]

    def unroll(self, k: int) -> "PeriodicAddress":
        """Same chain with at least ``k`` elements in the preperiod."""
        pre, per = list(self.pre), list(self.period)
        while len(pre) < k:
            pre.append(per[0])
            per = per[1:] + per[:1]
        return PeriodicAddress(self.anchor, tuple(pre), tuple(per))

    def tail(self, mod: Module) -> "PeriodicAddress":
        u = self.unroll(1)
        return PeriodicAddress(mod.dom(u.pre[0]), u.pre[1:], u.period)

    def normalized(self) -> "PeriodicAddress":
        """Shortest preperiod and primitive period describing the same chain."""
        per = self.period
        n = len(per)
        for d in range(1, n + 1):
            if n % d == 0 and per[:d] * (n // d) == per:
                per = per[:d]
                break
        pre = list(self.pre)
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = per[-1:] + per[:-1]
        return PeriodicAddress(self.anchor, tuple(pre), tuple(per))

    def __str__(self) -> str:
        return f"pre=[{','.join(self.pre)}] period=[{','.join(self.period)}] at {self.anchor}"


def prepend(mod: Module, m: str, t: PeriodicAddress) -> PeriodicAddress:
    if mod.dom(m) != t.anchor:
        raise AddressError(f"{m} does not start at {t.anchor}")
    return PeriodicAddress(mod.cod(m), (m,) + t.pre, t.period)


def push(mod: Module, f: str, t: PeriodicAddress) -> PeriodicAddress:
    """Image of t under the morphism f: the first element m1 becomes f.m1."""
    u = t.unroll(1)
    m = mod.lact(f, u.pre[0])
    return PeriodicAddress(mod.cod(m), (m,) + u.pre[1:], u.period)


def _split_top(body: str, where: str) -> list[str]:
    items, depth, cur = [], 0, []
    for ch in body:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise AddressError(f"unbalanced brackets in {where}")
        if ch == "," and depth == 0:
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise AddressError(f"unbalanced brackets in {where}")
    last = "".join(cur).strip()
    if last or items:
        items.append(last)
    if any(not it for it in items):
        raise AddressError(f"empty element in {where}")
    return items


def _take_list(text: str, key: str) -> tuple[list[str] | None, str]:
    text = text.lstrip()
    if not text.startswith(key + "=["):
        return None, text
    i = len(key) + 2
    depth = 1
    j = i
    while j < len(text) and depth:
        if text[j] in "[(":
            depth += 1
        elif text[j] in "])":
            depth -= 1
        j += 1
    if depth:
        raise AddressError(f"unterminated {key}=[...] list")
    return _split_top(text[i:j - 1], key), text[j:]


def parse_address(text: str, mod: Module | None = None) -> PeriodicAddress:
    """Parse ``pre=[m1,m2,...] period=[p1,...] at OBJECT`` and type-check it against ``mod``."""
    pre, rest = _take_list(text, "pre")
    period, rest = _take_list(rest, "period")
    if period is None:
        raise AddressError("address literal needs period=[...]")
    rest = rest.strip()
    if not rest.startswith("at ") or not rest[3:].strip():
        raise AddressError("address literal must end with 'at OBJECT'")
    anchor = rest[3:].strip()
    addr = PeriodicAddress(anchor, tuple(pre or ()), tuple(period))
    if mod is not None:
        addr.check(mod)
    return addr


def parse_chain(text: str, anchor: str, mod: Module | None = None) -> FiniteChain:
    chain = FiniteChain(anchor, tuple(text.split()))
    if mod is not None:
        chain.objects(mod)
    return chain
