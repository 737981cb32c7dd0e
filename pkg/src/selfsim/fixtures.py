"""Built-in systems, addressable from the command line as ``@name``.

``freyd`` is the unit interval presented by two halves glued at the
midpoint. ``julia`` is a reconstruction: only some of its hom-set sizes are
pinned down by the source figures, and the gluing pattern is a plausible
choice consistent with those sizes.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .chains import PeriodicAddress
from .dsl import SystemDocument, parse_system, print_system
from .errors import AddressError
from .fincat import FinCategory, SetValuedFunctor
from .modules import Module, hom_module

LOWER = "[0,1/2]"
UPPER = "[1/2,1]"
POINT_OFFSETS = {"0": Fraction(0), "1/2": Fraction(1, 2), "1": Fraction(1)}

FREYD = """\
# the unit interval as two halves glued at the midpoint
category A
objects: 0 1
morphisms:
  sigma : 0 -> 1
  tau : 0 -> 1
compose:

module M over A
elements:
  M(0,0): id
  M(0,1): 0 1/2 1
  M(1,1): [0,1/2] [1/2,1]
left:
  sigma . id = 0
  tau . id = 1
right:
  [0,1/2] . sigma = 0
  [0,1/2] . tau = 1/2
  [1/2,1] . sigma = 1/2
  [1/2,1] . tau = 1

# three points: both ends and the midpoint
functor X on A
X(0): *
X(1): a b c
map sigma: * -> a
map tau: * -> c

coalgebra midpoint on X
xi(0)[*] = id (x) *
xi(1)[a] = [0,1/2] (x) a
xi(1)[b] = 1/2 (x) *
xi(1)[c] = [1/2,1] (x) c

# the doubling map on 0, 1/3, 2/3, 1
functor T on A
T(0): *
T(1): p0 p1/3 p2/3 p1
map sigma: * -> p0
map tau: * -> p1

coalgebra thirds on T
xi(0)[*] = id (x) *
xi(1)[p0] = [0,1/2] (x) p0
xi(1)[p1/3] = [0,1/2] (x) p2/3
xi(1)[p2/3] = [1/2,1] (x) p1/3
xi(1)[p1] = [1/2,1] (x) p1

# like the midpoint coalgebra plus a point d that resolves to 0 without being glued to it
functor Y on A
Y(0): *
Y(1): a b c d
map sigma: * -> a
map tau: * -> c

coalgebra detached on Y
xi(0)[*] = id (x) *
xi(1)[a] = [0,1/2] (x) a
xi(1)[b] = 1/2 (x) *
xi(1)[c] = [1/2,1] (x) c
xi(1)[d] = [0,1/2] (x) d
"""

DISCRETE_AB = """\
# B = A + B over a discrete base: points are "drop after n steps" or "never drop"
category D
objects: 0 1
morphisms:
compose:

module M over D
elements:
  M(0,0): aa
  M(0,1): ab
  M(1,1): bb
left:
right:

functor N on D
N(0): u
N(1): n0 n1 n2 w

coalgebra counter on N
xi(0)[u] = aa (x) u
xi(1)[n0] = ab (x) u
xi(1)[n1] = bb (x) n0
xi(1)[n2] = bb (x) n1
xi(1)[w] = bb (x) w
"""


def _doc(name, cat, mod, functors=(), coalgebras=None) -> SystemDocument:
    return SystemDocument(name, cat, mod, {f.name: f for f in functors}, dict(coalgebras or {}))


def _functor(cat, name, elements, maps):
    return SetValuedFunctor.build(cat, elements, maps, name=name)


def parallel_hom() -> SystemDocument:
    cat = FinCategory.build(["0", "1"], {"sigma": ("0", "1"), "tau": ("0", "1")})
    segment = _functor(cat, "Segment", {"0": ["*"], "1": ["l", "r"]}, {("sigma", "*"): "l", ("tau", "*"): "r"})
    loop = _functor(cat, "Loop", {"0": ["*"], "1": ["l"]}, {("sigma", "*"): "l", ("tau", "*"): "l"})
    return _doc("P", cat, hom_module(cat), [segment, loop])


def arrow() -> SystemDocument:
    cat = FinCategory.build(["0", "1"], {"s": ("0", "1")})
    inj = _functor(cat, "Inj", {"0": ["x", "y"], "1": ["x1", "y1", "z1"]}, {("s", "x"): "x1", ("s", "y"): "y1"})
    collapse = _functor(cat, "Collapse", {"0": ["x", "y"], "1": ["z"]}, {("s", "x"): "z", ("s", "y"): "z"})
    return _doc("Arrow", cat, hom_module(cat), [inj, collapse])


def cofork() -> SystemDocument:
    cat = FinCategory.build(
        ["0", "1", "2"],
        {"sigma": ("0", "1"), "tau": ("0", "1"), "rho": ("1", "2"), "rs": ("0", "2")},
        {("sigma", "rho"): "rs", ("tau", "rho"): "rs"},
    )
    circle = _functor(
        cat, "Circle", {"0": ["*"], "1": ["e0", "e1"], "2": ["p"]},
        {("sigma", "*"): "e0", ("tau", "*"): "e1", ("rho", "e0"): "p", ("rho", "e1"): "p", ("rs", "*"): "p"},
    )
    pinched = _functor(
        cat, "Pinched", {"0": ["*"], "1": ["e0", "e1", "u"], "2": ["p"]},
        {("sigma", "*"): "e0", ("tau", "*"): "e1", ("rho", "e0"): "p", ("rho", "e1"): "p",
         ("rho", "u"): "p", ("rs", "*"): "p"},
    )
    return _doc("Cofork", cat, hom_module(cat), [circle, pinched])


def coglobular3() -> SystemDocument:
    cat = FinCategory.build(
        ["0", "1", "2"],
        {"s1": ("0", "1"), "t1": ("0", "1"), "s2": ("1", "2"), "t2": ("1", "2"), "ss": ("0", "2"), "st": ("0", "2")},
        {("s1", "s2"): "ss", ("s1", "t2"): "ss", ("t1", "s2"): "st", ("t1", "t2"): "st"},
    )
    globe = _functor(
        cat, "Globe", {"0": ["p"], "1": ["u", "v"], "2": ["A", "B"]},
        {("s1", "p"): "u", ("t1", "p"): "v", ("s2", "u"): "A", ("t2", "u"): "A",
         ("s2", "v"): "B", ("t2", "v"): "B", ("ss", "p"): "A", ("st", "p"): "B"},
    )
    squashed = _functor(
        cat, "Squashed", {"0": ["p"], "1": ["u"], "2": ["A"]},
        {("s1", "p"): "u", ("t1", "p"): "u", ("s2", "u"): "A", ("t2", "u"): "A", ("ss", "p"): "A", ("st", "p"): "A"},
    )
    return _doc("Glob", cat, hom_module(cat), [globe, squashed])


def julia() -> SystemDocument:
    """Reconstructed four-object system with hom-set sizes 8, 0, 2, 1 into object 2."""
    arrows = {f"p{i}": ("0", "2") for i in range(1, 5)}
    arrows.update({f"q{i}": ("0", "3") for i in range(1, 5)})
    cat = FinCategory.build(["0", "1", "2", "3"], arrows)
    elements = {
        ("0", "0"): ["id"],
        ("2", "1"): ["T", "B"],
        ("0", "1"): ["j1", "j2", "j3", "j4"],
        ("2", "2"): ["L", "R"],
        ("3", "2"): ["K"],
        ("0", "2"): [f"u{i}" for i in range(1, 9)],
        ("3", "3"): ["L3", "R3"],
        ("0", "3"): [f"v{i}" for i in range(1, 7)],
    }
    right = {}
    for i in range(1, 5):
        right[("T", f"p{i}")] = right[("B", f"p{i}")] = f"j{i}"
    right.update({("L", "p1"): "u1", ("R", "p1"): "u2", ("L", "p4"): "u3", ("R", "p4"): "u3",
                  ("L", "p3"): "u4", ("R", "p3"): "u4", ("L", "p2"): "u5", ("K", "q2"): "u5",
                  ("R", "p2"): "u6", ("K", "q3"): "u6", ("K", "q1"): "u7", ("K", "q4"): "u8"})
    right.update({("L3", "q1"): "v1", ("R3", "q1"): "v1", ("L3", "q4"): "v2", ("R3", "q4"): "v2",
                  ("L3", "q2"): "v3", ("L3", "q3"): "v4", ("R3", "q2"): "v5", ("R3", "q3"): "v6"})
    left = {("p1", "id"): "u1", ("p2", "id"): "u7", ("p3", "id"): "u8", ("p4", "id"): "u2",
            ("q1", "id"): "v3", ("q2", "id"): "v4", ("q3", "id"): "v6", ("q4", "id"): "v5"}
    return _doc("J", cat, Module.build(cat, cat, elements, left, right, name="M"))


def point() -> SystemDocument:
    cat = FinCategory.build(["0"])
    mod = Module.build(cat, cat, {("0", "0"): ["m"]}, name="M")
    one = _functor(cat, "One", {"0": ["pt"]}, {})
    return _doc("Pt", cat, mod, [one], {"loop": ("One", {("0", "pt"): ("m", "pt")})})


BUILDERS = {
    "freyd": lambda: parse_system(FREYD),
    "discrete-ab": lambda: parse_system(DISCRETE_AB),
    "parallel-hom": parallel_hom,
    "arrow": arrow,
    "cofork": cofork,
    "coglobular3": coglobular3,
    "julia": julia,
    "point": point,
}

# builtins whose tables are a plausible completion of partial data rather than given outright
RECONSTRUCTED = frozenset({"julia"})


@lru_cache(maxsize=None)
def fixture_text(name: str) -> str:
    if name not in BUILDERS:
        raise KeyError(f"unknown fixture @{name}; known: {', '.join(sorted(BUILDERS))}")
    return print_system(BUILDERS[name]())


def load_fixture(name: str) -> SystemDocument:
    """A fresh parsed copy of a builtin, always going through the text format."""
    return parse_system(fixture_text(name))


@lru_cache(maxsize=None)
def fixture_system(name: str):
    return load_fixture(name).system(name)


def mutated_freyd() -> SystemDocument:
    """Freyd with tau.id = 0, so the row M(0, -) identifies the two ends."""
    text = FREYD.replace("tau . id = 1", "tau . id = 0")
    return parse_system(text)


# ---------------------------------------------------------------------------
# dyadic decoding


def decode_dyadic(addr: PeriodicAddress, at_zero: str = "sigma") -> Fraction:
    """Exact value in [0, 1] of an address in the Freyd system.

    Halves are read as binary digits from the anchor outwards; a point
    element pins the value to an end or the middle of the current interval.
    The single point over object 0 is sent to 0 along sigma or to 1 along tau.
    """
    if addr.anchor == "0":
        if at_zero not in ("sigma", "tau"):
            raise ValueError("at_zero must be 'sigma' or 'tau'")
        return Fraction(0) if at_zero == "sigma" else Fraction(1)
    lo, width = Fraction(0), Fraction(1)
    digits = {LOWER: 0, UPPER: 1}
    for m in addr.pre:
        if m in POINT_OFFSETS:
            return lo + width * POINT_OFFSETS[m]
        if m not in digits:
            raise AddressError(f"{m} is not a Freyd element over object 1")
        width /= 2
        lo += width * digits[m]
    if any(m not in digits for m in addr.period):
        raise AddressError("the period of a Freyd address at 1 must consist of halves")
    n = len(addr.period)
    value = 0
    for m in addr.period:
        value = 2 * value + digits[m]
    return lo + width * Fraction(value, 2 ** n - 1)


def freyd_address_pool(max_pre: int = 3, max_period: int = 2) -> list[PeriodicAddress]:
    """Every Freyd address at 1 with short preperiod and period, normalised and deduplicated."""
    longest = max(max_pre, max_period)
    words = [w for k in range(longest + 1) for w in product((LOWER, UPPER), repeat=k)]
    pool = set()
    for pre in (w for w in words if len(w) <= max_pre):
        for per in (w for w in words if 1 <= len(w) <= max_period):
            pool.add(PeriodicAddress("1", pre, per).normalized())
        for pt in POINT_OFFSETS:
            pool.add(PeriodicAddress("1", pre + (pt,), ("id",)).normalized())
    return sorted(pool)
