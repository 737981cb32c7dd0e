"""Text format for finite systems, functors and coalgebras.

Example::

    category A
    objects: 0 1
    morphisms:
      sigma : 0 -> 1
    compose:
      # g o f = h, only for non-identity composable pairs

    module M over A
    elements:
      M(0,0): id
      M(0,1): left right
    left:
      sigma . id = left

    functor X on A
    X(0): *
    X(1): p
    map sigma: * -> p

    coalgebra xi on X
    xi(0)[*] = id (x) *

Identity morphisms are implicit and named ``id_<object>``; lines giving
their composites or actions are rejected. ``#`` starts a comment.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import SelfSimError
from .fincat import FinCategory, SetValuedFunctor
from .modules import Module, SelfSimilaritySystem
from .universal import Coalgebra


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class DSLError(SelfSimError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = sorted(diagnostics, key=lambda d: (d.line, d.col, d.message))
        super().__init__("\n".join(str(d) for d in self.diagnostics))


@dataclass
class SystemDocument:
    category_name: str
    category: FinCategory
    module: Module
    functors: dict[str, SetValuedFunctor]
    coalgebras: dict[str, tuple[str, dict]]  # name -> (functor name, structure)
    positions: dict = field(default_factory=dict, compare=False, repr=False)

    def system(self, name: str = "system") -> SelfSimilaritySystem:
        return SelfSimilaritySystem(self.category, self.module, name=name)

    def coalgebra(self, name: str, system: SelfSimilaritySystem | None = None) -> Coalgebra:
        fname, structure = self.coalgebras[name]
        return Coalgebra(system or self.system(), self.functors[fname], dict(structure), name)

    def to_text(self) -> str:
        return print_system(self)


_R = {
    "category": re.compile(r"category\s+(\S+)$"),
    "objects": re.compile(r"objects:(.*)$"),
    "section": re.compile(r"(morphisms|compose|elements|left|right):$"),
    "arrow": re.compile(r"(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$"),
    "compose": re.compile(r"(\S+)\s+o\s+(\S+)\s*=\s*(\S+)$"),
    "module": re.compile(r"module\s+(\S+)\s+over\s+(\S+)$"),
    "hom": re.compile(r"([^\s(]+)\(([^\s(),]+),([^\s(),]+)\):(.*)$"),
    "act": re.compile(r"(\S+)\s+\.\s+(\S+)\s*=\s*(\S+)$"),
    "functor": re.compile(r"functor\s+(\S+)\s+on\s+(\S+)$"),
    "fiber": re.compile(r"([^\s(]+)\(([^\s()]+)\):(.*)$"),
    "map": re.compile(r"map\s+(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)$"),
    "coalgebra": re.compile(r"coalgebra\s+(\S+)\s+on\s+(\S+)$"),
    "xi": re.compile(r"xi\(([^\s()]+)\)\[(.+)\]\s*=\s*(\S+)\s+\(x\)\s+(\S+)$"),
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.errors: list[Diagnostic] = []
        self.positions: dict = {}
        self.cat_name = None
        self.cat_pos = None
        self.objects: list[str] = []
        self.arrows: dict[str, tuple[str, str]] = {}
        self.composites: dict[tuple[str, str], str] = {}
        self.mod_name = None
        self.mod_pos = None
        self.elements: dict[tuple[str, str], list[str]] = {}
        self.elem_hom: dict[str, tuple[str, str]] = {}
        self.left: dict = {}
        self.right: dict = {}
        self.functors: dict[str, dict] = {}
        self.coalgebras: dict[str, dict] = {}

    def err(self, line, col, msg):
        self.errors.append(Diagnostic(line, col, msg))

    # -- lookups
    def morphism_type(self, f):
        if f in self.arrows:
            return self.arrows[f]
        if f.startswith("id_") and f[3:] in self.objects:
            return (f[3:], f[3:])
        return None

    def run(self) -> SystemDocument:
        block, section, cur = None, None, None
        lines = self.text.splitlines()
        for ln, raw in enumerate(lines, start=1):
            body = raw.split("#", 1)[0].rstrip()
            stripped = body.lstrip()
            if not stripped:
                continue
            off = len(body) - len(stripped) + 1

            def col(m, g):
                return off + m.start(g)

            head = stripped.split()[0]
            if head in ("category", "module", "functor", "coalgebra"):
                m = _R[head].match(stripped)
                if not m:
                    self.err(ln, off, f"malformed {head} header")
                    block, section, cur = "skip", None, None
                    continue
                block, section = head, None
                cur = getattr(self, f"open_{head}")(m, ln, col)
                continue
            if block is None:
                self.err(ln, off, "expected a category, module, functor or coalgebra block")
                continue
            if block == "skip":
                continue
            ms = _R["section"].match(stripped)
            if ms:
                allowed = {"category": ("morphisms", "compose"), "module": ("elements", "left", "right")}
                if ms.group(1) not in allowed.get(block, ()):
                    self.err(ln, off, f"section {ms.group(1)}: is not allowed in a {block} block")
                    section = "skip"
                else:
                    section = ms.group(1)
                continue
            getattr(self, f"line_{block}")(stripped, section, cur, ln, col, off)
        self.finish(len(lines) + 1)
        if self.errors:
            raise DSLError(self.errors)
        return self.document()

    # -- category
    def open_category(self, m, ln, col):
        if self.cat_name is not None:
            self.err(ln, col(m, 0), "only one category block is allowed")
            return None
        self.cat_name, self.cat_pos = m.group(1), (ln, col(m, 1))
        self.positions["category"] = self.cat_pos
        return m.group(1)

    def line_category(self, s, section, cur, ln, col, off):
        if cur is None:
            return
        m = _R["objects"].match(s)
        if m and section is None:
            for t in re.finditer(r"\S+", m.group(1)):
                o = t.group(0)
                if o in self.objects:
                    self.err(ln, col(m, 1) + t.start(), f"duplicate object {o}")
                else:
                    self.objects.append(o)
            return
        if section == "morphisms":
            m = _R["arrow"].match(s)
            if not m:
                return self.err(ln, off, "expected 'name : object -> object'")
            f, d, c = m.groups()
            if f in self.arrows or f.startswith("id_"):
                return self.err(ln, col(m, 1), f"duplicate or reserved morphism name {f}")
            for g, o in ((2, d), (3, c)):
                if o not in self.objects:
                    return self.err(ln, col(m, g), f"unknown object {o}")
            self.arrows[f] = (d, c)
            self.positions[("morphism", f)] = (ln, col(m, 1))
            return
        if section == "compose":
            m = _R["compose"].match(s)
            if not m:
                return self.err(ln, off, "expected 'g o f = h'")
            g, f, h = m.groups()
            types = []
            for grp, name in ((1, g), (2, f), (3, h)):
                t = self.morphism_type(name)
                if t is None:
                    return self.err(ln, col(m, grp), f"unknown morphism {name}")
                if name not in self.arrows and grp != 3:
                    return self.err(ln, col(m, grp), "composites with identities are implicit")
                types.append(t)
            (gd, gc), (fd, fc), ht = types
            if fc != gd:
                return self.err(ln, col(m, 1), f"{g} o {f} is not composable")
            if ht != (fd, gc):
                return self.err(ln, col(m, 3), f"{h} does not have type {fd} -> {gc}")
            if (f, g) in self.composites:
                return self.err(ln, col(m, 1), f"duplicate composite {g} o {f}")
            self.composites[(f, g)] = h
            return
        self.err(ln, off, "unexpected line in category block")

    # -- module
    def open_module(self, m, ln, col):
        if self.mod_name is not None:
            self.err(ln, col(m, 0), "only one module block is allowed")
            return None
        if m.group(2) != self.cat_name:
            self.err(ln, col(m, 2), f"unknown category {m.group(2)}")
            return None
        self.mod_name, self.mod_pos = m.group(1), (ln, col(m, 1))
        self.positions["module"] = self.mod_pos
        return m.group(1)

    def line_module(self, s, section, cur, ln, col, off):
        if cur is None:
            return
        if section in (None, "elements"):
            m = _R["hom"].match(s)
            if not m:
                return self.err(ln, off, "expected 'M(b,a): elements'")
            if m.group(1) not in (cur, "M"):
                return self.err(ln, col(m, 1), f"expected {cur}(b,a)")
            b, a = m.group(2), m.group(3)
            for g, o in ((2, b), (3, a)):
                if o not in self.objects:
                    return self.err(ln, col(m, g), f"unknown object {o}")
            if (b, a) in self.elements:
                return self.err(ln, col(m, 1), f"{cur}({b},{a}) listed twice")
            self.elements[(b, a)] = []
            for t in re.finditer(r"\S+", m.group(4)):
                e = t.group(0)
                if e in self.elem_hom:
                    self.err(ln, col(m, 4) + t.start(), f"duplicate element {e}")
                    continue
                self.elem_hom[e] = (b, a)
                self.elements[(b, a)].append(e)
            return
        m = _R["act"].match(s)
        if not m:
            return self.err(ln, off, "expected 'x . y = z'")
        if section == "left":
            f, e, r = m.groups()
            ft = self.morphism_type(f)
            if ft is None:
                return self.err(ln, col(m, 1), f"unknown morphism {f}")
            if f not in self.arrows:
                return self.err(ln, col(m, 1), "identity actions are implicit")
            if e not in self.elem_hom:
                return self.err(ln, col(m, 2), f"unknown element {e}")
            b, a = self.elem_hom[e]
            if ft[0] != a:
                return self.err(ln, col(m, 2), f"{e} lies over {a}, but {f} starts at {ft[0]}")
            if self.elem_hom.get(r) != (b, ft[1]):
                return self.err(ln, col(m, 3), f"{r} is not an element of {cur}({b},{ft[1]})")
            if (f, e) in self.left:
                return self.err(ln, col(m, 1), f"duplicate left action {f} . {e}")
            self.left[(f, e)] = r
        else:
            e, g, r = m.groups()
            gt = self.morphism_type(g)
            if gt is None:
                return self.err(ln, col(m, 2), f"unknown morphism {g}")
            if g not in self.arrows:
                return self.err(ln, col(m, 2), "identity actions are implicit")
            if e not in self.elem_hom:
                return self.err(ln, col(m, 1), f"unknown element {e}")
            b, a = self.elem_hom[e]
            if gt[1] != b:
                return self.err(ln, col(m, 2), f"{g} ends at {gt[1]}, but {e} starts at {b}")
            if self.elem_hom.get(r) != (gt[0], a):
                return self.err(ln, col(m, 3), f"{r} is not an element of {cur}({gt[0]},{a})")
            if (e, g) in self.right:
                return self.err(ln, col(m, 1), f"duplicate right action {e} . {g}")
            self.right[(e, g)] = r

    # -- functor
    def open_functor(self, m, ln, col):
        name, cat = m.groups()
        if cat != self.cat_name:
            self.err(ln, col(m, 2), f"unknown category {cat}")
            return None
        if name in self.functors:
            self.err(ln, col(m, 1), f"duplicate functor {name}")
            return None
        self.functors[name] = {"elements": {}, "action": {}}
        self.positions[("functor", name)] = (ln, col(m, 1))
        return name

    def line_functor(self, s, section, cur, ln, col, off):
        if cur is None:
            return
        fx = self.functors[cur]
        m = _R["map"].match(s)
        if m:
            f, x, y = m.groups()
            ft = self.morphism_type(f)
            if ft is None:
                return self.err(ln, col(m, 1), f"unknown morphism {f}")
            if f not in self.arrows:
                return self.err(ln, col(m, 1), "identity maps are implicit")
            if x not in fx["elements"].get(ft[0], ()):
                return self.err(ln, col(m, 2), f"{x} is not an element of {cur}({ft[0]})")
            if y not in fx["elements"].get(ft[1], ()):
                return self.err(ln, col(m, 3), f"{y} is not an element of {cur}({ft[1]})")
            if (f, x) in fx["action"]:
                return self.err(ln, col(m, 1), f"duplicate map {f} on {x}")
            fx["action"][(f, x)] = y
            return
        m = _R["fiber"].match(s)
        if not m:
            return self.err(ln, off, f"expected '{cur}(object): elements' or 'map f: x -> y'")
        if m.group(1) not in (cur, "X"):
            return self.err(ln, col(m, 1), f"expected {cur}(object)")
        a = m.group(2)
        if a not in self.objects:
            return self.err(ln, col(m, 2), f"unknown object {a}")
        if a in fx["elements"]:
            return self.err(ln, col(m, 1), f"{cur}({a}) listed twice")
        items = []
        for t in re.finditer(r"\S+", m.group(3)):
            if t.group(0) in items:
                self.err(ln, col(m, 3) + t.start(), f"duplicate element {t.group(0)}")
            else:
                items.append(t.group(0))
        fx["elements"][a] = items

    # -- coalgebra
    def open_coalgebra(self, m, ln, col):
        name, fname = m.groups()
        if fname not in self.functors:
            self.err(ln, col(m, 2), f"unknown functor {fname}")
            return None
        if name in self.coalgebras:
            self.err(ln, col(m, 1), f"duplicate coalgebra {name}")
            return None
        self.coalgebras[name] = {"functor": fname, "structure": {}}
        self.positions[("coalgebra", name)] = (ln, col(m, 1))
        return name

    def line_coalgebra(self, s, section, cur, ln, col, off):
        if cur is None:
            return
        co = self.coalgebras[cur]
        fx = self.functors[co["functor"]]
        m = _R["xi"].match(s)
        if not m:
            return self.err(ln, off, "expected 'xi(object)[x] = m (x) y'")
        a, x, e, y = m.groups()
        if a not in self.objects:
            return self.err(ln, col(m, 1), f"unknown object {a}")
        if x not in fx["elements"].get(a, ()):
            return self.err(ln, col(m, 2), f"{x} is not an element of {co['functor']}({a})")
        if self.elem_hom.get(e, (None, None))[1] != a:
            return self.err(ln, col(m, 3), f"{e} is not a module element landing in {a}")
        b = self.elem_hom[e][0]
        if y not in fx["elements"].get(b, ()):
            return self.err(ln, col(m, 4), f"{y} is not an element of {co['functor']}({b})")
        if (a, x) in co["structure"]:
            return self.err(ln, col(m, 1), f"structure at ({a}, {x}) given twice")
        co["structure"][(a, x)] = (e, y)

    # -- totality
    def finish(self, eof_line):
        if self.cat_name is None:
            self.err(eof_line, 1, "missing category block")
            return
        if self.mod_name is None:
            self.err(eof_line, 1, "missing module block")
        ln, c = self.cat_pos
        for f, (d, cd) in sorted(self.arrows.items()):
            for g, (gd, gc) in sorted(self.arrows.items()):
                if cd == gd and (f, g) not in self.composites:
                    self.err(ln, c, f"missing composite {g} o {f}")
        if self.mod_name is not None:
            ln, c = self.mod_pos
            for e, (b, a) in sorted(self.elem_hom.items()):
                for f, (d, cd) in sorted(self.arrows.items()):
                    if d == a and (f, e) not in self.left:
                        self.err(ln, c, f"missing left action {f} . {e}")
                    if cd == b and (e, f) not in self.right:
                        self.err(ln, c, f"missing right action {e} . {f}")
        for name, fx in self.functors.items():
            ln, c = self.positions[("functor", name)]
            for f, (d, cd) in sorted(self.arrows.items()):
                for x in fx["elements"].get(d, ()):
                    if (f, x) not in fx["action"]:
                        self.err(ln, c, f"missing map {f} on {x}")
        for name, co in self.coalgebras.items():
            ln, c = self.positions[("coalgebra", name)]
            fx = self.functors[co["functor"]]
            for a in self.objects:
                for x in fx["elements"].get(a, ()):
                    if (a, x) not in co["structure"]:
                        self.err(ln, c, f"missing structure at ({a}, {x})")

    def document(self) -> SystemDocument:
        cat = FinCategory.build(self.objects, self.arrows, self.composites)
        mod = Module.build(cat, cat, self.elements, self.left, self.right, name=self.mod_name)
        functors = {
            n: SetValuedFunctor.build(cat, fx["elements"], fx["action"], name=n) for n, fx in self.functors.items()
        }
        coalgebras = {n: (co["functor"], dict(co["structure"])) for n, co in self.coalgebras.items()}
        return SystemDocument(self.cat_name, cat, mod, functors, coalgebras, self.positions)


def parse_system(text: str) -> SystemDocument:
    """Parse a system description; raises :class:`DSLError` listing every positioned problem."""
    return _Parser(text).run()


def print_system(doc: SystemDocument) -> str:
    """Canonical text for a document; parsing it back gives an equal document."""
    cat, mod = doc.category, doc.module
    arrows = [f for f in cat.sorted_morphisms if not cat.is_identity(f)]
    out = [f"category {doc.category_name}", "objects: " + " ".join(cat.objects), "morphisms:"]
    out += [f"  {f} : {cat.dom(f)} -> {cat.cod(f)}" for f in arrows]
    out.append("compose:")
    for f in arrows:
        for g in arrows:
            if cat.cod(f) == cat.dom(g):
                out.append(f"  {g} o {f} = {cat.then(f, g)}")
    out += ["", f"module {mod.name} over {doc.category_name}", "elements:"]
    for (b, a), ms in sorted(mod.elements.items()):
        if ms:
            out.append(f"  {mod.name}({b},{a}): " + " ".join(ms))
    out.append("left:")
    for m in sorted(mod.hom_of):
        for f in arrows:
            if cat.dom(f) == mod.cod(m):
                out.append(f"  {f} . {m} = {mod.lact(f, m)}")
    out.append("right:")
    for m in sorted(mod.hom_of):
        for g in arrows:
            if cat.cod(g) == mod.dom(m):
                out.append(f"  {m} . {g} = {mod.ract(m, g)}")
    for name, fx in doc.functors.items():
        out += ["", f"functor {name} on {doc.category_name}"]
        out += [f"{name}({a}): " + " ".join(fx.elements[a]) for a in cat.objects if fx.elements[a]]
        for f in arrows:
            for x in fx.elements[cat.dom(f)]:
                out.append(f"map {f}: {x} -> {fx.apply(f, x)}")
    for name, (fname, structure) in doc.coalgebras.items():
        out += ["", f"coalgebra {name} on {fname}"]
        for (a, x), (m, y) in sorted(structure.items()):
            out.append(f"xi({a})[{x}] = {m} (x) {y}")
    return "\n".join(out) + "\n"
