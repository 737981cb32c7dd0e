"""Command line interface.

Every subcommand takes a system file (or ``@name`` for a builtin) and
``--json``. Exit status is 0 for a positive verdict, 1 for a negative one
and 2 for unusable input.
"""
from __future__ import annotations

import argparse
import json
import sys

from .chains import parse_address, parse_chain
from .cylinders import adjacency_graph, cylinder_member
from .dsl import DSLError, SystemDocument, parse_system
from .errors import SelfSimError, ValidationError
from .fincat import validate_functor
from .fixtures import BUILDERS, RECONSTRUCTED, decode_dyadic, load_fixture
from .modules import tensor_functor, tensor_modules
from .nondegeneracy import check_nondegenerate_functor
from .universal import decide_equal, level_components, resolution_run, validate_coalgebra

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID = 0, 1, 2


class InputError(Exception):
    def __init__(self, message: str, details=None):
        super().__init__(message)
        self.details = details or []


def load_document(source: str) -> SystemDocument:
    if source.startswith("@"):
        name = source[1:]
        if name not in BUILDERS:
            raise InputError(f"unknown builtin {source}; known: {', '.join('@' + n for n in sorted(BUILDERS))}")
        return load_fixture(name)
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return parse_system(text)
    except DSLError as exc:
        raise InputError("parse error", [str(d) for d in exc.diagnostics]) from exc


def _system(doc: SystemDocument, name: str):
    try:
        return doc.system(name)
    except ValidationError as exc:
        raise InputError(str(exc), exc.violations) from exc


def _nd_witness(w):
    if w is None:
        return None
    out = {"description": w.describe(), **{k: v for k, v in vars(w).items() if v is not None}}
    out["kind"] = "ND1" if hasattr(w, "x2") else "ND2"
    return out


def _lasso(cert):
    if cert is None:
        return None
    return {
        "stem": [{"from": list(s), "label": list(lab), "to": list(t)} for s, lab, t in cert.stem],
        "cycle": [{"from": list(s), "label": list(lab), "to": list(t)} for s, lab, t in cert.cycle],
    }


def cmd_validate(args, doc):
    bad = []
    try:
        system = doc.system(args.input)
    except ValidationError as exc:
        system = None
        bad.extend(exc.violations)
    data = {
        "objects": list(doc.category.objects),
        "morphisms": len(doc.category.morphisms),
        "module_elements": {a: len(doc.module.into(a)) for a in doc.category.objects},
        "functors": sorted(doc.functors),
        "coalgebras": sorted(doc.coalgebras),
        "reconstructed": args.input.startswith("@") and args.input[1:] in RECONSTRUCTED,
    }
    for name, fx in sorted(doc.functors.items()):
        bad.extend(f"functor {name}: {v}" for v in validate_functor(fx))
    if system is not None:
        data["nondegenerate"] = system.nondegenerate
        for name in sorted(doc.coalgebras):
            bad.extend(f"coalgebra {name}: {v}" for v in validate_coalgebra(doc.coalgebra(name, system)))
    verdict = "valid" if not bad else "invalid"
    return verdict, (bad or None), data, (EXIT_OK if not bad else EXIT_NEGATIVE)


def cmd_nondegen(args, doc):
    if args.functor:
        if args.functor not in doc.functors:
            raise InputError(f"no functor named {args.functor}")
        fx = doc.functors[args.functor]
        bad = validate_functor(fx)
        if bad:
            raise InputError(f"functor {args.functor} is not a functor", bad)
        v = check_nondegenerate_functor(fx)
    else:
        v = _system(doc, args.input).nondegeneracy
    data = {"nd1_failures": len(v.nd1), "nd2_failures": len(v.nd2)}
    verdict = "nondegenerate" if v.holds else "degenerate"
    return verdict, _nd_witness(v.witness), data, (EXIT_OK if v.holds else EXIT_NEGATIVE)


def cmd_solvable(args, doc):
    system = _system(doc, args.input)
    if not system.nondegenerate:
        raise InputError("solvability needs a nondegenerate module", [system.nondegeneracy.witness.describe()])
    v = system.solvability
    data = {"S1": v.s1.holds, "S2": v.s2.holds, "states": {"S1": v.s1.states, "S2": v.s2.states}}
    witness = None
    if not v.holds:
        cond = v.s1 if not v.s1.holds else v.s2
        witness = {"condition": v.witness[0], "pair": list(cond.witness), "lasso": _lasso(cond.certificate),
                   "verified": cond.certificate.verify(cond.shape)}
    return ("solvable" if v.holds else "unsolvable"), witness, data, (EXIT_OK if v.holds else EXIT_NEGATIVE)


def cmd_tensor(args, doc):
    system = _system(doc, args.input)
    if args.functor not in doc.functors:
        raise InputError(f"no functor named {args.functor}")
    fx = doc.functors[args.functor]
    if not check_nondegenerate_functor(fx).holds:
        raise InputError(f"functor {args.functor} is degenerate")
    t = tensor_functor(system.module, fx)
    data = {"classes": {a: list(t.elements[a]) for a in t.base.objects},
            "sizes": {a: len(t.elements[a]) for a in t.base.objects},
            "raw_pairs": {a: len(q.raw) for a, q in t.quotients.items()}}
    if args.with_module:
        mm = tensor_modules(system.module, system.module)
        data["module_square"] = {f"{b},{a}": len(ms) for (b, a), ms in sorted(mm.elements.items())}
    return "ok", None, data, EXIT_OK


def _check_object_and_depth(system, args):
    if args.object not in system.category.objects:
        raise InputError(f"unknown object {args.object}")
    if args.depth < 0:
        raise InputError("--depth must be at least 0")


def cmd_levels(args, doc):
    system = _system(doc, args.input)
    _check_object_and_depth(system, args)
    counts = [len(level_components(system, args.object, n)) for n in range(args.depth + 1)]
    return "ok", None, {"components": counts}, EXIT_OK


def cmd_equal(args, doc):
    system = _system(doc, args.input)
    t, t2 = parse_address(args.addr, system.module), parse_address(args.addr2, system.module)
    v = decide_equal(system, t, t2)
    witness = None
    if v.equal:
        witness = {"apex": str(v.apex()), "lasso": _lasso(v.certificate), "verified": v.verify()}
    return v.status, witness, {"states": v.states}, (EXIT_OK if v.equal else EXIT_NEGATIVE)


def cmd_resolve(args, doc):
    system = _system(doc, args.input)
    if args.coalgebra not in doc.coalgebras:
        raise InputError(f"no coalgebra named {args.coalgebra}")
    c = doc.coalgebra(args.coalgebra, system)
    bad = validate_coalgebra(c)
    if bad:
        raise InputError(f"coalgebra {args.coalgebra} is invalid", bad)
    if args.element not in c.carrier.elements.get(args.object, ()):
        raise InputError(f"{args.element} is not an element over {args.object}")
    run = resolution_run(c, args.object, args.element, args.order)
    addr = run.address.normalized()
    data = {"address": str(addr), "solvable": system.solvable}
    if args.decode == "dyadic":
        data["value"] = str(decode_dyadic(addr))
    return "ok", None, data, EXIT_OK


def cmd_member(args, doc):
    system = _system(doc, args.input)
    t = parse_address(args.addr, system.module)
    cyl = parse_chain(args.cylinder, t.anchor, system.module)
    v = cylinder_member(system, t, cyl)
    witness = {"lasso": _lasso(v.certificate), "verified": v.verify()} if v.holds else None
    return ("member" if v.holds else "not_member"), witness, None, (EXIT_OK if v.holds else EXIT_NEGATIVE)


def cmd_graph(args, doc):
    system = _system(doc, args.input)
    _check_object_and_depth(system, args)
    g = adjacency_graph(system, args.object, args.depth, args.format)
    return "ok", None, {"format": args.format, "graph": g}, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfsim", description="Finite self-similarity systems.")
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="system file, or @name for a builtin")
    common.add_argument("--json", action="store_true", help="print a JSON report")

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check every table and axiom")
    sp = add("nondegen", cmd_nondegen, "nondegeneracy of a functor or of the module")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--functor")
    g.add_argument("--module", action="store_true")
    add("solvable", cmd_solvable, "decide the solvability conditions")
    sp = add("tensor", cmd_tensor, "tensor a functor with the module")
    sp.add_argument("--functor", required=True)
    sp.add_argument("--with-module", action="store_true", help="also report the module tensored with itself")
    sp = add("levels", cmd_levels, "count components of finite chains")
    sp.add_argument("--object", required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp = add("equal", cmd_equal, "decide equality of two addresses")
    sp.add_argument("--addr", required=True)
    sp.add_argument("--addr2", required=True)
    sp = add("resolve", cmd_resolve, "resolve a coalgebra element to an address")
    sp.add_argument("--coalgebra", required=True)
    sp.add_argument("--object", required=True)
    sp.add_argument("--element", required=True)
    sp.add_argument("--order", choices=["stored", "least", "greatest"], default="stored")
    sp.add_argument("--decode", choices=["dyadic"])
    sp = add("member", cmd_member, "cylinder membership of an address")
    sp.add_argument("--addr", required=True)
    sp.add_argument("--cylinder", required=True, help='space separated prefix, e.g. "m1 m2"')
    sp = add("graph", cmd_graph, "cylinder adjacency graph at a depth")
    sp.add_argument("--object", required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.add_argument("--format", choices=["dot", "json"], default="dot")
    return p


def _emit_text(args, verdict, witness, data):
    if args.command == "resolve":
        print(data.get("value", data["address"]))
        return
    if args.command == "graph":
        g = data["graph"]
        print(g if isinstance(g, str) else json.dumps(g, sort_keys=True), end="" if isinstance(g, str) else "\n")
        return
    print(f"verdict: {verdict}")
    if witness is not None:
        if isinstance(witness, list):
            for w in witness:
                print(f"  {w}")
        elif isinstance(witness, dict) and "description" in witness:
            print(f"witness: {witness['description']}")
        elif isinstance(witness, dict):
            print("witness: " + json.dumps({k: v for k, v in witness.items() if k != "lasso"}, sort_keys=True, ensure_ascii=False))
    if data:
        for k, v in data.items():
            print(f"{k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = {"command": args.command, "input": args.input}
    try:
        doc = load_document(args.input)
        verdict, witness, data, code = args.func(args, doc)
    except InputError as exc:
        verdict, witness, data, code = "invalid_input", None, {"error": str(exc), "details": exc.details}, EXIT_INVALID
    except SelfSimError as exc:
        verdict, witness, data, code = "invalid_input", None, {"error": str(exc), "details": []}, EXIT_INVALID
    report["verdict"] = verdict
    if witness is not None:
        report["witness"] = witness
    if data is not None:
        report["data"] = data
    if args.json:
        print(json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2))
    elif code == EXIT_INVALID:
        print(f"error: {data['error']}", file=sys.stderr)
        for d in data["details"]:
            print(f"  {d}", file=sys.stderr)
    else:
        _emit_text(args, verdict, witness, data)
    return code


if __name__ == "__main__":
    sys.exit(main())
