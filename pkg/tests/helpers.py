"""Brute-force oracles and small generators shared by the tests."""
from itertools import product

from selfsim import FinCategory, SetValuedFunctor


def naive_closure(raw, relations):
    """Equivalence classes by repeated merging until nothing changes."""
    classes = [{p} for p in raw]
    changed = True
    rel = list(relations)
    while changed:
        changed = False
        for p, q in rel:
            cp = next(c for c in classes if p in c)
            cq = next(c for c in classes if q in c)
            if cp is not cq:
                cp |= cq
                classes.remove(cq)
                changed = True
    return sorted(sorted(c) for c in classes)


def poset_category(n, order_pairs):
    """Category of a finite poset on "0".."n-1" from generating pairs i <= j."""
    le = {(i, i) for i in range(n)} | set(order_pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True
    arrows = {f"r{a}_{b}": (str(a), str(b)) for a, b in le if a != b}
    comp = {}
    for (a, b), (c, d) in product(le, repeat=2):
        if b == c and a != b and c != d:
            comp[(f"r{a}_{b}", f"r{c}_{d}")] = f"r{a}_{d}" if a != d else f"id_{a}"
    return FinCategory.build([str(i) for i in range(n)], arrows, comp)


def all_functors(cat, sizes):
    """Every functor with |X(a)| = sizes[a], elements named e0, e1, ..."""
    elements = {a: [f"e{i}" for i in range(sizes[a])] for a in cat.objects}
    gens = [f for f in cat.sorted_morphisms if not cat.is_identity(f)]
    choices = [list(product(elements[cat.cod(f)], repeat=len(elements[cat.dom(f)]))) for f in gens]
    for pick in product(*choices):
        action = {}
        for f, images in zip(gens, pick):
            for x, y in zip(elements[cat.dom(f)], images):
                action[(f, x)] = y
        fx = SetValuedFunctor.build(cat, elements, action)
        ok = all(
            fx.apply(g, fx.apply(f, x)) == fx.apply(cat.then(f, g), x)
            for f in gens for g in gens if cat.cod(f) == cat.dom(g)
            for x in elements[cat.dom(f)]
        )
        if ok:
            yield fx


def injective(fx, f):
    xs = fx.elements[fx.base.dom(f)]
    return len({fx.apply(f, x) for x in xs}) == len(xs)


def image(fx, f):
    return {fx.apply(f, x) for x in fx.elements[fx.base.dom(f)]}
