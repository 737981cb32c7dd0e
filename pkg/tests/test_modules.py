from itertools import product

import pytest
from conftest import FIXTURE_NAMES
from helpers import naive_closure
from hypothesis import given
from hypothesis import strategies as st

from selfsim import (
    Module,
    PreconditionError,
    SetValuedFunctor,
    check_nondegenerate_functor,
    hom_module,
    tensor_equal,
    tensor_functor,
    tensor_modules,
    validate_functor,
    validate_module,
)
from selfsim.fixtures import load_fixture
from selfsim.modules import tensor_raw_pairs, tensor_relations, verify_span_witness


def all_functor_cases():
    for name in FIXTURE_NAMES:
        doc = load_fixture(name)
        for fname, fx in sorted(doc.functors.items()):
            yield name, fname


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_modules_are_valid(name):
    doc = load_fixture(name)
    report = validate_module(doc.module)
    assert report.ok, report.violations
    assert sum(report.elements_per_object.values()) == doc.module.size()


def test_freyd_elements_per_object():
    report = validate_module(load_fixture("freyd").module)
    assert report.elements_per_object == {"0": 1, "1": 5}


def test_broken_left_action_is_reported():
    m = load_fixture("freyd").module
    left = dict(m.left)
    left[("sigma", "id")] = "[0,1/2]"  # lands in M(1,1) instead of M(0,1)
    bad = Module(m.source, m.target, m.elements, left, m.right)
    assert any("lands outside" in v for v in validate_module(bad).violations)


def test_noncommuting_actions_are_reported():
    from selfsim import FinCategory

    c = FinCategory.build(["0"], {"e": ("0", "0")}, {("e", "e"): "e"})
    elems = {("0", "0"): ["u", "v"]}
    left = {("e", "u"): "u", ("e", "v"): "u"}
    right = {("u", "e"): "v", ("v", "e"): "v"}
    report = validate_module(Module.build(c, c, elems, left, right))
    assert any("do not commute" in v for v in report.violations)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_hom_module_is_valid(name):
    c = load_fixture(name).category
    assert validate_module(hom_module(c)).ok


@pytest.mark.parametrize("name,fname", list(all_functor_cases()))
def test_tensor_quotient_matches_naive_closure(name, fname):
    doc = load_fixture(name)
    fx = doc.functors[fname]
    t = tensor_functor(doc.module, fx)
    for a in doc.category.objects:
        raw = tensor_raw_pairs(doc.module, fx, a)
        if len(raw) > 50:
            continue
        expected = naive_closure(raw, tensor_relations(doc.module, fx, a))
        got = sorted(sorted(ms) for ms in t.quotients[a].partition.classes.values())
        assert got == expected
        # class names come from the least raw pair
        for rep, members in t.quotients[a].partition.classes.items():
            assert rep == min(members)
    assert validate_functor(t) == []


def test_freyd_tensor_sizes_and_classes(freyd_doc):
    t = tensor_functor(freyd_doc.module, freyd_doc.functors["X"])
    q = t.quotients["1"]
    assert len(q.raw) == 9
    assert len(t.elements["1"]) == 5
    assert len(t.elements["0"]) == 1
    assert q.class_of(("1/2", "*")) == q.class_of(("[0,1/2]", "c")) == q.class_of(("[1/2,1]", "a"))
    assert q.class_of(("0", "*")) == q.class_of(("[0,1/2]", "a"))
    assert q.class_of(("[0,1/2]", "b")) != q.class_of(("[1/2,1]", "b"))


@pytest.mark.parametrize("name,fname", list(all_functor_cases()))
def test_unit_law_by_explicit_bijection(name, fname):
    """hom ⊗ X ≅ X via f⊗x ↦ X(f)(x)."""
    doc = load_fixture(name)
    c, fx = doc.category, doc.functors[fname]
    t = tensor_functor(hom_module(c), fx)
    for a in c.objects:
        q = t.quotients[a]
        image = {}
        for rep, members in q.partition.classes.items():
            values = {fx.apply(f, x) for f, x in members}
            assert len(values) == 1  # well defined
            image[q.names[rep]] = values.pop()
        assert sorted(image.values()) == sorted(fx.elements[a])  # bijective
        for f in c.out_of(a):
            for nm, y in image.items():
                assert image_of(t, c.cod(f), t.apply(f, nm), hom_module(c), fx) == fx.apply(f, y)


def image_of(t, a, name, hom, fx):
    f, x = t.quotients[a].by_name[name]
    return fx.apply(f, x)


@pytest.mark.parametrize("name,fname", list(all_functor_cases()))
def test_single_span_equality_matches_quotient(name, fname):
    doc = load_fixture(name)
    mod, fx = doc.module, doc.functors[fname]
    t = tensor_functor(mod, fx)
    if not check_nondegenerate_functor(fx).holds:
        with pytest.raises(PreconditionError):
            tensor_equal(mod, fx, ("x", "y"), ("x", "y"))
        return
    for a in doc.category.objects:
        q = t.quotients[a]
        for p1, p2 in product(q.raw, repeat=2):
            w = tensor_equal(mod, fx, p1, p2)
            assert (w is not None) == (q.class_of(p1) == q.class_of(p2))
            if w is not None:
                assert verify_span_witness(mod, fx, p1, p2, w)


def test_tensor_equality_through_a_span(freyd_doc):
    w = tensor_equal(freyd_doc.module, freyd_doc.functors["X"], ("0", "*"), ("[0,1/2]", "a"))
    assert (w.apex, w.f, w.f2, w.z) == ("0", "id_0", "sigma", "*")


def test_freyd_module_square():
    m = load_fixture("freyd").module
    mm = tensor_modules(m, m)
    assert {k: len(v) for k, v in mm.elements.items()} == {
        ("0", "0"): 1, ("0", "1"): 5, ("1", "0"): 0, ("1", "1"): 4}
    assert validate_module(mm).ok


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_tensor_with_hom_module_is_identity_on_sizes(name):
    doc = load_fixture(name)
    h = hom_module(doc.category)
    mh = tensor_modules(doc.module, h)
    hm = tensor_modules(h, doc.module)
    for key, ms in doc.module.elements.items():
        assert len(mh.elements[key]) == len(ms) == len(hm.elements[key])


@pytest.mark.parametrize("name,fname", list(all_functor_cases()))
def test_tensor_is_associative_on_sizes(name, fname):
    doc = load_fixture(name)
    m, fx = doc.module, doc.functors[fname]
    if not check_nondegenerate_functor(fx).holds:
        return
    left = tensor_functor(tensor_modules(m, m), fx)
    right = tensor_functor(m, tensor_functor(m, fx))
    assert {a: len(v) for a, v in left.elements.items()} == {a: len(v) for a, v in right.elements.items()}


def freyd_functor(n0, n1, sig, tau, name="Z"):
    cat = load_fixture("freyd").category
    e0 = [f"x{i}" for i in range(n0)]
    e1 = [f"y{i}" for i in range(n1)]
    action = {("sigma", x): e1[sig[i]] for i, x in enumerate(e0)}
    action.update({("tau", x): e1[tau[i]] for i, x in enumerate(e0)})
    return SetValuedFunctor.build(cat, {"0": e0, "1": e1}, action, name=name)


freyd_functors = st.integers(0, 3).flatmap(lambda n0: st.integers(1, 4).flatmap(lambda n1: st.tuples(
    st.just(n0), st.just(n1),
    st.lists(st.integers(0, n1 - 1), min_size=n0, max_size=n0),
    st.lists(st.integers(0, n1 - 1), min_size=n0, max_size=n0))))


@given(freyd_functors)
def test_tensor_preserves_nondegeneracy(data):
    fx = freyd_functor(*data)
    if not check_nondegenerate_functor(fx).holds:
        return
    mod = load_fixture("freyd").module
    t = tensor_functor(mod, fx)
    assert check_nondegenerate_functor(t).holds
    assert check_nondegenerate_functor(tensor_functor(mod, t)).holds


def test_julia_cardinalities_and_raw_sum():
    doc = load_fixture("julia")
    mod, cat = doc.module, doc.category
    sizes = {b: len(mod.over(b, "2")) for b in cat.objects}
    assert sizes == {"0": 8, "1": 0, "2": 2, "3": 1}
    assert len(mod.over("0", "0")) == 1
    assert validate_module(mod).ok
    fx = SetValuedFunctor.build(
        cat, {"0": ["x"], "1": [], "2": ["y1", "y2"], "3": ["z"]},
        {**{(f"p{i}", "x"): "y1" for i in range(1, 5)}, **{(f"q{i}", "x"): "z" for i in range(1, 5)}},
    )
    assert validate_functor(fx) == []
    assert len(tensor_raw_pairs(mod, fx, "2")) == 8 * 1 + 2 * 2 + 1 * 1
