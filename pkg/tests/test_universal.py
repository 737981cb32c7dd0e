import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selfsim import (
    Coalgebra,
    FiniteChain,
    PeriodicAddress,
    PreconditionError,
    canonical_map,
    connected_components,
    decide_equal,
    iota,
    iota_inverse,
    level_category,
    level_components,
    parse_address,
    prepend,
    push,
    res_set,
    resolutions_along_prefix,
    resolve,
    validate_category,
    validate_coalgebra,
)
from selfsim.fixtures import (
    LOWER,
    UPPER,
    decode_dyadic,
    fixture_system,
    freyd_address_pool,
    load_fixture,
)
from selfsim.universal import chains, ladders_from, level_projection, resolution_run, verify_ladder, verify_resolution

POOL = freyd_address_pool()


def coalgebras():
    for name in ("freyd", "discrete-ab", "point"):
        doc = load_fixture(name)
        system = fixture_system(name)
        for cname in sorted(doc.coalgebras):
            yield doc.coalgebra(cname, system)


COALGEBRAS = list(coalgebras())
CO_IDS = [f"{c.system.name}-{c.name}" for c in COALGEBRAS]


def elements_of(c):
    return [(a, x) for a in c.carrier.base.objects for x in c.carrier.elements[a]]


# --- levels


def test_freyd_levels_are_connected(freyd):
    assert [len(level_components(freyd, "1", n)) for n in range(9)] == [1] * 9


def test_discrete_levels_count_drop_positions(discrete):
    assert [len(level_components(discrete, "1", n)) for n in range(11)] == list(range(1, 12))


@pytest.mark.parametrize("name,obj,depth", [("freyd", "1", 2), ("discrete-ab", "1", 3), ("julia", "2", 1)])
def test_level_category_is_a_category_with_same_components(name, obj, depth):
    s = fixture_system(name)
    for n in range(depth + 1):
        cat = level_category(s, obj, n)
        assert validate_category(cat) == []
        assert len(connected_components(cat)) == len(level_components(s, obj, n))


def test_freyd_level_one_has_five_chains(freyd):
    cat = level_category(freyd, "1", 1)
    assert len(cat.objects) == 5


@pytest.mark.parametrize("name,obj", [("freyd", "1"), ("discrete-ab", "1"), ("julia", "1"), ("julia", "2")])
def test_truncation_is_well_defined(name, obj):
    s = fixture_system(name)
    for n in range(3):
        proj = level_projection(s, obj, n)
        assert proj


def test_ladders_verify(freyd):
    for ch in chains(freyd.module, "1", 3):
        for lad in ladders_from(freyd.module, ch):
            assert verify_ladder(freyd.module, lad)


# --- equality


HALVES = [
    "pre=[[0,1/2]] period=[[1/2,1]] at 1",
    "pre=[[1/2,1]] period=[[0,1/2]] at 1",
    "pre=[1/2] period=[id] at 1",
    "pre=[[0,1/2],[1/2,1],1] period=[id] at 1",
    "pre=[[1/2,1],[0,1/2],0] period=[id] at 1",
]


def test_five_representations_of_one_half_are_equal(freyd):
    addrs = [parse_address(h, freyd.module) for h in HALVES]
    for t, t2 in combinations(addrs, 2):
        v = decide_equal(freyd, t, t2)
        assert v.status == "equal" and v.verify()


def test_decoding_examples(freyd):
    m = freyd.module
    assert decode_dyadic(parse_address("pre=[] period=[[1/2,1],[0,1/2]] at 1", m)) == Fraction(2, 3)
    assert decode_dyadic(parse_address("pre=[[0,1/2],[1/2,1],[1/2,1],1/2] period=[id] at 1", m)) == Fraction(7, 16)
    for h in HALVES:
        assert decode_dyadic(parse_address(h, m)) == Fraction(1, 2)


def test_random_pairs_agree_with_decoding(freyd):
    rng = random.Random(20240601)
    mismatches = 0
    for _ in range(200):
        t, t2 = rng.sample(POOL, 2)
        v = decide_equal(freyd, t, t2)
        assert v.verify()
        mismatches += v.equal != (decode_dyadic(t) == decode_dyadic(t2))
    assert mismatches == 0


def test_equality_is_an_equivalence_on_a_sample(freyd):
    sample = POOL[::3]
    eq = {(i, j): decide_equal(freyd, sample[i], sample[j]).equal for i in range(len(sample)) for j in range(len(sample))}
    n = len(sample)
    for i in range(n):
        assert eq[(i, i)]
        for j in range(n):
            assert eq[(i, j)] == eq[(j, i)]
            for k in range(n):
                if eq[(i, j)] and eq[(j, k)]:
                    assert eq[(i, k)]


def test_ten_distinct_dyadics_are_pairwise_not_equal(freyd):
    by_value = {}
    for t in POOL:
        by_value.setdefault(decode_dyadic(t), t)
    picks = [by_value[Fraction(k, 8)] for k in range(9)] + [by_value[Fraction(1, 3)]]
    for t, t2 in combinations(picks, 2):
        assert decide_equal(freyd, t, t2).status == "not_equal"


def finitary_moves(mod, t, i):
    """Addresses obtained by sliding a morphism across level i+1."""
    cat = mod.target
    u = t.unroll(i + 3)
    e, e_next = u.pre[i], u.pre[i + 1]
    b = mod.dom(e)
    for f in cat.into(b):
        for m in mod.over(mod.dom(e_next), cat.dom(f)):
            if mod.lact(f, m) == e_next:
                pre = u.pre[:i] + (mod.ract(e, f), m) + u.pre[i + 2:]
                yield PeriodicAddress(u.anchor, pre, u.period)


def test_finitary_moves_preserve_the_point(freyd):
    count = 0
    for t in POOL[::2]:
        for i in range(3):
            for t2 in finitary_moves(freyd.module, t, i):
                t2.check(freyd.module)
                assert decide_equal(freyd, t, t2).equal
                count += 1
    assert count > 50


def test_equal_points_have_equal_truncations(freyd):
    for t, t2 in combinations(POOL[::4], 2):
        if decide_equal(freyd, t, t2).equal:
            for n in range(4):
                comps = level_components(freyd, "1", n)
                assert comps.class_of(t.prefix(n)) == comps.class_of(t2.prefix(n))


def drop(k):
    return PeriodicAddress("1", ("bb",) * k + ("ab",), ("aa",))


def test_discrete_addresses_are_pairwise_distinct(discrete):
    addrs = [drop(k) for k in range(6)] + [PeriodicAddress("1", (), ("bb",))]
    for t, t2 in combinations(addrs, 2):
        assert decide_equal(discrete, t, t2).status == "not_equal"
    for t in addrs:
        assert decide_equal(discrete, t, t).equal


def test_unsolvable_system_reports_unknown():
    s = fixture_system("parallel-hom")
    t = PeriodicAddress("1", ("sigma",), ("id_0",))
    t2 = PeriodicAddress("1", ("tau",), ("id_0",))
    assert decide_equal(s, t, t2).status == "unknown"
    assert decide_equal(s, t, t).status == "equal"


def test_anchor_mismatch_is_refused(freyd):
    with pytest.raises(PreconditionError):
        decide_equal(freyd, PeriodicAddress("0", (), ("id",)), POOL[0])


# --- the fixed point map


@given(st.sampled_from(POOL))
def test_iota_round_trip(t):
    s = fixture_system("freyd")
    m, tail = iota(s, t)
    back = iota_inverse(s, m, tail)
    assert back.normalized() == t.normalized()
    assert tail.anchor == s.module.dom(m)


def test_span_certificate_gives_tensor_witness(freyd):
    """The first rung of an equality span is a commuting square whose tails are again equal."""
    mod = freyd.module
    for t, t2 in combinations(POOL[::3], 2):
        v = decide_equal(freyd, t, t2)
        if not v.equal:
            continue
        (state, (q, m, m2), (g1, h1, _, _)) = (v.certificate.stem + v.certificate.cycle)[0]
        assert mod.ract(m, g1) == q == mod.ract(m2, h1)
        apex_tail = v.apex().tail(mod)
        assert decide_equal(freyd, push(mod, g1, apex_tail), t.tail(mod)).equal
        assert decide_equal(freyd, push(mod, h1, apex_tail), t2.tail(mod)).equal


# --- coalgebras


@pytest.mark.parametrize("c", COALGEBRAS, ids=CO_IDS)
def test_fixture_coalgebras_are_valid(c):
    assert validate_coalgebra(c) == []


def test_non_natural_structure_is_rejected(freyd_doc, freyd):
    c = freyd_doc.coalgebra("midpoint", freyd)
    broken = Coalgebra(freyd, c.carrier, {**c.structure, ("1", "a"): (UPPER, "a")})
    assert any("not natural at sigma" in v for v in validate_coalgebra(broken))


@pytest.mark.parametrize("c", COALGEBRAS, ids=CO_IDS)
def test_resolutions_verify_and_do_not_depend_on_choices(c):
    for a, x in elements_of(c):
        results = []
        for order in ("stored", "least", "greatest"):
            run = resolution_run(c, a, x, order)
            assert verify_resolution(c, run)
            results.append(run.address)
        for t, t2 in combinations(results, 2):
            assert decide_equal(c.system, t, t2).equal


@pytest.mark.parametrize("c", COALGEBRAS, ids=CO_IDS)
def test_canonical_map_is_natural(c):
    mod, cat = c.system.module, c.carrier.base
    for f in cat.sorted_morphisms:
        for x in c.carrier.elements[cat.dom(f)]:
            lhs = canonical_map(c, cat.cod(f), c.carrier.apply(f, x), "least")
            rhs = push(mod, f, canonical_map(c, cat.dom(f), x, "greatest"))
            assert decide_equal(c.system, lhs, rhs).equal


@pytest.mark.parametrize("c", COALGEBRAS, ids=CO_IDS)
def test_canonical_map_is_a_coalgebra_map(c):
    s = c.system
    for a, x in elements_of(c):
        m1, tail = iota(s, canonical_map(c, a, x, "least"))
        m, y = c.step(a, x)
        other = canonical_map(c, s.module.dom(m), y, "greatest")
        assert decide_equal(s, iota_inverse(s, m1, tail), prepend(s.module, m, other)).equal


@pytest.mark.parametrize("c", COALGEBRAS, ids=CO_IDS)
def test_double_complex_grid(c):
    """Rows resolving each x_n, compatible down the column, give back the column's point."""
    s = c.system
    for a, x in elements_of(c):
        column = resolution_run(c, a, x, "stored")
        rows = [resolve(c, b, y, "greatest") for b, y in column.states]
        k = len(column.states)
        for n in range(k):
            nxt = rows[n + 1] if n + 1 < k else rows[column.loop_start]
            assert decide_equal(s, rows[n], prepend(s.module, column.address.element(n), nxt)).equal
        assert decide_equal(s, rows[0], column.address).equal


def test_freyd_coalgebra_values(freyd_doc, freyd):
    mid = freyd_doc.coalgebra("midpoint", freyd)
    assert [decode_dyadic(canonical_map(mid, "1", x)) for x in "abc"] == [0, Fraction(1, 2), 1]
    thirds = freyd_doc.coalgebra("thirds", freyd)
    values = [decode_dyadic(canonical_map(thirds, "1", x)) for x in ("p0", "p1/3", "p2/3", "p1")]
    assert values == [0, Fraction(1, 3), Fraction(2, 3), 1]
    assert canonical_map(thirds, "1", "p1/3") == PeriodicAddress("1", (), (LOWER, UPPER))


def test_counter_coalgebra_resolves_to_drop_addresses(discrete):
    c = load_fixture("discrete-ab").coalgebra("counter", discrete)
    for k in range(3):
        assert decide_equal(discrete, canonical_map(c, "1", f"n{k}"), drop(k)).equal
    assert canonical_map(c, "1", "w") == PeriodicAddress("1", (), ("bb",))


def test_canonical_map_refuses_unsolvable_systems():
    from selfsim import SetValuedFunctor

    s = fixture_system("parallel-hom")
    seg = load_fixture("parallel-hom").functors["Segment"]
    c = Coalgebra(s, seg, {("0", "*"): ("id_0", "*"), ("1", "l"): ("sigma", "*"), ("1", "r"): ("tau", "*")})
    assert validate_coalgebra(c) == []
    with pytest.raises(PreconditionError):
        canonical_map(c, "1", "l")
    assert resolve(c, "1", "l") == PeriodicAddress("1", ("sigma",), ("id_0",))
    assert isinstance(seg, SetValuedFunctor)


# --- resolutions along prefixes


def test_resolutions_along_prefix_examples(freyd_doc, freyd):
    mid = freyd_doc.coalgebra("midpoint", freyd)
    assert resolutions_along_prefix(mid, "b", FiniteChain("1", ("1/2",))) == [("b", "*")]
    # 1/2 ⊗ * equals [0,1/2] ⊗ c because the top of [0,1/2] is 1/2 and tau sends * to c
    assert resolutions_along_prefix(mid, "b", FiniteChain("1", (LOWER,))) == [("b", "c")]
    assert resolutions_along_prefix(mid, "c", FiniteChain("1", (LOWER,))) == []
    assert res_set(mid, FiniteChain("1", (LOWER,))) == {"a", "b"}
    assert res_set(mid, FiniteChain("1", ("1/2",))) == {"b"}
    assert res_set(mid, FiniteChain("1", ())) == {"a", "b", "c"}


@pytest.mark.parametrize("c", COALGEBRAS, ids=CO_IDS)
def test_res_set_matches_forward_enumeration(c):
    for a in c.carrier.base.objects:
        for n in range(4):
            for p in chains(c.system.module, a, n):
                forward = {x for x in c.carrier.elements[a] if resolutions_along_prefix(c, x, p)}
                assert res_set(c, p) == forward
