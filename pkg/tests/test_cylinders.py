import json
import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from selfsim import FiniteChain, PeriodicAddress, PreconditionError, decide_equal, res_set
from selfsim.cylinders import (
    adjacency_graph,
    cylinder_intersect,
    cylinder_member,
    first_separating_depth,
    inverse_image_cylinder,
    resolution_cover,
    rn_related,
)
from selfsim.fixtures import LOWER, POINT_OFFSETS, UPPER, decode_dyadic, fixture_system, freyd_address_pool
from selfsim.universal import chains

POOL = freyd_address_pool()


def interval(ch):
    """Closed interval of reals covered by a Freyd cylinder at object 1."""
    lo, width = Fraction(0), Fraction(1)
    for m in ch.elements:
        if m in POINT_OFFSETS:
            p = lo + width * POINT_OFFSETS[m]
            return p, p
        if m == "id":
            continue
        width /= 2
        lo += width * (m == UPPER)
    return lo, lo + width


def related_oracle(x, y, n):
    x, y = min(x, y), max(x, y)
    scale = 2 ** n
    k_min = max(math.ceil(y * scale - 1), 0)
    k_max = min(math.floor(x * scale), scale - 1)
    return x == y or k_min <= k_max


def separating_oracle(x, y, limit=12):
    for n in range(limit + 1):
        if not related_oracle(x, y, n):
            return n
    return None


def addr(value):
    for t in POOL:
        if decode_dyadic(t) == value:
            return t
    raise LookupError(value)


def ch(*elements):
    return FiniteChain("1", tuple(elements))


def test_membership_examples(freyd):
    half, two_thirds = addr(Fraction(1, 2)), addr(Fraction(2, 3))
    assert cylinder_member(freyd, half, ch(LOWER)).holds
    assert cylinder_member(freyd, half, ch(UPPER)).holds
    assert not cylinder_member(freyd, two_thirds, ch(LOWER)).holds
    assert cylinder_member(freyd, two_thirds, ch()).holds


def test_membership_matches_interval_oracle(freyd):
    cyls = [c for n in range(3) for c in chains(freyd.module, "1", n)]
    for t in POOL[::3]:
        x = decode_dyadic(t)
        for c in cyls:
            v = cylinder_member(freyd, t, c)
            lo, hi = interval(c)
            assert v.holds == (lo <= x <= hi), (t, c)
            assert v.verify()


def test_intersection_matches_interval_oracle(freyd):
    cyls = [c for n in range(3) for c in chains(freyd.module, "1", n)]
    for c1, c2 in combinations(cyls, 2):
        (lo1, hi1), (lo2, hi2) = interval(c1), interval(c2)
        v = cylinder_intersect(freyd, c1, c2)
        assert v.holds == (max(lo1, lo2) <= min(hi1, hi2)), (c1, c2)
        assert v.verify()
    assert cylinder_intersect(freyd, ch(LOWER), ch(UPPER)).holds
    assert not cylinder_intersect(freyd, ch(LOWER, LOWER), ch(UPPER, UPPER)).holds


def test_membership_is_monotone_and_tautological(freyd):
    for t in POOL[::5]:
        for n in range(4):
            assert cylinder_member(freyd, t, t.prefix(n)).holds
        for c in chains(freyd.module, "1", 2):
            if cylinder_member(freyd, t, c).holds:
                assert cylinder_member(freyd, t, c.truncate(1)).holds


def test_unsolvable_system_is_refused():
    s = fixture_system("parallel-hom")
    t = PeriodicAddress("1", ("sigma",), ("id_0",))
    with pytest.raises(PreconditionError):
        cylinder_member(s, t, FiniteChain("1", ()))
    with pytest.raises(PreconditionError):
        rn_related(s, t, t, 1)


def test_depth_one_relation_is_two_squares(freyd):
    rng = random.Random(7)
    half = Fraction(1, 2)
    for _ in range(150):
        t, t2 = rng.sample(POOL, 2)
        x, y = decode_dyadic(t), decode_dyadic(t2)
        expected = (x <= half and y <= half) or (x >= half and y >= half)
        assert rn_related(freyd, t, t2, 1) == expected
    assert rn_related(freyd, addr(Fraction(1, 3)), addr(Fraction(1, 4)), 1)
    assert not rn_related(freyd, addr(Fraction(1, 4)), addr(Fraction(3, 4)), 1)


def test_relation_matches_chain_enumeration(freyd):
    sample = POOL[::6]
    for n in range(4):
        cyls = chains(freyd.module, "1", n)
        members = {t: {c for c in cyls if cylinder_member(freyd, t, c).holds} for t in sample}
        for t, t2 in combinations(sample, 2):
            assert rn_related(freyd, t, t2, n) == bool(members[t] & members[t2]), (t, t2, n)


def test_relation_is_reflexive(freyd):
    for t in POOL[::7]:
        assert all(rn_related(freyd, t, t, n) for n in range(6))


def test_relations_separate_exactly_the_unequal_pairs(freyd):
    rng = random.Random(11)
    for _ in range(60):
        t, t2 = rng.sample(POOL, 2)
        x, y = decode_dyadic(t), decode_dyadic(t2)
        depth = first_separating_depth(freyd, t, t2)
        assert depth == separating_oracle(x, y)
        assert (depth is None) == decide_equal(freyd, t, t2).equal


SEPARATING = [
    (Fraction(0), Fraction(1), 1),
    (Fraction(1, 3), Fraction(2, 3), 1),
    (Fraction(1, 4), Fraction(3, 4), 1),
    (Fraction(1, 4), Fraction(1, 2), 3),
    (Fraction(1, 2), Fraction(5, 8), 4),
    (Fraction(3, 8), Fraction(1, 2), 4),
    (Fraction(1, 3), Fraction(3, 8), 5),
    (Fraction(1, 2), Fraction(1, 2), None),
]


@pytest.mark.parametrize("x,y,depth", SEPARATING)
def test_pinned_separating_depths(freyd, x, y, depth):
    assert first_separating_depth(freyd, addr(x), addr(y)) == depth


def test_discrete_separating_depths(discrete):
    drops = [PeriodicAddress("1", ("bb",) * k + ("ab",), ("aa",)) for k in range(4)]
    never = PeriodicAddress("1", (), ("bb",))
    assert [first_separating_depth(discrete, d, never) for d in drops] == [1, 2, 3, 4]
    assert first_separating_depth(discrete, drops[0], drops[3]) == 1


# --- inverse images


def test_inverse_images_of_the_midpoint_coalgebra(freyd_doc, freyd):
    c = freyd_doc.coalgebra("midpoint", freyd)
    assert inverse_image_cylinder(c, ch(LOWER)) == {"a", "b"}
    assert inverse_image_cylinder(c, ch(UPPER)) == {"b", "c"}
    assert inverse_image_cylinder(c, ch()) == {"a", "b", "c"}


def test_membership_without_matching_resolution(freyd_doc, freyd):
    """d resolves to 0 along [0,1/2] forever, so it lies in the point cylinder 0 with no resolution through it."""
    c = freyd_doc.coalgebra("detached", freyd)
    assert inverse_image_cylinder(c, ch("0")) == {"a", "d"}
    assert res_set(c, ch("0")) == {"a"}


@pytest.mark.parametrize("coalgebra", ["midpoint", "detached", "thirds"])
def test_inverse_image_against_resolution_cover(freyd_doc, freyd, coalgebra):
    c = freyd_doc.coalgebra(coalgebra, freyd)
    for n in range(3):
        for cyl in chains(freyd.module, "1", n):
            inv = inverse_image_cylinder(c, cyl)
            covers = [resolution_cover(c, cyl, r) for r in range(1, 6)]
            assert all(inv <= cov for cov in covers)
            assert all(later <= earlier for earlier, later in zip(covers, covers[1:]))
            assert covers[-1] == inv, (cyl, covers)


# --- graphs


def test_freyd_depth_one_graph(freyd):
    g = adjacency_graph(freyd, "1", 1, "json")
    assert [n["chain"] for n in g["nodes"]] == [["0"], ["1"], ["1/2"], [LOWER], [UPPER]]
    assert g["edges"] == [[0, 3], [1, 4], [2, 3], [2, 4], [3, 4]]


def test_depth_zero_graph_is_a_single_node(freyd):
    assert adjacency_graph(freyd, "1", 0, "json") == {"nodes": [{"id": 0, "chain": []}], "edges": []}


def test_discrete_depth_two_graph_has_no_edges(discrete):
    g = adjacency_graph(discrete, "1", 2, "json")
    assert [n["chain"] for n in g["nodes"]] == [["ab", "aa"], ["bb", "ab"], ["bb", "bb"]]
    assert g["edges"] == []


def test_dot_output_is_stable(freyd):
    dot = adjacency_graph(freyd, "1", 1, "dot")
    assert dot == adjacency_graph(freyd, "1", 1, "dot")
    assert dot.startswith("graph cylinders {\n") and dot.endswith("}\n")
    assert '  3 [label="[0,1/2]"];' in dot and "  3 -- 4;" in dot
    assert json.loads(json.dumps(adjacency_graph(freyd, "1", 2, "json")))["edges"]


@pytest.mark.parametrize("x,y,depth", SEPARATING)
def test_pinned_depths_agree_with_oracle(x, y, depth):
    assert separating_oracle(x, y) == depth
