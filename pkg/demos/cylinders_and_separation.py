"""
Cylinders and how deep you must look
====================================

A cylinder collects the points having some address that starts with a given
prefix. Two distinct points always end up in disjoint cylinders once the
prefix is long enough.
"""

from selfsim import FiniteChain, adjacency_graph, cylinder_intersect, cylinder_member, parse_address
from selfsim.cylinders import first_separating_depth
from selfsim.fixtures import LOWER, UPPER, fixture_system

system = fixture_system("freyd")
mod = system.module

half = parse_address("pre=[1/2] period=[id] at 1", mod)
for prefix in [(LOWER,), (UPPER,), (LOWER, LOWER)]:
    cyl = FiniteChain("1", prefix)
    print(f"1/2 in cylinder {list(prefix)}: {cylinder_member(system, half, cyl).holds}")

# the two halves meet at the midpoint; their halves-of-halves at the far ends do not
print(cylinder_intersect(system, FiniteChain("1", (LOWER,)), FiniteChain("1", (UPPER,))).holds)
print(cylinder_intersect(system, FiniteChain("1", (LOWER, LOWER)), FiniteChain("1", (UPPER, UPPER))).holds)

# 1/3 and 3/8 share a dyadic interval down to sixteenths
third = parse_address("period=[[0,1/2],[1/2,1]] at 1", mod)
three_eighths = parse_address("pre=[[0,1/2],[1/2,1],1/2] period=[id] at 1", mod)
print("separated at depth", first_separating_depth(system, third, three_eighths))

# the gluing pattern at depth 1, ready for graphviz
print(adjacency_graph(system, "1", 1, "dot"))
