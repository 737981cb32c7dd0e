"""
The unit interval from two glued halves
=======================================

Build the interval system, check that it has a universal solution, and read
a few points back as exact rationals.
"""

from fractions import Fraction

from selfsim import check_nondegenerate_module, check_solvable, parse_address
from selfsim.fixtures import decode_dyadic, fixture_text, load_fixture

# the builtin is written in the same text format the CLI reads
print(fixture_text("freyd").split("\n\n")[1])

doc = load_fixture("freyd")
system = doc.system("interval")

# both halves act on the endpoints, and the midpoint is shared
print("nondegenerate:", check_nondegenerate_module(system.module).holds)
print("solvable:", check_solvable(system).holds)

# an address is a preperiod followed by a period repeated forever
for literal in [
    "period=[[1/2,1],[0,1/2]] at 1",
    "pre=[[0,1/2],[1/2,1],[1/2,1],1/2] period=[id] at 1",
    "pre=[[0,1/2]] period=[[1/2,1]] at 1",
]:
    t = parse_address(literal, system.module)
    value = decode_dyadic(t)
    print(f"{literal:55} -> {value}")

assert decode_dyadic(parse_address("period=[[1/2,1],[0,1/2]] at 1", system.module)) == Fraction(2, 3)
