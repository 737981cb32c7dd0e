"""
Mapping a coalgebra into the universal solution
===============================================

A coalgebra says how to break each of its elements into a module element and
a smaller piece. Following those choices forever gives an address, and the
resulting point does not depend on which choices were made.
"""

from selfsim import FiniteChain, canonical_map, decide_equal, resolve
from selfsim.cylinders import inverse_image_cylinder
from selfsim.fixtures import LOWER, decode_dyadic, fixture_system, load_fixture

system = fixture_system("freyd")
doc = load_fixture("freyd")

# the doubling map on four points lands on 0, 1/3, 2/3 and 1
thirds = doc.coalgebra("thirds", system)
for x in thirds.carrier.elements["1"]:
    t = canonical_map(thirds, "1", x)
    print(f"{x:5} -> {t}  = {decode_dyadic(t)}")

# the midpoint element has three decompositions; every choice order agrees
mid = doc.coalgebra("midpoint", system)
runs = {order: resolve(mid, "1", "b", order) for order in ("stored", "least", "greatest")}
for order, t in runs.items():
    print(f"{order:8} {t}")
print("all equal:", decide_equal(system, runs["least"], runs["greatest"]).equal)

# which elements land in the lower half
print(sorted(inverse_image_cylinder(mid, FiniteChain("1", (LOWER,)))))
