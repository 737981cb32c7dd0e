"""
Deciding when two addresses name the same point
===============================================

Points have many addresses. Equality is decided by searching a finite graph
for an infinite common refinement, and a positive answer comes with a
certificate that can be checked on its own.
"""

from itertools import combinations

from selfsim import decide_equal, level_components, parse_address
from selfsim.fixtures import decode_dyadic, fixture_system

system = fixture_system("freyd")
mod = system.module

halves = [
    "pre=[[0,1/2]] period=[[1/2,1]] at 1",
    "pre=[[1/2,1]] period=[[0,1/2]] at 1",
    "pre=[1/2] period=[id] at 1",
]
addrs = [parse_address(h, mod) for h in halves]

for t, t2 in combinations(addrs, 2):
    verdict = decide_equal(system, t, t2)
    # the certificate is a lasso: a stem and a cycle of commuting squares
    cert = verdict.certificate
    print(f"{verdict.status}: stem {len(cert.stem)}, cycle {len(cert.cycle)}, verified {verdict.verify()}")
    print("   common refinement:", verdict.apex())

# different values are told apart
third = parse_address("period=[[0,1/2],[1/2,1]] at 1", mod)
print(decode_dyadic(third), "vs 1/2:", decide_equal(system, third, addrs[0]).status)

# yet every finite truncation is connected, so no finite level sees the difference
print("components at depth 0..6:", [len(level_components(system, "1", n)) for n in range(7)])
