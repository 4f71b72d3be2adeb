"""Cross-check the closed form against brute force.

For small instances every source-rooted tree can be listed and the routing
question becomes an exact linear program.  When the program is infeasible
the solver returns Farkas multipliers: prices on layers and nodes that prove
no tree packing exists.
"""

from layercast import Instance, check_feasibility
from layercast.harness import compare
from layercast.oracle import oracle_solve

# A near miss: total upload is one unit short of the relay-aware requirement.
inst = Instance(2, (0, 0, 3), (1, 1), (2, 2, 1))
print(check_feasibility(inst).summary())
result = oracle_solve(inst)
print("oracle feasible:", result.feasible)
print("layer prices:", [str(y) for y in result.layer_multipliers])
print("node prices:", {inst.node_name(v): str(y) for v, y in enumerate(result.node_multipliers)})

# A batch of random rational instances.
summary = compare(seed=3, count=100, max_denominator=3)
print(summary.line())
