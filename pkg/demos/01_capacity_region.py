"""Where is the edge of the capacity region?

Three peers, two layers.  Peers p1 and p2 want both layers but upload nothing;
p3 only wants the base layer but has spare upload.  The question is whether
p3 can act as a relay for the enhancement layer it does not even watch.
"""

from pathlib import Path

from layercast import check_feasibility, load_instance, margins

inst = load_instance(Path(__file__).parent / "data" / "w1.json")

# Margins measure how much each layer's subscribers must lean on peers that
# do not subscribe to it.  Positive entries are where relaying is needed.
mv = margins(inst)
print("margins:", [str(mv.margin(j)) for j in range(1, inst.n + 2)])
print("dominant indices:", mv.dominant_indices)

report = check_feasibility(inst)
print(report.summary())

# Trim the source to 3/2 and the region closes: the source can no longer cover
# one copy of every layer.
smaller = inst.with_capacities(inst.source_capacity * 3 / 4, inst.peer_capacities)
print("with C0 =", smaller.source_capacity, "->", check_feasibility(smaller).summary())
