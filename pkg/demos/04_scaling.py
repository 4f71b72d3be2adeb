"""How far can a rate profile be scaled?

Sweeping two layer rates traces the boundary of the region; ``max_scale``
finds how far a fixed profile can be stretched before some constraint binds.
"""

from fractions import Fraction
from pathlib import Path

from layercast import load_instance, max_scale
from layercast.harness import grid_values, sweep

inst = load_instance(Path(__file__).parent / "data" / "w1.json")

values = grid_values(0, 2, Fraction(1, 2))
rows = sweep(inst, 1, 2, values, values)
print("L2 \\ L1 " + "".join(f"{str(v):>4}" for v in values))
for b in reversed(values):
    marks = ["   #" if ok else "   ." for a, bb, ok, _ in rows if bb == b]
    print(f"{str(b):>7} " + "".join(marks))

scale = max_scale(inst, (1, 1), Fraction(1, 1000))
print("largest feasible scale of (1, 1):", scale)
