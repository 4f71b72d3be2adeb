"""Build a routing plan and check it independently.

The scheduler first runs relay phases, where the source hands slices of a
layer to helper peers who forward them, then peels the remaining demand into
ordinary multicast trees.  The verifier knows nothing of that procedure: it
only replays the sends against the raw capacity and coverage constraints.
"""

from pathlib import Path

from layercast import load_instance, plan_stats, plan_to_json, schedule, verify_plan

inst = load_instance(Path(__file__).parent / "data" / "w2.json")
plan = schedule(inst)

for phase in plan.phases:
    for h, (seg, rate) in phase.helper_shares.items():
        print(f"relay on layer {phase.layer}: {inst.node_name(h)} forwards {seg.start}..{seg.end} at rate {rate}")
for item in plan.trees:
    edges = [(inst.node_name(u), inst.node_name(v)) for u, v in item.tree.edges()]
    print(f"tree on layer {item.segment.layer} {item.segment.start}..{item.segment.end}: {edges}")

report = verify_plan(inst, plan)
print("verified:", report.ok)
print("uploads:", {inst.node_name(v): str(u) for v, u in report.upload_usage.items()})
print("total upload:", plan_stats(plan).total_upload)

# The plan round-trips through JSON, which is what `layercast plan` writes.
print(plan_to_json(plan, inst)[:200], "...")
