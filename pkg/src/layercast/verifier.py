"""Independent plan checking against the raw network constraints.

Nothing here reuses scheduler bookkeeping.  A plan passes when

* every node's upload (rate x number of receivers, summed over its sends)
  is within its capacity;
* no peer forwards data it does not hold: tree edges leave the source or a
  node the tree already reached, relay helpers forward only what the source
  handed them in the same phase;
* for every layer and every peer demanding it, the received segments tile
  ``[0, L_j)`` exactly, with neither gaps nor overlaps.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction

from .model import SOURCE, Instance, format_rational
from .plan import TransmissionPlan

CAPACITY_EXCEEDED = "CapacityExceeded"
AVAILABILITY_VIOLATION = "AvailabilityViolation"
COVERAGE_GAP = "CoverageGap"
COVERAGE_OVERLAP = "CoverageOverlap"
MALFORMED_PLAN = "MalformedPlan"


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    upload_usage: dict
    violations: tuple

    def kinds(self) -> set:
        return {kind for kind, _ in self.violations}

    def to_dict(self, inst: Instance) -> dict:
        return {
            "ok": self.ok,
            "upload_usage": {inst.node_name(v): format_rational(u) for v, u in self.upload_usage.items()},
            "violations": [{"kind": k, "detail": d} for k, d in self.violations],
        }


def _covered(pieces, start, end) -> bool:
    """True if the union of ``pieces`` contains ``[start, end)``."""
    pos = start
    for a, b in sorted(pieces):
        if a > pos:
            break
        pos = max(pos, b)
        if pos >= end:
            return True
    return pos >= end


class _Checker:
    def __init__(self, inst: Instance):
        self.inst = inst
        self.usage = {v: Fraction(0) for v in range(inst.k + 1)}
        self.received = defaultdict(list)  # (peer, layer) -> [(a, b)]
        self.violations = []

    def flag(self, kind, detail):
        self.violations.append((kind, detail))

    def name(self, v):
        return self.inst.node_name(v) if self.valid_node(v) else repr(v)

    def valid_node(self, v) -> bool:
        return isinstance(v, int) and not isinstance(v, bool) and 0 <= v <= self.inst.k

    def valid_segment(self, where, seg, rate) -> bool:
        if not (isinstance(seg.layer, int) and 1 <= seg.layer <= self.inst.n):
            self.flag(MALFORMED_PLAN, f"{where}: unknown layer {seg.layer!r}")
            return False
        if not seg.start < seg.end:
            self.flag(MALFORMED_PLAN, f"{where}: empty or inverted interval {seg}")
            return False
        if seg.start < 0 or seg.end > self.inst.rate(seg.layer):
            self.flag(MALFORMED_PLAN, f"{where}: {seg} outside the layer extent")
            return False
        if rate != seg.end - seg.start:
            self.flag(MALFORMED_PLAN, f"{where}: rate {format_rational(rate)} != width of {seg}")
        return True

    def send(self, sender, receivers, seg, rate):
        self.usage[sender] += rate * len(receivers)
        for r in receivers:
            self.received[(r, seg.layer)].append((seg.start, seg.end))

    def relay(self, idx, phase):
        where = f"relay #{idx}"
        held = defaultdict(list)
        for s in phase.source_to:
            if s.sender != SOURCE:
                self.flag(MALFORMED_PLAN, f"{where}: first hop sent by {self.name(s.sender)}")
                continue
            if not all(self.valid_node(r) and r != SOURCE for r in s.receivers):
                self.flag(MALFORMED_PLAN, f"{where}: bad receivers {s.receivers!r}")
                continue
            if s.segment.layer != phase.layer:
                self.flag(MALFORMED_PLAN, f"{where}: segment {s.segment} not of layer {phase.layer}")
                continue
            if not self.valid_segment(where, s.segment, s.rate):
                continue
            self.send(SOURCE, s.receivers, s.segment, s.rate)
            for r in s.receivers:
                held[r].append((s.segment.start, s.segment.end))
        for s in phase.helper_to:
            if not self.valid_node(s.sender) or not all(
                self.valid_node(r) and r != SOURCE and r != s.sender for r in s.receivers
            ):
                self.flag(MALFORMED_PLAN, f"{where}: bad second hop {s.sender!r} -> {s.receivers!r}")
                continue
            if s.segment.layer != phase.layer:
                self.flag(MALFORMED_PLAN, f"{where}: segment {s.segment} not of layer {phase.layer}")
                continue
            if not self.valid_segment(where, s.segment, s.rate):
                continue
            if s.sender != SOURCE and not _covered(held[s.sender], s.segment.start, s.segment.end):
                self.flag(
                    AVAILABILITY_VIOLATION,
                    f"{where}: {self.name(s.sender)} forwards {s.segment} it never received",
                )
            self.send(s.sender, s.receivers, s.segment, s.rate)

    def tree(self, idx, item):
        where = f"tree #{idx}"
        tree, seg = item.tree, item.segment
        if tree.root != SOURCE:
            self.flag(MALFORMED_PLAN, f"{where}: rooted at {self.name(tree.root)}, not the source")
            return
        edges = tree.edges()
        for u, v in edges:
            if not (self.valid_node(u) and self.valid_node(v)) or u == v or v == SOURCE:
                self.flag(MALFORMED_PLAN, f"{where}: bad edge ({u!r}, {v!r})")
                return
        if edges and not any(u == SOURCE for u, _ in edges):
            self.flag(MALFORMED_PLAN, f"{where}: no edge leaves the source")
            return
        if not self.valid_segment(where, seg, item.rate):
            return
        out = defaultdict(list)
        for u, v in edges:
            out[u].append(v)
        reached = {SOURCE}
        queue = deque([SOURCE])
        while queue:
            u = queue.popleft()
            for v in out[u]:
                if v not in reached:
                    reached.add(v)
                    queue.append(v)
        for u, v in edges:
            if u not in reached:
                self.flag(
                    AVAILABILITY_VIOLATION,
                    f"{where}: {self.name(u)} forwards {seg} to {self.name(v)} without receiving it",
                )
            self.send(u, (v,), seg, item.rate)

    def capacity(self):
        for v, used in self.usage.items():
            if used > self.inst.capacities[v]:
                self.flag(
                    CAPACITY_EXCEEDED,
                    f"{self.name(v)} uploads {format_rational(used)} > "
                    f"{format_rational(self.inst.capacities[v])}",
                )

    def coverage(self):
        for j in range(1, self.inst.n + 1):
            extent = self.inst.rate(j)
            for p in self.inst.demanders(j):
                pos = Fraction(0)
                for a, b in sorted(self.received[(p, j)]):
                    if a < pos:
                        self.flag(COVERAGE_OVERLAP, f"{self.name(p)} layer {j}: [{a}, {min(b, pos)}) twice")
                    elif a > pos:
                        self.flag(COVERAGE_GAP, f"{self.name(p)} layer {j}: missing [{pos}, {a})")
                    pos = max(pos, b)
                if pos < extent:
                    self.flag(COVERAGE_GAP, f"{self.name(p)} layer {j}: missing [{pos}, {extent})")


def verify_plan(inst: Instance, plan: TransmissionPlan) -> VerificationReport:
    chk = _Checker(inst)
    for idx, phase in enumerate(plan.phases):
        chk.relay(idx, phase)
    for idx, item in enumerate(plan.trees):
        chk.tree(idx, item)
    chk.capacity()
    chk.coverage()
    return VerificationReport(not chk.violations, dict(chk.usage), tuple(chk.violations))


def malformed_report(inst: Instance, detail: str) -> VerificationReport:
    """Report for a plan document that could not even be parsed."""
    return VerificationReport(
        False, {v: Fraction(0) for v in range(inst.k + 1)}, ((MALFORMED_PLAN, detail),)
    )


@dataclass(frozen=True)
class PlanStats:
    upload: dict
    delivered: dict  # layer -> total width originated by the source
    phases: int
    trees: int

    @property
    def total_upload(self) -> Fraction:
        return sum(self.upload.values(), Fraction(0))


def plan_stats(plan: TransmissionPlan) -> PlanStats:
    upload = defaultdict(Fraction)
    delivered = defaultdict(Fraction)
    for phase in plan.phases:
        for s in phase.source_to + phase.helper_to:
            if s.rate < 0:
                raise ValueError(f"negative rate in relay phase for layer {phase.layer}")
            upload[s.sender] += s.rate * len(s.receivers)
        for s in phase.source_to:
            delivered[phase.layer] += s.rate
    for item in plan.trees:
        if item.rate < 0:
            raise ValueError("negative tree rate")
        for u, _ in item.tree.edges():
            upload[u] += item.rate
        delivered[item.segment.layer] += item.rate
    return PlanStats(dict(upload), dict(delivered), len(plan.phases), len(plan.trees))
