"""Transmission plans and their JSON wire format.

A plan is an ordered list of relay phases followed by distribution trees.
Data is addressed by :class:`Segment`, a half-open interval ``[start, end)``
of one layer's stream, so "distinct information" is plain interval
disjointness.  Nodes are integers (0 = source); the JSON form uses the
instance's peer ids and the literal ``"source"``.

JSON layout (a top-level list)::

    {"type": "relay", "layer": j,
     "source_to": [{"helper": id, "interval": ["a", "b"], "rate": "p/q"}, ...],
     "helper_to": [{"helper": id, "to": [id, ...], "interval": [...], "rate": ...}, ...]}
    {"type": "tree", "layer": j, "interval": ["a", "b"], "rate": "p/q",
     "edges": [[from, to], ...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InstanceError, PlanFormatError
from .model import SOURCE, Instance, format_rational, to_fraction


@dataclass(frozen=True)
class Segment:
    layer: int
    start: Fraction
    end: Fraction

    @property
    def width(self) -> Fraction:
        return self.end - self.start

    def __str__(self):
        return f"x{self.layer}[{format_rational(self.start)}, {format_rational(self.end)})"


@dataclass(frozen=True)
class DegreeTree:
    """Rooted directed tree; ``children`` maps a node to its ordered children."""

    root: int
    children: dict = field(default_factory=dict)

    def edges(self) -> list:
        return [(u, v) for u, vs in self.children.items() for v in vs]

    def out_degree(self, node: int) -> int:
        return len(self.children.get(node, ()))

    def nodes(self) -> list:
        seen = [self.root]
        for u, v in self.edges():
            for x in (u, v):
                if x not in seen:
                    seen.append(x)
        return seen

    def relabel(self, mapping) -> "DegreeTree":
        return DegreeTree(
            mapping[self.root],
            {mapping[u]: tuple(mapping[v] for v in vs) for u, vs in self.children.items()},
        )

    @classmethod
    def from_edges(cls, root: int, edges) -> "DegreeTree":
        children: dict = {}
        for u, v in edges:
            children.setdefault(u, ())
            children[u] = children[u] + (v,)
        return cls(root, children)


@dataclass(frozen=True)
class Send:
    """``sender`` transmits ``segment`` to every node in ``receivers`` at ``rate``."""

    sender: int
    receivers: tuple
    segment: Segment
    rate: Fraction


@dataclass(frozen=True)
class RelayPhase:
    """Source splits a portion of ``layer`` over helpers; each helper fans its part out."""

    layer: int
    source_to: tuple
    helper_to: tuple

    @property
    def helper_shares(self) -> dict:
        """helper -> (segment, rate) as received from the source."""
        return {s.receivers[0]: (s.segment, s.rate) for s in self.source_to}

    @property
    def recipients(self) -> tuple:
        out = []
        for s in self.helper_to:
            out.extend(r for r in s.receivers if r not in out)
        return tuple(out)

    @property
    def source_rate(self) -> Fraction:
        return sum((s.rate for s in self.source_to), Fraction(0))


@dataclass(frozen=True)
class TreeTransmission:
    tree: DegreeTree
    segment: Segment
    rate: Fraction


@dataclass(frozen=True)
class TransmissionPlan:
    phases: tuple = ()
    trees: tuple = ()


def _interval(seg: Segment) -> list:
    return [format_rational(seg.start), format_rational(seg.end)]


def plan_to_list(plan: TransmissionPlan, inst: Instance) -> list:
    name = inst.node_name
    out = []
    for ph in plan.phases:
        out.append({
            "type": "relay",
            "layer": ph.layer,
            "source_to": [
                {"helper": name(s.receivers[0]), "interval": _interval(s.segment),
                 "rate": format_rational(s.rate)}
                for s in ph.source_to
            ],
            "helper_to": [
                {"helper": name(s.sender), "to": [name(r) for r in s.receivers],
                 "interval": _interval(s.segment), "rate": format_rational(s.rate)}
                for s in ph.helper_to
            ],
        })
    for t in plan.trees:
        out.append({
            "type": "tree",
            "layer": t.segment.layer,
            "interval": _interval(t.segment),
            "rate": format_rational(t.rate),
            "edges": [[name(u), name(v)] for u, v in t.tree.edges()],
        })
    return out


def plan_to_json(plan: TransmissionPlan, inst: Instance) -> str:
    return json.dumps(plan_to_list(plan, inst), indent=2) + "\n"


def _node(inst: Instance, ident) -> int:
    try:
        return inst.node_index(str(ident))
    except KeyError:
        raise PlanFormatError(f"unknown node id {ident!r}") from None


def _rational(value) -> Fraction:
    try:
        return to_fraction(value)
    except InstanceError as exc:
        raise PlanFormatError(str(exc)) from None


def _segment(layer, doc) -> Segment:
    iv = doc.get("interval")
    if not isinstance(iv, list) or len(iv) != 2:
        raise PlanFormatError(f"bad interval {iv!r}")
    if isinstance(layer, bool) or not isinstance(layer, int):
        raise PlanFormatError(f"bad layer {layer!r}")
    return Segment(layer, _rational(iv[0]), _rational(iv[1]))


def plan_from_list(items, inst: Instance) -> TransmissionPlan:
    if not isinstance(items, list):
        raise PlanFormatError("plan document must be a JSON list")
    phases, trees = [], []
    try:
        for item in items:
            kind = item.get("type")
            layer = item.get("layer")
            if kind == "relay":
                source_to = tuple(
                    Send(SOURCE, (_node(inst, e["helper"]),), _segment(layer, e), _rational(e["rate"]))
                    for e in item.get("source_to", [])
                )
                helper_to = tuple(
                    Send(_node(inst, e["helper"]), tuple(_node(inst, r) for r in e["to"]),
                         _segment(layer, e), _rational(e["rate"]))
                    for e in item.get("helper_to", [])
                )
                phases.append(RelayPhase(layer, source_to, helper_to))
            elif kind == "tree":
                edges = [(_node(inst, u), _node(inst, v)) for u, v in item["edges"]]
                trees.append(TreeTransmission(
                    DegreeTree.from_edges(SOURCE, edges), _segment(layer, item), _rational(item["rate"])
                ))
            else:
                raise PlanFormatError(f"unknown plan element type {kind!r}")
    except (KeyError, TypeError, AttributeError, ValueError) as exc:
        if isinstance(exc, PlanFormatError):
            raise
        raise PlanFormatError(f"malformed plan element: {exc!r}") from None
    return TransmissionPlan(tuple(phases), tuple(trees))


def plan_from_json(text: str, inst: Instance) -> TransmissionPlan:
    try:
        items = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PlanFormatError(f"malformed JSON: {exc}") from None
    return plan_from_list(items, inst)
