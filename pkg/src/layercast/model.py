"""Problem instances: upload capacities, layer rates and nested demands.

Node 0 is always the source; peers are numbered 1..k in file order.  Layer
indices are 1-based throughout the library so that ``demanders(j)`` reads the
same way as the demand sets it models.

All quantities are :class:`fractions.Fraction`; nothing is ever rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .errors import DemandOutOfRange, InstanceError

SOURCE = 0
SOURCE_ID = "source"


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: they would silently smuggle rounding into an exact
    computation.
    """
    if isinstance(value, bool):
        raise InstanceError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise InstanceError(f"not a rational: {value!r}") from None
        if q == 0:
            raise InstanceError(f"zero denominator in {value!r}")
        return Fraction(p, q)
    raise InstanceError(f"unsupported rational value {value!r} ({type(value).__name__})")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Instance:
    source_capacity: Fraction
    peer_capacities: tuple
    layer_rates: tuple
    max_layer: tuple
    peer_ids: tuple = field(default=())

    def __post_init__(self):
        c0 = to_fraction(self.source_capacity)
        caps = tuple(to_fraction(c) for c in self.peer_capacities)
        rates = tuple(to_fraction(r) for r in self.layer_rates)
        top = tuple(self.max_layer)
        ids = tuple(self.peer_ids) or tuple(f"p{i}" for i in range(1, len(caps) + 1))
        object.__setattr__(self, "source_capacity", c0)
        object.__setattr__(self, "peer_capacities", caps)
        object.__setattr__(self, "layer_rates", rates)
        object.__setattr__(self, "max_layer", top)
        object.__setattr__(self, "peer_ids", ids)
        self._validate()

    def _validate(self):
        k, n = len(self.peer_capacities), len(self.layer_rates)
        if k < 1:
            raise InstanceError("at least one peer is required")
        if n < 1:
            raise InstanceError("at least one layer is required")
        if len(self.max_layer) != k:
            raise InstanceError(f"{len(self.max_layer)} max_layer entries for {k} peers")
        if len(self.peer_ids) != k:
            raise InstanceError(f"{len(self.peer_ids)} peer ids for {k} peers")
        if len(set(self.peer_ids)) != k or SOURCE_ID in self.peer_ids:
            raise InstanceError("peer ids must be unique and differ from 'source'")
        if self.source_capacity < 0 or any(c < 0 for c in self.peer_capacities):
            raise InstanceError("capacities must be non-negative")
        if any(r < 0 for r in self.layer_rates):
            raise InstanceError("layer rates must be non-negative")
        for pid, top in zip(self.peer_ids, self.max_layer):
            if isinstance(top, bool) or not isinstance(top, int) or not 1 <= top <= n:
                raise DemandOutOfRange(f"peer {pid}: max_layer {top!r} outside [1, {n}]")
        if n not in self.max_layer:
            raise InstanceError(f"no peer demands the top layer {n}")

    @property
    def k(self) -> int:
        return len(self.peer_capacities)

    @property
    def n(self) -> int:
        return len(self.layer_rates)

    @cached_property
    def capacities(self) -> tuple:
        """Capacities indexed by node: ``capacities[0]`` is the source."""
        return (self.source_capacity,) + self.peer_capacities

    def rate(self, j: int) -> Fraction:
        return self.layer_rates[j - 1]

    def demanders(self, j: int) -> tuple:
        """Peers (1-based node ids) that demand layer ``j``; empty for ``j = n + 1``."""
        if not 1 <= j <= self.n + 1:
            raise IndexError(f"layer {j} outside [1, {self.n + 1}]")
        return tuple(i for i, top in enumerate(self.max_layer, start=1) if top >= j)

    def node_name(self, node: int) -> str:
        return SOURCE_ID if node == SOURCE else self.peer_ids[node - 1]

    def node_index(self, name: str) -> int:
        if name == SOURCE_ID:
            return SOURCE
        try:
            return self.peer_ids.index(name) + 1
        except ValueError:
            raise KeyError(name) from None

    def with_rates(self, rates: Sequence) -> "Instance":
        return replace(self, layer_rates=tuple(rates))

    def with_capacities(self, source_capacity, peer_capacities: Sequence) -> "Instance":
        return replace(self, source_capacity=source_capacity, peer_capacities=tuple(peer_capacities))

    def scaled(self, factor) -> "Instance":
        f = to_fraction(factor)
        return replace(
            self,
            source_capacity=self.source_capacity * f,
            peer_capacities=tuple(c * f for c in self.peer_capacities),
            layer_rates=tuple(r * f for r in self.layer_rates),
        )

    def to_dict(self) -> dict:
        return {
            "source_capacity": format_rational(self.source_capacity),
            "peers": [
                {"id": pid, "capacity": format_rational(c), "max_layer": top}
                for pid, c, top in zip(self.peer_ids, self.peer_capacities, self.max_layer)
            ],
            "layer_rates": [format_rational(r) for r in self.layer_rates],
        }


@dataclass(frozen=True)
class DemandProfile:
    """Per-layer demander counts (source excluded) and capacity sums (source included)."""

    demander_count: tuple
    capacity_sum: tuple


def demand_profile(inst: Instance) -> DemandProfile:
    counts = []
    sums = []
    for j in range(1, inst.n + 1):
        members = inst.demanders(j)
        counts.append(len(members))
        sums.append(inst.source_capacity + sum((inst.capacities[i] for i in members), Fraction(0)))
    return DemandProfile(tuple(counts), tuple(sums))


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    missing = {"source_capacity", "peers", "layer_rates"} - doc.keys()
    if missing:
        raise InstanceError(f"missing keys: {sorted(missing)}")
    peers = doc["peers"]
    rates = doc["layer_rates"]
    if not isinstance(peers, list) or not isinstance(rates, list):
        raise InstanceError("'peers' and 'layer_rates' must be lists")
    ids, caps, tops = [], [], []
    for pos, peer in enumerate(peers, start=1):
        if not isinstance(peer, dict):
            raise InstanceError(f"peer #{pos} is not an object")
        try:
            caps.append(to_fraction(peer["capacity"]))
            tops.append(peer["max_layer"])
        except KeyError as exc:
            raise InstanceError(f"peer #{pos} lacks {exc.args[0]!r}") from None
        ids.append(str(peer.get("id", f"p{pos}")))
    return Instance(
        source_capacity=to_fraction(doc["source_capacity"]),
        peer_capacities=tuple(caps),
        layer_rates=tuple(to_fraction(r) for r in rates),
        max_layer=tuple(tops),
        peer_ids=tuple(ids),
    )


def parse_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed JSON: {exc}") from None
    return instance_from_dict(doc)


def serialize_instance(inst: Instance) -> str:
    return json.dumps(inst.to_dict(), indent=2) + "\n"


def load_instance(path) -> Instance:
    return parse_instance(Path(path).read_text())
