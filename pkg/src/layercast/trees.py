"""Degree-prescribed trees and single-layer tree packing.

A layer of integer rate ``R`` reaching ``k`` receivers splits into ``R`` unit
rounds.  Each round is one tree in which every receiver has in-degree one and
each node's out-degree is the upload it spends on that round, so a round
costs exactly ``k`` units in total, at least one of them from the source.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import ScaleLimitExceeded
from .model import to_fraction
from .plan import DegreeTree

DEFAULT_MAX_UNITS = 10**6


def build_degree_tree(root_degree: int, peer_degrees: Sequence[int]) -> DegreeTree:
    """Tree rooted at node 0 over nodes ``1..k`` with the given out-degrees.

    Nodes are attached in descending degree order (ties by index), each one
    taking the oldest open slot and opening as many new slots as its degree.
    Sorting by degree guarantees a slot is always available.
    """
    k = len(peer_degrees)
    if any(d < 0 for d in peer_degrees):
        raise ValueError("degrees must be non-negative")
    if root_degree + sum(peer_degrees) != k:
        raise ValueError(f"degrees sum to {root_degree + sum(peer_degrees)}, expected {k}")
    if k > 0 and root_degree < 1:
        raise ValueError("root degree must be at least 1")

    order = sorted(range(1, k + 1), key=lambda v: (-peer_degrees[v - 1], v))
    slots = deque([0] * root_degree)
    children: dict = {0: []}
    for v in order:
        parent = slots.popleft()
        children[parent].append(v)
        children[v] = []
        slots.extend([v] * peer_degrees[v - 1])
    assert not slots
    return DegreeTree(0, {u: tuple(vs) for u, vs in children.items() if vs})


def _round_degrees(k: int, remaining: list) -> tuple:
    """Peers-first split of one unit round: largest remaining peers take up to k-1."""
    need = k - 1
    degrees = [0] * len(remaining)
    for i in sorted(range(len(remaining)), key=lambda i: (-remaining[i], i)):
        if need == 0:
            break
        take = min(remaining[i], need)
        degrees[i] = take
        need -= take
    return k - sum(degrees), tuple(degrees)


def pack_unit_trees(rate, source_cap, caps: Sequence, max_units: int = DEFAULT_MAX_UNITS) -> list:
    """Deliver ``rate`` to ``len(caps)`` receivers with the given upload budgets.

    Returns ``[(DegreeTree, rate), ...]`` over local nodes (0 = source,
    ``i`` = ``caps[i-1]``); consecutive identical rounds are merged.  The
    rates sum to ``rate``.
    """
    rate, source_cap = to_fraction(rate), to_fraction(source_cap)
    caps = [to_fraction(c) for c in caps]
    k = len(caps)
    if rate == 0 or k == 0:
        return []
    if source_cap < rate:
        raise ValueError(f"source budget {source_cap} below rate {rate}")
    if source_cap + sum(caps) < k * rate:
        raise ValueError(f"total budget {source_cap + sum(caps)} below {k} x {rate}")

    scale = lcm(rate.denominator, source_cap.denominator, *(c.denominator for c in caps))
    rounds = int(rate * scale)
    if rounds * k > max_units:
        raise ScaleLimitExceeded(
            f"{rounds} unit rounds x {k} receivers exceeds the {max_units}-unit guard (scale 1/{scale})"
        )
    src = int(source_cap * scale)
    remaining = [int(c * scale) for c in caps]

    packed: list = []
    last = None
    for left in range(rounds, 0, -1):
        a0, degrees = _round_degrees(k, remaining)
        assert 1 <= a0 <= src, "source budget exhausted"
        assert src - a0 >= left - 1
        src -= a0
        for i, d in enumerate(degrees):
            remaining[i] -= d
        if (a0, degrees) == last:
            tree, units = packed[-1]
            packed[-1] = (tree, units + 1)
        else:
            packed.append((build_degree_tree(a0, degrees), 1))
            last = (a0, degrees)
    return [(tree, Fraction(units, scale)) for tree, units in packed]
