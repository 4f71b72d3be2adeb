"""Margins of the per-layer sufficiency inequalities and their dominant subsequence.

The margin of layer ``j`` is

    N_j = sum_{i >= j} |X_i| L_i + sum_{i < j} L_i - (C_0 + sum_{p in X_j} C_p)

where ``|X_i|`` counts demanding peers only and the capacity sum includes the
source.  A positive margin means the demanders of layers ``j..n`` cannot carry
those layers on their own.  ``N_{n+1}`` is pinned to zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import Instance, demand_profile


@dataclass(frozen=True)
class MarginVector:
    values: tuple
    dominant_indices: tuple

    def __post_init__(self):
        assert self.values[-1] == 0
        assert self.dominant_indices[-1] == len(self.values)

    def margin(self, j: int) -> Fraction:
        """``N_j`` with 1-based ``j`` in ``1..n+1``."""
        return self.values[j - 1]

    @property
    def n(self) -> int:
        return len(self.values) - 1

    @property
    def positive(self) -> tuple:
        """Indices with a strictly positive margin (the unmet inequalities)."""
        return tuple(j for j, v in enumerate(self.values[:-1], start=1) if v > 0)


def raw_margin(inst: Instance, j: int) -> Fraction:
    """The margin formula evaluated literally, also at ``j = n + 1``.

    At ``n + 1`` this is ``sum(L) - C_0`` rather than the pinned zero; it is
    the value under which the shell-capacity identity holds for ``t = n + 1``.
    """
    n = inst.n
    if not 1 <= j <= n + 1:
        raise IndexError(f"layer {j} outside [1, {n + 1}]")
    total = Fraction(0)
    for i in range(j, n + 1):
        total += len(inst.demanders(i)) * inst.rate(i)
    total += sum(inst.layer_rates[: j - 1], Fraction(0))
    total -= inst.source_capacity
    total -= sum((inst.capacities[p] for p in inst.demanders(j)), Fraction(0))
    return total


def dominant_subsequence(seq: Sequence) -> tuple:
    """1-based indices of the dominant subsequence of ``seq``.

    The last index is always selected; walking leftwards, the next selected
    index is the greatest one whose value strictly exceeds the last selected
    value.

    >>> dominant_subsequence([3, 1, 2, 0])
    (1, 3, 4)
    """
    if len(seq) == 0:
        raise ValueError("dominant subsequence of an empty sequence")
    picked = [len(seq)]
    current = seq[-1]
    for i in range(len(seq) - 1, 0, -1):
        if seq[i - 1] > current:
            picked.append(i)
            current = seq[i - 1]
    return tuple(reversed(picked))


def margins(inst: Instance) -> MarginVector:
    profile = demand_profile(inst)
    values = []
    prefix = Fraction(0)
    suffix = [Fraction(0)] * (inst.n + 2)
    for i in range(inst.n, 0, -1):
        suffix[i] = suffix[i + 1] + profile.demander_count[i - 1] * inst.rate(i)
    for j in range(1, inst.n + 1):
        values.append(suffix[j] + prefix - profile.capacity_sum[j - 1])
        prefix += inst.rate(j)
    values.append(Fraction(0))
    return MarginVector(tuple(values), dominant_subsequence(values))


def shell_capacity(inst: Instance, j: int, t: int) -> Fraction:
    """Total capacity of peers demanding layer ``j`` but not layer ``t``."""
    if not 1 <= j < t <= inst.n + 1:
        raise IndexError(f"need 1 <= j < t <= {inst.n + 1}, got j={j}, t={t}")
    return sum(
        (c for c, top in zip(inst.peer_capacities, inst.max_layer) if j <= top < t),
        Fraction(0),
    )


def shell_capacity_identity(inst: Instance, j: int, t: int) -> Fraction:
    """Shell capacity recovered from margins alone.

    ``N_t - N_j + sum_{i=j}^{t-1} L_i (|X_i| - 1)``, using :func:`raw_margin`
    so that ``t = n + 1`` is covered too.
    """
    if not 1 <= j < t <= inst.n + 1:
        raise IndexError(f"need 1 <= j < t <= {inst.n + 1}, got j={j}, t={t}")
    total = raw_margin(inst, t) - raw_margin(inst, j)
    for i in range(j, t):
        total += inst.rate(i) * (len(inst.demanders(i)) - 1)
    return total
