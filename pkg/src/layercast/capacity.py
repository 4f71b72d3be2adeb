"""Closed-form capacity region test.

A rate vector is achievable iff the source can emit every layer once,
``C_0 >= sum(L)``, and the total upload ``C_0 + sum(C_i)`` covers

    sum_j |X_j| L_j  +  sum_i (N_{d_i} - N_{d_{i+1}}) / (|X_{d_i}| - 1)

with ``d`` the dominant subsequence of the margins.  The second term is the
extra upload spent relaying layers through peers that do not demand them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateDenominator
from .margins import MarginVector, margins
from .model import Instance, demand_profile, format_rational, to_fraction


@dataclass(frozen=True)
class FeasibilityReport:
    source_ok: bool
    total_ok: bool
    required_total: Optional[Fraction]
    actual_total: Fraction
    slack: Optional[Fraction]
    margins: MarginVector
    diagnostic: Optional[str] = None

    @property
    def feasible(self) -> bool:
        return self.source_ok and self.total_ok

    def summary(self) -> str:
        verdict = "feasible" if self.feasible else "infeasible"
        parts = [verdict, f"actual_total={format_rational(self.actual_total)}"]
        if self.required_total is not None:
            parts.append(f"required_total={format_rational(self.required_total)}")
        if not self.source_ok:
            parts.append("source cannot emit all layers")
        if self.diagnostic:
            parts.append(self.diagnostic)
        return ", ".join(parts)

    def to_dict(self) -> dict:
        opt = lambda q: None if q is None else format_rational(q)  # noqa: E731
        return {
            "feasible": self.feasible,
            "source_ok": self.source_ok,
            "total_ok": self.total_ok,
            "required_total": opt(self.required_total),
            "actual_total": format_rational(self.actual_total),
            "slack": opt(self.slack),
            "margins": [format_rational(v) for v in self.margins.values],
            "dominant_indices": list(self.margins.dominant_indices),
            "diagnostic": self.diagnostic,
        }


def relay_penalty(inst: Instance, mv: Optional[MarginVector] = None) -> Fraction:
    """The dominant-subsequence term of the required total upload."""
    mv = mv or margins(inst)
    counts = demand_profile(inst).demander_count
    d = mv.dominant_indices
    penalty = Fraction(0)
    for a, b in zip(d, d[1:]):
        # every index before the last in d carries a strictly positive margin
        if counts[a - 1] <= 1:
            raise DegenerateDenominator(
                f"layer {a} has positive margin {format_rational(mv.margin(a))} "
                f"but only {counts[a - 1]} demander(s)"
            )
        penalty += (mv.margin(a) - mv.margin(b)) / (counts[a - 1] - 1)
    return penalty


def required_total_upload(inst: Instance, mv: Optional[MarginVector] = None) -> Fraction:
    counts = demand_profile(inst).demander_count
    base = sum((c * r for c, r in zip(counts, inst.layer_rates)), Fraction(0))
    return base + relay_penalty(inst, mv)


def check_feasibility(inst: Instance) -> FeasibilityReport:
    mv = margins(inst)
    actual = inst.source_capacity + sum(inst.peer_capacities, Fraction(0))
    source_ok = inst.source_capacity >= sum(inst.layer_rates, Fraction(0))
    try:
        required = required_total_upload(inst, mv)
    except DegenerateDenominator as exc:
        return FeasibilityReport(source_ok, False, None, actual, None, mv, str(exc))
    total_ok = actual >= required
    report = FeasibilityReport(source_ok, total_ok, required, actual, actual - required, mv)
    if report.feasible:
        assert mv.margin(1) <= 0, "feasible instance with positive first margin"
    return report


def is_feasible(inst: Instance) -> bool:
    return check_feasibility(inst).feasible


def max_scale(inst: Instance, direction: Sequence, tolerance=Fraction(1, 1000)) -> Fraction:
    """Largest ``theta`` (within ``tolerance``) with ``theta * direction`` feasible.

    Feasibility is downward closed along the ray, so plain bisection works.
    The source bound ``C_0 / sum(direction)`` is tried first and returned
    exactly when it is already feasible.  The returned value is always a
    feasible scale.
    """
    direction = tuple(to_fraction(x) for x in direction)
    tolerance = to_fraction(tolerance)
    if len(direction) != inst.n:
        raise ValueError(f"direction has {len(direction)} entries for {inst.n} layers")
    if any(x < 0 for x in direction):
        raise ValueError("direction must be non-negative")
    if not any(direction):
        raise ValueError("direction is all zero")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")

    def ok(theta):
        return is_feasible(inst.with_rates([theta * x for x in direction]))

    lo, hi = Fraction(0), inst.source_capacity / sum(direction)
    if ok(hi):
        return hi
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo
