"""Randomised cross-checks and region sweeps."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .capacity import check_feasibility
from .errors import LayercastError
from .model import Instance, to_fraction
from .oracle import oracle_feasible
from .scheduler import schedule
from .verifier import verify_plan


def random_instance(
    rng: random.Random,
    max_peers: int = 4,
    max_layers: int = 3,
    max_capacity: int = 6,
    max_rate: int = 3,
    max_denominator: int = 1,
) -> Instance:
    """Instance with integer numerators and denominators up to ``max_denominator``.

    The top-layer demander is forced by overwriting one random peer's demand.
    """
    k = rng.randint(1, max_peers)
    n = rng.randint(1, max_layers)

    def draw(top):
        q = rng.randint(1, max_denominator)
        return Fraction(rng.randint(0, top * q), q)

    tops = [rng.randint(1, n) for _ in range(k)]
    tops[rng.randrange(k)] = n
    return Instance(
        source_capacity=draw(max_capacity),
        peer_capacities=tuple(draw(max_capacity) for _ in range(k)),
        layer_rates=tuple(draw(max_rate) for _ in range(n)),
        max_layer=tuple(tops),
    )


@dataclass(frozen=True)
class CaseResult:
    index: int
    feasible: bool
    oracle: bool
    plan_ok: bool  # vacuously true for infeasible instances that raise Infeasible
    detail: str = ""

    @property
    def agree(self) -> bool:
        return self.feasible == self.oracle


def check_case(index: int, inst: Instance, peer_limit: int = 5) -> CaseResult:
    feasible = check_feasibility(inst).feasible
    oracle = oracle_feasible(inst, peer_limit)
    plan_ok, detail = True, ""
    try:
        plan = schedule(inst)
    except LayercastError as exc:
        if feasible:
            plan_ok, detail = False, f"schedule failed: {exc}"
    else:
        if not feasible:
            plan_ok, detail = False, "schedule accepted an infeasible instance"
        else:
            report = verify_plan(inst, plan)
            if not report.ok:
                plan_ok, detail = False, "; ".join(f"{k}: {d}" for k, d in report.violations)
    return CaseResult(index, feasible, oracle, plan_ok, detail)


def _check_args(args):
    return check_case(*args)


@dataclass(frozen=True)
class CompareSummary:
    seed: int
    results: tuple = field(repr=False)

    @property
    def count(self) -> int:
        return len(self.results)

    @property
    def agreed(self) -> int:
        return sum(r.agree for r in self.results)

    @property
    def plan_failures(self) -> int:
        return sum(not r.plan_ok for r in self.results)

    @property
    def ok(self) -> bool:
        return self.agreed == self.count and self.plan_failures == 0

    def line(self) -> str:
        return f"{self.agreed}/{self.count} agree, {self.plan_failures} plan failures"


def compare(
    seed: int,
    count: int,
    max_peers: int = 4,
    max_layers: int = 3,
    max_capacity: int = 6,
    max_rate: int = 3,
    max_denominator: int = 1,
    jobs: int = 1,
) -> CompareSummary:
    rng = random.Random(seed)
    cases = [
        (i, random_instance(rng, max_peers, max_layers, max_capacity, max_rate, max_denominator), max_peers)
        for i in range(count)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = tuple(pool.map(_check_args, cases, chunksize=8))
    else:
        results = tuple(map(_check_args, cases))
    return CompareSummary(seed, results)


def grid_values(start, stop, step) -> list:
    start, stop, step = to_fraction(start), to_fraction(stop), to_fraction(step)
    if step <= 0 or stop < start:
        raise ValueError("empty sweep grid")
    out, v = [], start
    while v <= stop:
        out.append(v)
        v += step
    return out


def sweep(inst: Instance, layer_a: int, layer_b: int, values_a: Sequence, values_b: Sequence) -> list:
    """Rows ``(L_a, L_b, feasible, required_total)`` over a grid of two layer rates.

    ``required_total`` is ``None`` where it is undefined (degenerate relay term).
    """
    if layer_a == layer_b or not (1 <= layer_a <= inst.n and 1 <= layer_b <= inst.n):
        raise ValueError(f"need two distinct layers in [1, {inst.n}]")
    rows = []
    for a in values_a:
        for b in values_b:
            rates = list(inst.layer_rates)
            rates[layer_a - 1], rates[layer_b - 1] = to_fraction(a), to_fraction(b)
            report = check_feasibility(inst.with_rates(rates))
            rows.append((to_fraction(a), to_fraction(b), report.feasible, report.required_total))
    return rows
