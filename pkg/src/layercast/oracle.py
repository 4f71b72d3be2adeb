"""Brute-force routing feasibility for small instances.

Routing one layer amounts to a fractional packing of source-rooted trees that
reach all of its demanders.  Every such tree is enumerated, possibly passing
through helpers (peers not demanding the layer).  A helper that ends up a
leaf only receives data it neither uses nor forwards; dropping it from the
tree lowers the upload and changes nothing else, so leaf helpers are pruned
without losing any routing strategy.

The resulting linear program (one rate per tree, rates of a layer summing to
its rate, per-node upload within capacity) is solved exactly by
:mod:`layercast.lp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Optional

from .errors import EnumerationLimitExceeded
from .lp import solve_feasibility
from .model import SOURCE, Instance
from .plan import DegreeTree

DEFAULT_PEER_LIMIT = 5


def _is_arborescence(parent: dict) -> bool:
    for start in parent:
        seen = set()
        v = start
        while v != SOURCE:
            if v in seen:
                return False
            seen.add(v)
            v = parent[v]
    return True


@lru_cache(maxsize=None)
def _catalog(demanders: tuple, helpers: tuple) -> tuple:
    trees = []
    for size in range(len(helpers) + 1):
        for relays in combinations(helpers, size):
            members = demanders + relays
            nodes = (SOURCE,) + members
            choices = [[u for u in nodes if u != v] for v in members]
            for parents in product(*choices):
                parent = dict(zip(members, parents))
                if not _is_arborescence(parent):
                    continue
                if any(h not in parents for h in relays):
                    continue
                edges = sorted((p, v) for v, p in parent.items())
                trees.append(DegreeTree.from_edges(SOURCE, edges))
    return tuple(trees)


def enumerate_trees(inst: Instance, j: int, limit: int = DEFAULT_PEER_LIMIT) -> tuple:
    """All source-rooted trees spanning the demanders of layer ``j``.

    Helpers may appear, but only as internal relays.
    """
    if inst.k > limit:
        raise EnumerationLimitExceeded(f"{inst.k} peers exceeds the enumeration limit {limit}")
    demanders = inst.demanders(j)
    helpers = tuple(i for i in range(1, inst.k + 1) if i not in demanders)
    return _catalog(demanders, helpers)


def tree_catalog(inst: Instance, limit: int = DEFAULT_PEER_LIMIT) -> dict:
    return {j: enumerate_trees(inst, j, limit) for j in range(1, inst.n + 1)}


@dataclass(frozen=True)
class OracleResult:
    feasible: bool
    # (layer, tree, rate) for every tree with a positive rate, when feasible
    tree_rates: Optional[tuple] = None
    # Farkas multipliers (per layer, per node) when infeasible
    layer_multipliers: Optional[tuple] = None
    node_multipliers: Optional[tuple] = None


def oracle_solve(inst: Instance, limit: int = DEFAULT_PEER_LIMIT, catalog: Optional[dict] = None) -> OracleResult:
    catalog = catalog if catalog is not None else tree_catalog(inst, limit)
    columns = [(j, t) for j in range(1, inst.n + 1) if inst.rate(j) > 0 for t in catalog[j]]
    active = [j for j in range(1, inst.n + 1) if inst.rate(j) > 0]
    A_eq = [[Fraction(1 if col_j == j else 0) for col_j, _ in columns] for j in active]
    b_eq = [inst.rate(j) for j in active]
    A_ub = [[Fraction(t.out_degree(v)) for _, t in columns] for v in range(inst.k + 1)]
    b_ub = list(inst.capacities)
    res = solve_feasibility(A_eq, b_eq, A_ub, b_ub, len(columns))
    if res.feasible:
        rates = tuple((j, t, x) for (j, t), x in zip(columns, res.x) if x > 0)
        return OracleResult(True, tree_rates=rates)
    return OracleResult(False, layer_multipliers=res.farkas_eq, node_multipliers=res.farkas_ub)


def oracle_feasible(inst: Instance, limit: int = DEFAULT_PEER_LIMIT) -> bool:
    return oracle_solve(inst, limit).feasible
