import random

import pytest

from conftest import w1, w2
from layercast.errors import EnumerationLimitExceeded
from layercast.harness import random_instance
from layercast.model import Instance
from layercast.oracle import enumerate_trees, oracle_feasible, oracle_solve, tree_catalog
from layercast.scheduler import schedule


def edge_sets(trees):
    return {frozenset(t.edges()) for t in trees}


def test_two_demanders():
    inst = Instance(1, (1, 1), (1,), (1, 1))
    assert edge_sets(enumerate_trees(inst, 1)) == {
        frozenset({(0, 1), (0, 2)}),
        frozenset({(0, 1), (1, 2)}),
        frozenset({(0, 2), (2, 1)}),
    }


def test_helper_only_as_relay():
    inst = Instance(1, (1, 1), (1, 1), (2, 1))
    assert edge_sets(enumerate_trees(inst, 2)) == {frozenset({(0, 1)}), frozenset({(0, 2), (2, 1)})}


def test_single_demander():
    assert len(enumerate_trees(Instance(1, (1,), (1,), (1,)), 1)) == 1


def test_catalog_counts_match_cayley():
    # with no helpers, trees on {source} + k demanders number (k+1)^(k-1)
    for k in range(1, 5):
        inst = Instance(1, (0,) * k, (1,), (1,) * k)
        trees = enumerate_trees(inst, 1)
        assert len(trees) == (k + 1) ** (k - 1)
        assert len(edge_sets(trees)) == len(trees)


def test_catalog_shape():
    inst = Instance(1, (1, 1, 1, 1), (1, 1), (2, 1, 1, 2))
    for t in enumerate_trees(inst, 2):
        nodes = set(t.nodes())
        assert {0, 1, 4} <= nodes
        for h in nodes - {0, 1, 4}:
            assert t.out_degree(h) >= 1


def test_limit():
    with pytest.raises(EnumerationLimitExceeded):
        enumerate_trees(Instance(1, (0,) * 6, (1,), (1,) * 6), 1)


def test_w1_oracle():
    res = oracle_solve(w1())
    assert res.feasible
    assert sum(x for j, _, x in res.tree_rates if j == 2) == 1
    assert not oracle_feasible(Instance(2, (0, 0, 3), (1, 1), (2, 2, 1)))


def test_all_zero_rates():
    res = oracle_solve(Instance(0, (0, 0), (0, 0), (2, 1)))
    assert res.feasible and res.tree_rates == ()


def test_infeasible_certificate_is_farkas():
    inst = Instance(2, (0, 0, 3), (1, 1), (2, 2, 1))
    res = oracle_solve(inst)
    u, v = res.layer_multipliers, res.node_multipliers
    assert all(y >= 0 for y in v)
    assert sum(y * inst.rate(j) for y, j in zip(u, (1, 2))) + sum(
        y * c for y, c in zip(v, inst.capacities)
    ) < 0


def test_adding_trees_never_hurts():
    rng = random.Random(11)
    for _ in range(40):
        inst = random_instance(rng, max_peers=3, max_layers=2)
        full = tree_catalog(inst)
        trimmed = {j: tuple(t for t in ts if rng.random() < 0.5) or ts[:1] for j, ts in full.items()}
        if oracle_solve(inst, catalog=trimmed).feasible:
            assert oracle_solve(inst, catalog=full).feasible


@pytest.mark.parametrize("inst", [w1(), w2(), Instance(6, (1, 0, 4, 4, 6), (1, 1, 1, 3), (4, 4, 3, 2, 1))])
def test_relay_phases_are_catalog_trees(inst):
    """Each helper's share is a source->helper->demanders tree, which the catalog holds."""
    catalog = tree_catalog(inst)
    for ph in schedule(inst).phases:
        trees = edge_sets(catalog[ph.layer])
        for s in ph.helper_to:
            edges = frozenset({(0, s.sender)} | {(s.sender, r) for r in s.receivers})
            assert edges in trees
