import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import instances, w1, w2
from layercast.capacity import (
    check_feasibility,
    is_feasible,
    max_scale,
    relay_penalty,
    required_total_upload,
)
from layercast.errors import DegenerateDenominator
from layercast.margins import margins
from layercast.model import Instance
from layercast.oracle import oracle_feasible


def test_required_total_worked_instances():
    assert required_total_upload(w1()) == 6
    assert required_total_upload(w2()) == 10


@pytest.mark.parametrize("inst", [w1(), w2()])
def test_required_total_is_tight_per_oracle(inst):
    # boundary instances: feasible as given, infeasible with any peer capacity shaved
    assert oracle_feasible(inst)
    for i, c in enumerate(inst.peer_capacities):
        if c > 0:
            caps = list(inst.peer_capacities)
            caps[i] -= Fraction(1, 4)
            assert not oracle_feasible(inst.with_capacities(inst.source_capacity, caps))


def test_no_positive_margin_means_no_penalty():
    inst = Instance(5, (3, 3, 3), (1, 1), (2, 2, 1))
    assert all(v <= 0 for v in margins(inst).values)
    assert relay_penalty(inst) == 0
    assert required_total_upload(inst) == 3 + 2


def test_check_w1():
    rep = check_feasibility(w1())
    assert rep.feasible and rep.slack == 0
    assert rep.actual_total == rep.required_total == 6


def test_check_w1_short_helper():
    rep = check_feasibility(Instance(2, (0, 0, 3), (1, 1), (2, 2, 1)))
    assert not rep.feasible
    assert rep.source_ok and not rep.total_ok
    assert (rep.required_total, rep.actual_total, rep.slack) == (6, 5, -1)


def test_source_too_small():
    rep = check_feasibility(Instance(0, (5, 5), (1,), (1, 1)))
    assert not rep.source_ok and not rep.feasible


def test_degenerate_denominator_is_reported():
    # single demander of layer 2 with a positive margin: only possible when the source is short
    inst = Instance(0, (0, 9), (1, 1), (2, 1))
    assert margins(inst).margin(2) > 0
    with pytest.raises(DegenerateDenominator):
        required_total_upload(inst)
    rep = check_feasibility(inst)
    assert not rep.feasible and not rep.total_ok
    assert rep.required_total is None and rep.diagnostic


@given(instances())
def test_verdict_invariants(inst):
    rep = check_feasibility(inst)
    assert rep.feasible == (rep.source_ok and rep.total_ok)
    if rep.slack is not None:
        assert (rep.slack >= 0) == rep.total_ok
    if rep.source_ok:
        assert rep.required_total is not None  # never degenerate once the source suffices
    if rep.feasible:
        assert rep.margins.margin(1) <= 0


@given(instances(), st.data())
def test_region_monotone(inst, data):
    if not is_feasible(inst):
        return
    node = data.draw(st.integers(0, inst.k))
    caps = list(inst.capacities)
    caps[node] += data.draw(st.sampled_from([Fraction(1, 3), Fraction(2)]))
    assert is_feasible(inst.with_capacities(caps[0], caps[1:]))
    j = data.draw(st.integers(0, inst.n - 1))
    rates = list(inst.layer_rates)
    rates[j] = rates[j] * data.draw(st.sampled_from([0, Fraction(1, 2), Fraction(9, 10)]))
    assert is_feasible(inst.with_rates(rates))


@given(instances(), st.sampled_from([Fraction(1, 2), Fraction(3), Fraction(7, 5)]))
def test_scale_invariance(inst, lam):
    a, b = check_feasibility(inst), check_feasibility(inst.scaled(lam))
    assert a.feasible == b.feasible
    assert b.actual_total == lam * a.actual_total
    if a.required_total is not None:
        assert b.required_total == lam * a.required_total


def test_single_layer_closed_form_grid():
    for k in (1, 2, 3):
        for c0 in range(5):
            for caps in itertools.product(range(4), repeat=k):
                for rate in range(3):
                    inst = Instance(c0, caps, (rate,), (1,) * k)
                    expected = c0 >= rate and c0 + sum(caps) >= k * rate
                    assert is_feasible(inst) == expected, inst


def test_max_scale_examples():
    assert max_scale(w1(), (1, 1), Fraction(1, 100)) == 1
    assert max_scale(Instance(2, (0,), (1,), (1,)), (1,), Fraction(1, 100)) == 2
    assert max_scale(Instance(0, (0, 0), (1, 1), (2, 2)), (1, 1), Fraction(1, 100)) == 0


def test_max_scale_bisection():
    # source allows 5/2; the total upload 6 must cover 5 theta (no relay needed below 5/3)
    inst = Instance(5, (0, 0, 1), (1, 1), (2, 2, 1))
    tol = Fraction(1, 1000)
    theta = max_scale(inst, (1, 1), tol)
    assert Fraction(6, 5) - tol <= theta <= Fraction(6, 5)
    assert is_feasible(inst.with_rates((theta, theta)))
    assert not is_feasible(inst.with_rates((theta + tol, theta + tol)))


def test_max_scale_errors():
    with pytest.raises(ValueError):
        max_scale(w1(), (0, 0), Fraction(1, 10))
    with pytest.raises(ValueError):
        max_scale(w1(), (1, 1), 0)
