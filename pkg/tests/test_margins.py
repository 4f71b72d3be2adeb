from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import instances, w1, w2
from layercast.margins import (
    dominant_subsequence,
    margins,
    raw_margin,
    shell_capacity,
    shell_capacity_identity,
)
from layercast.model import Instance


@pytest.mark.parametrize(
    "inst, expected",
    [
        (w1(), (-1, 1, 0)),
        (w2(), (-1, 0, 1, 0)),
        (Instance(1, (0,), (1,), (1,)), (0, 0)),
    ],
)
def test_margins(inst, expected):
    assert margins(inst).values == expected


@pytest.mark.parametrize(
    "seq, expected",
    [((3, 1, 2, 0), (1, 3, 4)), ((-1, 1, 0), (2, 3)), ((0, 0), (2,)), ((5,), (1,)), ((2, 2, 1, 0), (2, 3, 4))],
)
def test_dominant_subsequence(seq, expected):
    assert dominant_subsequence(seq) == expected


def test_dominant_subsequence_empty():
    with pytest.raises(ValueError):
        dominant_subsequence([])


def test_margin_vector_carries_dominant_indices():
    assert margins(w1()).dominant_indices == (2, 3)
    assert margins(w2()).dominant_indices == (3, 4)
    assert margins(w2()).positive == (3,)


def _dominant_brute(seq):
    """Check the defining property directly, by search over all index sets."""
    s = len(seq)
    picked = [s]
    while True:
        cands = [i for i in range(1, picked[0]) if seq[i - 1] > seq[picked[0] - 1]]
        if not cands:
            return tuple(picked)
        picked.insert(0, max(cands))


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=8))
def test_dominant_subsequence_properties(seq):
    idx = dominant_subsequence(seq)
    assert idx == _dominant_brute(seq)
    assert idx[-1] == len(seq)
    vals = [seq[i - 1] for i in idx]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    # skipped elements never exceed the next selected value
    for a, b in zip((0,) + idx, idx):
        assert all(seq[r - 1] <= seq[b - 1] for r in range(a + 1, b))


@pytest.mark.parametrize("inst, j, t, expected", [(w2(), 1, 3, 7), (w1(), 1, 2, 4)])
def test_shell_capacity(inst, j, t, expected):
    assert shell_capacity(inst, j, t) == expected
    assert shell_capacity_identity(inst, j, t) == expected


def test_empty_shell():
    inst = Instance(2, (1, 1), (1, 1), (2, 2))
    assert shell_capacity(inst, 1, 2) == 0


def test_shell_capacity_index_errors():
    with pytest.raises(IndexError):
        shell_capacity(w1(), 2, 2)
    with pytest.raises(IndexError):
        shell_capacity(w1(), 1, 4)


def test_raw_margin_matches_pinned_margins():
    inst = w2()
    mv = margins(inst)
    for j in range(1, inst.n + 1):
        assert raw_margin(inst, j) == mv.margin(j)
    assert raw_margin(inst, inst.n + 1) == sum(inst.layer_rates) - inst.source_capacity


@given(instances())
def test_identity_all_pairs(inst):
    for j in range(1, inst.n + 1):
        for t in range(j + 1, inst.n + 2):
            assert shell_capacity(inst, j, t) == shell_capacity_identity(inst, j, t)


@given(instances(), st.data())
def test_margins_monotone(inst, data):
    base = margins(inst).values
    i = data.draw(st.integers(0, inst.k))
    bump = data.draw(st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3)]))
    caps = list(inst.capacities)
    caps[i] += bump
    more_cap = margins(inst.with_capacities(caps[0], caps[1:])).values
    assert all(a <= b for a, b in zip(more_cap, base))
    j = data.draw(st.integers(0, inst.n - 1))
    rates = list(inst.layer_rates)
    rates[j] += bump
    more_rate = margins(inst.with_rates(rates)).values
    assert all(a >= b for a, b in zip(more_rate, base))
