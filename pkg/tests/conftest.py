from fractions import Fraction

import pytest
from hypothesis import strategies as st

from layercast.model import Instance


def w1():
    return Instance(2, (0, 0, 4), (1, 1), (2, 2, 1))


def w2():
    return Instance(3, (0, 0, 3, 4), (1, 1, 1), (3, 3, 2, 1))


@pytest.fixture
def W1():
    return w1()


@pytest.fixture
def W2():
    return w2()


rationals = st.builds(Fraction, st.integers(0, 12), st.sampled_from([1, 1, 2, 3]))


@st.composite
def instances(draw, max_peers=5, max_layers=4, rates=rationals, caps=rationals):
    k = draw(st.integers(1, max_peers))
    n = draw(st.integers(1, max_layers))
    tops = draw(st.lists(st.integers(1, n), min_size=k, max_size=k))
    tops[draw(st.integers(0, k - 1))] = n
    return Instance(
        draw(caps),
        tuple(draw(st.lists(caps, min_size=k, max_size=k))),
        tuple(draw(st.lists(rates, min_size=n, max_size=n))),
        tuple(tops),
    )


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS.values():
            terminalreporter.write_line(line)
