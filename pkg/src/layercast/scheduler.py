"""Routing plans for any rate vector inside the capacity region.

Two stages:

1. Relay loop.  While some margin ``N_j`` is positive, let ``m``/``M`` be the
   smallest/largest such layer and ``N = min(N_m, N_M)``.  The source sends a
   slice of layer ``M`` of width ``N / (|X_M| - 1)`` split over helpers
   (peers not demanding layer ``m``); each helper forwards its piece to every
   demander of ``M``.  Helper budgets come from :func:`helper_allocation` and
   keep every lower margin non-positive.  Each pass clears at least one
   positive margin.

2. Layer peeling.  With every margin non-positive, layers ``n..1`` are served
   in turn by source-rooted trees over their demanders only, using the
   shares from :func:`allocate_layer` and :func:`~layercast.trees.pack_unit_trees`.

Every step re-checks the inequalities it relies on and raises
:class:`SchedulingError` instead of emitting a bad plan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .capacity import check_feasibility
from .errors import Infeasible, PhaseNotApplicable, SchedulingError
from .margins import MarginVector, margins
from .model import SOURCE, Instance
from .plan import RelayPhase, Segment, Send, TransmissionPlan, TreeTransmission
from .trees import DEFAULT_MAX_UNITS, pack_unit_trees


@dataclass(frozen=True)
class ResidualState:
    """Original instance plus what is left of capacities and layer rates.

    Relay phases always consume a prefix of a layer, so the unconsumed part of
    layer ``j`` is ``[original L_j - residual L_j, original L_j)``.
    """

    original: Instance
    current: Instance

    @classmethod
    def start(cls, inst: Instance) -> "ResidualState":
        return cls(inst, inst)

    def cursor(self, j: int) -> Fraction:
        return self.original.rate(j) - self.current.rate(j)


@dataclass(frozen=True)
class PhaseStep:
    """One relay pass with the quantities that justify it."""

    phase: RelayPhase
    before: ResidualState
    after: ResidualState
    first: int  # m: smallest layer with positive margin
    last: int  # M: largest layer with positive margin
    step: Fraction  # N = min(N_m, N_M)
    helper_budget: dict  # helper -> C_iM


def _shell(inst: Instance, lo: int, hi: int) -> list:
    """Peers demanding layer ``lo`` but not layer ``hi``, ascending index."""
    return [i for i, top in enumerate(inst.max_layer, start=1) if lo <= top < hi]


def _fill(inst: Instance, peers, amount: Fraction, budget: dict):
    for i in peers:
        if amount == 0:
            return
        take = min(inst.capacities[i] - budget.get(i, 0), amount)
        if take > 0:
            budget[i] = budget.get(i, 0) + take
            amount -= take
    if amount > 0:
        raise SchedulingError(f"helper shell {peers} is {amount} short")


def _anchors(mv: MarginVector, m: int) -> list:
    """j_1 > j_2 > ... = 1: leftmost maximiser of N over 1..j_{r-1}-1, repeatedly."""
    out = []
    hi = m - 1
    while hi >= 1:
        best = max(mv.margin(r) for r in range(1, hi + 1))
        j = min(r for r in range(1, hi + 1) if mv.margin(r) == best)
        out.append(j)
        hi = j - 1
    return out


def helper_allocation(mv: MarginVector, state: Instance, m: int, M: int) -> dict:
    """Upload budget ``C_iM`` for each helper relaying layer ``M``.

    Helpers are peers that do not demand layer ``m``.  The budgets total
    ``|X_M| N / (|X_M| - 1)`` while the helpers inside any ``X_j \\ X_m``
    (``j < m``) spend at most ``N - N_j``, which keeps ``N_j`` non-positive
    after the phase.  Budgets are placed shell by shell between the anchor
    layers from :func:`_anchors`, lowest peer index first.
    """
    positive = mv.positive
    if not positive or m != positive[0] or M != positive[-1]:
        raise ValueError(f"m={m}, M={M} are not the extreme positive margins {positive}")
    if m < 2:
        raise ValueError("first positive margin at layer 1: instance is infeasible")
    count = len(state.demanders(M))
    if count < 2:
        raise ValueError(f"layer {M} has {count} demander(s)")

    n_step = min(mv.margin(m), mv.margin(M))
    target = count * n_step / (count - 1)
    anchors = _anchors(mv, m)
    gap = [n_step - mv.margin(j) for j in anchors]  # increasing along anchors
    budget: dict = {}

    if target <= gap[0]:
        _fill(state, _shell(state, anchors[0], m), target, budget)
    else:
        t = next((r for r in range(len(anchors) - 1) if gap[r + 1] >= target), None)
        if t is None:
            raise SchedulingError(
                f"no anchor reaches {target}: N - N_1 = {gap[-1]} (capacity bound violated)"
            )
        _fill(state, _shell(state, anchors[0], m), gap[0], budget)
        for r in range(1, t + 1):
            _fill(state, _shell(state, anchors[r], anchors[r - 1]), gap[r] - gap[r - 1], budget)
        _fill(state, _shell(state, anchors[t + 1], anchors[t]), target - gap[t], budget)

    budget = {i: budget[i] for i in sorted(budget) if budget[i] > 0}
    if sum(budget.values(), Fraction(0)) != target:
        raise SchedulingError("helper budgets do not add up")
    for j in range(1, m):
        spent = sum((budget.get(i, 0) for i in _shell(state, j, m)), Fraction(0))
        if spent > n_step - mv.margin(j):
            raise SchedulingError(f"helpers below layer {j} overspend: {spent}")
    return budget


def relay_phase(state: ResidualState):
    """Run one relay pass; returns ``(PhaseStep, next_state)``."""
    cur = state.current
    mv = margins(cur)
    positive = mv.positive
    if not positive:
        raise PhaseNotApplicable("all margins are non-positive")
    m, M = positive[0], positive[-1]
    n_step = min(mv.margin(m), mv.margin(M))
    budget = helper_allocation(mv, cur, m, M)
    recipients = cur.demanders(M)
    count = len(recipients)
    width = n_step / (count - 1)
    if width > cur.rate(M) or width > cur.source_capacity:
        raise SchedulingError(f"relay slice {width} exceeds residual rate or source budget")

    pos = state.cursor(M)
    source_to, helper_to = [], []
    for helper, amount in budget.items():
        seg = Segment(M, pos, pos + amount / count)
        pos = seg.end
        source_to.append(Send(SOURCE, (helper,), seg, seg.width))
        helper_to.append(Send(helper, recipients, seg, seg.width))
    assert pos == state.cursor(M) + width

    caps = list(cur.peer_capacities)
    for helper, amount in budget.items():
        caps[helper - 1] -= amount
    rates = list(cur.layer_rates)
    rates[M - 1] -= width
    nxt = cur.with_capacities(cur.source_capacity - width, caps).with_rates(rates)
    after = ResidualState(state.original, nxt)
    phase = RelayPhase(M, tuple(source_to), tuple(helper_to))
    return PhaseStep(phase, state, after, m, M, n_step, budget), after


def relay_loop(inst: Instance):
    """Apply relay passes until no margin is positive; returns ``(steps, final_state)``."""
    state = ResidualState.start(inst)
    steps = []
    while margins(state.current).positive:
        if len(steps) >= inst.n:
            raise SchedulingError("relay loop did not terminate within n passes")
        before = len(margins(state.current).positive)
        step, state = relay_phase(state)
        if len(margins(state.current).positive) >= before:
            raise SchedulingError("relay pass did not clear a positive margin")
        steps.append(step)
    return steps, state


def allocate_layer(state: Instance, j: int) -> dict:
    """Upload shares (node -> amount, source included) serving layer ``j`` to its demanders.

    Assumes layers above ``j`` are already served (rates zeroed in ``state``).
    The source takes as little as possible but at least ``L_j``; demanders
    cover the rest, largest capacity first.
    """
    rate = state.rate(j)
    members = state.demanders(j)
    shares = {SOURCE: Fraction(0), **{i: Fraction(0) for i in members}}
    if rate == 0:
        return shares
    need = len(members) * rate
    peer_pool = sum((state.capacities[i] for i in members), Fraction(0))
    lower = sum(state.layer_rates[: j - 1], Fraction(0))
    a0 = max(rate, need - peer_pool)
    if a0 > state.source_capacity - lower:
        raise SchedulingError(
            f"layer {j}: source share {a0} leaves less than {lower} for lower layers"
        )
    shares[SOURCE] = a0
    need -= a0
    for i in sorted(members, key=lambda i: (-state.capacities[i], i)):
        take = min(state.capacities[i], need)
        shares[i] = take
        need -= take
    if need:
        raise SchedulingError(f"layer {j}: demanders are {need} short")
    return shares


def _check_peelable(inst: Instance):
    mv = margins(inst)
    if mv.positive:
        raise SchedulingError(f"positive margins {mv.positive} left after relaying")
    if inst.source_capacity < sum(inst.layer_rates, Fraction(0)):
        raise SchedulingError("source budget below the residual layer total")


def peel_layers(state: ResidualState, max_units: int = DEFAULT_MAX_UNITS) -> list:
    """Trees serving the residual of every layer, top layer first."""
    cur = state.current
    _check_peelable(cur)
    out = []
    for j in range(cur.n, 0, -1):
        shares = allocate_layer(cur, j)
        rate = cur.rate(j)
        if rate > 0:
            members = cur.demanders(j)
            packed = pack_unit_trees(rate, shares[SOURCE], [shares[i] for i in members], max_units)
            mapping = {0: SOURCE, **{pos: peer for pos, peer in enumerate(members, start=1)}}
            pos = state.cursor(j)
            for tree, r in packed:
                out.append(TreeTransmission(tree.relabel(mapping), Segment(j, pos, pos + r), r))
                pos += r
            assert pos == state.original.rate(j)
        caps = [c - shares.get(i, 0) for i, c in enumerate(cur.peer_capacities, start=1)]
        rates = list(cur.layer_rates)
        rates[j - 1] = Fraction(0)
        cur = cur.with_capacities(cur.source_capacity - shares[SOURCE], caps).with_rates(rates)
        _check_peelable(cur)
    return out


def schedule(inst: Instance, max_units: int = DEFAULT_MAX_UNITS) -> TransmissionPlan:
    """Routing plan achieving ``inst.layer_rates``.

    Raises :class:`~layercast.errors.Infeasible` (carrying the report) when
    the rates lie outside the capacity region.
    """
    report = check_feasibility(inst)
    if not report.feasible:
        raise Infeasible(report)
    steps, state = relay_loop(inst)
    trees = peel_layers(state, max_units)
    return TransmissionPlan(tuple(s.phase for s in steps), tuple(trees))
