"""Shared checks for relay-phase bookkeeping (used by scheduler and acceptance tests)."""

from fractions import Fraction

from layercast.margins import margins


def helper_uploads(phase):
    """C_iM recovered from the phase's second hop, not from scheduler state."""
    out = {}
    for send in phase.helper_to:
        out[send.sender] = out.get(send.sender, 0) + send.rate * len(send.receivers)
    return out


def check_phase_laws(step):
    """Return a list of broken laws (empty when the step is sound)."""
    problems = []
    before, after = step.before.current, step.after.current
    mb, ma = margins(before), margins(after)
    pos = mb.positive
    m, M = pos[0], pos[-1]
    N = min(mb.margin(m), mb.margin(M))
    count = len(before.demanders(M))
    if (step.first, step.last, step.step) != (m, M, N):
        problems.append(f"phase chose m={step.first}, M={step.last}, N={step.step}; expected {m}, {M}, {N}")
    if N - mb.margin(1) < count * N / (count - 1):
        problems.append("capacity bound N - N_1 >= |X_M| N / (|X_M| - 1) fails on entry")
    budget = helper_uploads(step.phase)
    for j in range(1, before.n + 1):
        if j < m:
            inside = sum((budget.get(i, 0) for i, top in enumerate(before.max_layer, 1) if j <= top < m), Fraction(0))
            want = mb.margin(j) - N + inside
            if ma.margin(j) != want or want > 0:
                problems.append(f"j={j}<m: N'={ma.margin(j)}, expected {want} <= 0")
        elif j <= M:
            if ma.margin(j) != mb.margin(j) - N:
                problems.append(f"j={j} in [m, M]: N'={ma.margin(j)}, expected {mb.margin(j) - N}")
        elif ma.margin(j) != mb.margin(j):
            problems.append(f"j={j}>M: margin changed")
    if len(ma.positive) >= len(pos):
        problems.append("positive margin count did not drop")
    return problems
