"""Exact rational linear feasibility.

Decides whether ``{x >= 0 : A_eq x = b_eq, A_ub x <= b_ub}`` is non-empty
with a dense Phase-I simplex over :class:`~fractions.Fraction` (Bland's rule,
so it cannot cycle).  Either answer is certified:

* feasible   -> a point ``x`` that can be substituted back;
* infeasible -> Farkas multipliers ``(u, v)``, ``v >= 0``, with
  ``u A_eq + v A_ub >= 0`` and ``u b_eq + v b_ub < 0``.

Both certificates are re-checked by :func:`check_point` / :func:`check_farkas`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    x: Optional[tuple] = None
    farkas_eq: Optional[tuple] = None
    farkas_ub: Optional[tuple] = None


def _dot(row, vec):
    return sum((a * b for a, b in zip(row, vec) if a and b), ZERO)


def check_point(x, A_eq, b_eq, A_ub, b_ub) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(_dot(r, x) == b for r, b in zip(A_eq, b_eq)) and all(
        _dot(r, x) <= b for r, b in zip(A_ub, b_ub)
    )


def check_farkas(u, v, A_eq, b_eq, A_ub, b_ub, nvars) -> bool:
    if any(y < 0 for y in v):
        return False
    for col in range(nvars):
        combo = sum((y * r[col] for y, r in zip(u, A_eq)), ZERO)
        combo += sum((y * r[col] for y, r in zip(v, A_ub)), ZERO)
        if combo < 0:
            return False
    return _dot(u, b_eq) + _dot(v, b_ub) < 0


def solve_feasibility(
    A_eq: Sequence[Sequence], b_eq: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence, nvars: int
) -> LPResult:
    A_eq = [[Fraction(a) for a in r] for r in A_eq]
    A_ub = [[Fraction(a) for a in r] for r in A_ub]
    b_eq = [Fraction(b) for b in b_eq]
    b_ub = [Fraction(b) for b in b_ub]
    m_eq, m_ub = len(A_eq), len(A_ub)
    m = m_eq + m_ub
    if m == 0:
        return LPResult(True, tuple([ZERO] * nvars))

    # columns: x (nvars) | slacks (m_ub) | artificials (m) | rhs
    n_real = nvars + m_ub
    width = n_real + m + 1
    rows, sign = [], []
    for i in range(m):
        row = [ZERO] * width
        if i < m_eq:
            row[:nvars] = A_eq[i]
            rhs = b_eq[i]
        else:
            row[:nvars] = A_ub[i - m_eq]
            row[nvars + i - m_eq] = Fraction(1)
            rhs = b_ub[i - m_eq]
        s = -1 if rhs < 0 else 1
        row = [s * a for a in row]
        row[n_real + i] = Fraction(1)
        row[-1] = s * rhs
        rows.append(row)
        sign.append(s)
    basis = [n_real + i for i in range(m)]
    # reduced costs of the phase-one objective (sum of artificials); last entry is -objective
    obj = [ZERO] * width
    for row in rows:
        for c in range(width):
            if c < n_real or c == width - 1:
                obj[c] -= row[c]

    while True:
        enter = next((c for c in range(n_real) if obj[c] < 0), None)
        if enter is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[enter] > 0:
                ratio = row[-1] / row[enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        assert best is not None, "phase-one objective is bounded below by zero"
        _, r = best
        piv = rows[r][enter]
        prow = [a / piv for a in rows[r]]
        rows[r] = prow
        nz = [c for c, a in enumerate(prow) if a]
        for i, row in enumerate(rows):
            f = row[enter]
            if i != r and f:
                for c in nz:
                    row[c] -= f * prow[c]
        f = obj[enter]
        for c in nz:
            obj[c] -= f * prow[c]
        basis[r] = enter

    if obj[-1] == 0:
        x = [ZERO] * n_real
        for i, b in enumerate(basis):
            if b < n_real:
                x[b] = rows[i][-1]
        point = tuple(x[:nvars])
        assert check_point(point, A_eq, b_eq, A_ub, b_ub)
        return LPResult(True, point)

    # duals of the phase-one optimum: pi_i = 1 - reduced cost of artificial i
    pi = [1 - obj[n_real + i] for i in range(m)]
    y = [-s * p for s, p in zip(sign, pi)]
    u, v = tuple(y[:m_eq]), tuple(y[m_eq:])
    assert check_farkas(u, v, A_eq, b_eq, A_ub, b_ub, nvars)
    return LPResult(False, farkas_eq=u, farkas_ub=v)
