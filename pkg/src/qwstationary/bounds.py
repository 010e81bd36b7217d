"""Unmarked-amplitude ceiling and the marked-probability bound.

``a_bar = 1/sqrt(2m - 2|E_M| - D)`` caps the common amplitude of the arcs
around unmarked vertices in any normalized stationary state whose unmarked
amplitudes are all equal. The probability bound is

    p_M <= 4 / (2m - 2|E_M| - D) * (sum_e c_e**2 + 2 D + 2 |E_M|)

where ``c_e`` are the marked-edge amplitudes of the stationary state scaled
so that every unmarked-incident arc carries exactly 1, and ``D`` counts the
edges between marked and unmarked vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NotApplicableError
from .graph import Graph, MarkedAnalysis, UnmarkedDecomposition, analyze_marked, decompose_unmarked
from .stationary import (
    ALGEBRA_TOL,
    StationaryState,
    compute_shortages,
    decide_existence,
    neutralize_shortages,
)
from .walk import WalkOperator, simulate, uniform_state

__all__ = [
    "BoundReport",
    "VIOLATION_TOL",
    "unmarked_denominator",
    "compute_a_bar",
    "witness_state",
    "verify_a_bound",
    "unit_marked_amplitudes",
    "probability_bound",
    "bound_for",
    "compare_bound_to_simulation",
]

VIOLATION_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    a_bar: float
    denom: int
    c_sq_sum: float
    bound: float
    bound_clamped: float
    sim_max_p: float | None = None
    sim_argmax_t: int | None = None
    steps: int | None = None
    violation: bool = False
    # the uncorrected 1/sqrt(2m) value, kept for comparison only
    a_naive: float | None = None


def unmarked_denominator(ma: MarkedAnalysis, m: int) -> int:
    """``2m - 2|E_M| - D``; must equal the unmarked degree sum exactly."""
    denom = 2 * m - 2 * ma.e_m - ma.d_boundary
    if denom != ma.unmarked_degsum:
        raise RuntimeError(f"denominator {denom} disagrees with unmarked degree sum {ma.unmarked_degsum}")
    return denom


def compute_a_bar(ma: MarkedAnalysis, m: int) -> float:
    denom = unmarked_denominator(ma, m)
    if denom <= 0:
        raise ValueError(f"nonpositive denominator {denom}")
    return 1.0 / math.sqrt(denom)


def witness_state(g: Graph, ma: MarkedAnalysis) -> np.ndarray:
    """``a_bar`` on every arc leaving an unmarked vertex, zero elsewhere.

    Not stationary (nor symmetric) in general; its norm is exactly 1.
    """
    a_bar = compute_a_bar(ma, g.m)
    marked = np.zeros(g.n, dtype=bool)
    marked[list(ma.marked)] = True
    return np.where(marked[g.arc_tail], 0.0, a_bar)


def verify_a_bound(state: StationaryState, a_bar: float) -> bool:
    if not state.normalized:
        raise ValueError("state must be normalized")
    mags = np.abs(state.component_amps)
    if np.ptp(mags) > ALGEBRA_TOL * max(1.0, mags.max()):
        raise NotApplicableError(f"unmarked amplitudes differ in magnitude: {mags.tolist()}")
    return bool(mags[0] <= a_bar + ALGEBRA_TOL)


def unit_marked_amplitudes(
    g: Graph, ma: MarkedAnalysis, ud: UnmarkedDecomposition
) -> dict[tuple[int, int], float]:
    """Marked-edge amplitudes of the stationary state with every ``a_i = 1``.

    Raises NotApplicableError when no such state exists.
    """
    exists, reason = decide_existence(g, ma, ud)
    if not exists:
        raise NotApplicableError(f"no stationary state ({reason.value})")
    if ma.bipartite and ma.degsum1 != ma.degsum2:
        raise NotApplicableError(
            f"equal unmarked amplitudes need equal degree sums, got {ma.degsum1} and {ma.degsum2}"
        )
    shortages = compute_shortages(g, ma, ud, np.ones(ud.r))
    return neutralize_shortages(ma, shortages)


def probability_bound(ma: MarkedAnalysis, m: int, c: dict[tuple[int, int], float]) -> BoundReport:
    denom = unmarked_denominator(ma, m)
    if denom <= 0:
        raise ValueError(f"nonpositive denominator {denom}")
    c_sq = float(sum(x * x for x in c.values()))
    bound = 4.0 / denom * (c_sq + 2 * ma.d_boundary + 2 * ma.e_m)
    return BoundReport(
        a_bar=1.0 / math.sqrt(denom),
        denom=denom,
        c_sq_sum=c_sq,
        bound=bound,
        bound_clamped=min(1.0, bound),
        a_naive=1.0 / math.sqrt(2 * m),
    )


def bound_for(g: Graph, marked) -> BoundReport:
    ma = analyze_marked(g, marked)
    ud = decompose_unmarked(g, ma)
    return probability_bound(ma, g.m, unit_marked_amplitudes(g, ma, ud))


def compare_bound_to_simulation(g: Graph, marked, steps: int) -> BoundReport:
    """Bound plus the largest ``p_M(t)`` seen over ``steps`` steps from uniform."""
    report = bound_for(g, marked)
    trace = simulate(WalkOperator(g, marked), uniform_state(g), steps)
    return replace(
        report,
        sim_max_p=trace.max_p,
        sim_argmax_t=trace.argmax_t,
        steps=steps,
        violation=trace.max_p > report.bound + VIOLATION_TOL,
    )
