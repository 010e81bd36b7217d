"""Existence and construction of stationary states with a marked component.

A stationary state is built in three stages:

1. pick one real amplitude ``a_i`` per unmarked component ``H_i`` such that
   the shortages of the two sides of the marked bipartition balance,
   ``sum_i (k_i1 - k_i2) a_i = 0``;
2. compute the shortage of every marked vertex (sum of ``a`` over its
   unmarked neighbours);
3. cancel the shortages with amplitudes ``c_e`` on the marked-internal
   edges, taking the minimum-norm least-squares solution of the unsigned
   incidence system.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InfeasibleError, NoStationaryStateError
from .graph import Graph, MarkedAnalysis, UnmarkedDecomposition, analyze_marked, decompose_unmarked
from .walk import WalkOperator, check_stationary

__all__ = [
    "Reason",
    "Objective",
    "UnmarkedAmplitudes",
    "ShortageSums",
    "StationaryState",
    "StationaryReport",
    "decide_existence",
    "balance_normal",
    "solve_component_amplitudes",
    "compute_shortages",
    "neutralize_shortages",
    "assemble_state",
    "overlap",
    "construct_stationary",
]

ALGEBRA_TOL = 1e-12
SOLVER_TOL = 1e-10


class Reason(str, enum.Enum):
    NON_BIPARTITE_M = "NON_BIPARTITE_M"
    DEGREE_SUMS_EQUAL = "DEGREE_SUMS_EQUAL"
    DISCONNECTED_UNMARKED = "DISCONNECTED_UNMARKED"
    NO_SOLUTION_CONNECTED_CASE = "NO_SOLUTION_CONNECTED_CASE"


class Objective(str, enum.Enum):
    MAX_OVERLAP = "max-overlap"
    UNIFORM = "uniform"
    CUSTOM = "custom"


@dataclass(frozen=True)
class UnmarkedAmplitudes:
    a: np.ndarray
    # True when the objective was orthogonal to the feasible set and an
    # arbitrary null-space direction was returned instead.
    zero_overlap: bool = False


@dataclass(frozen=True)
class ShortageSums:
    s1: float
    s2: float
    per_vertex: dict[int, float]

    @property
    def total(self) -> float:
        return float(sum(self.per_vertex.values()))


@dataclass(frozen=True)
class StationaryState:
    arc_amplitudes: np.ndarray
    component_amps: np.ndarray
    marked_edge_amps: dict[tuple[int, int], float]
    component_weights: np.ndarray
    normalized: bool
    overlap_with_initial: float

    def amplitude(self, g: Graph, tail: int, head: int) -> float:
        return float(self.arc_amplitudes[g.arc(tail, head)])


@dataclass(frozen=True)
class StationaryReport:
    exists: bool
    reason: Reason
    analysis: MarkedAnalysis
    decomposition: UnmarkedDecomposition
    state: StationaryState | None = None
    residual_norm: float | None = None
    zero_overlap_fallback: bool = False


def decide_existence(g: Graph, ma: MarkedAnalysis, ud: UnmarkedDecomposition) -> tuple[bool, Reason]:
    if not ma.bipartite:
        return True, Reason.NON_BIPARTITE_M
    if ud.r >= 2:
        return True, Reason.DISCONNECTED_UNMARKED
    if ma.degsum1 == ma.degsum2:
        return True, Reason.DEGREE_SUMS_EQUAL
    return False, Reason.NO_SOLUTION_CONNECTED_CASE


def balance_normal(ma: MarkedAnalysis, ud: UnmarkedDecomposition) -> np.ndarray:
    """Coefficients ``k_i1 - k_i2`` of the balance constraint (zeros if non-bipartite)."""
    if not ma.bipartite:
        return np.zeros(ud.r)
    return (ud.boundary[:, 0] - ud.boundary[:, 1]).astype(float)


def _project(v: np.ndarray, normal: np.ndarray) -> np.ndarray:
    nn = normal @ normal
    if nn == 0:
        return v.astype(float).copy()
    return v - (v @ normal) / nn * normal


def _null_direction(normal: np.ndarray) -> np.ndarray:
    r = normal.shape[0]
    best = None
    for j in range(r):
        e = np.zeros(r)
        e[j] = 1.0
        p = _project(e, normal)
        if best is None or np.linalg.norm(p) > np.linalg.norm(best) + ALGEBRA_TOL:
            best = p
    nrm = np.linalg.norm(best)
    if nrm <= ALGEBRA_TOL:
        raise NoStationaryStateError("balance constraint admits only the zero vector")
    return best / nrm


def solve_component_amplitudes(
    ud: UnmarkedDecomposition,
    ma: MarkedAnalysis,
    objective: Objective | str = Objective.MAX_OVERLAP,
    custom: Sequence[float] | None = None,
) -> UnmarkedAmplitudes:
    """Choose per-component amplitudes satisfying the balance constraint.

    ``max-overlap`` returns the unit vector on the constraint hyperplane that
    maximizes ``sum_i w_i a_i`` with ``w_i`` the number of arcs touching
    ``H_i``; ``uniform`` returns the all-ones vector projected onto the
    hyperplane; ``custom`` checks ``custom`` against the constraint.
    """
    objective = Objective(objective)
    normal = balance_normal(ma, ud)
    if ud.r == 1 and np.any(normal != 0):
        raise NoStationaryStateError(
            f"single unmarked component with unequal degree sums ({ma.degsum1} != {ma.degsum2})"
        )

    if objective is Objective.CUSTOM:
        if custom is None:
            raise ValueError("custom objective needs a vector")
        a = np.asarray(custom, dtype=float)
        if a.shape != (ud.r,):
            raise ValueError(f"custom amplitudes need length {ud.r}, got {a.shape}")
        if not np.any(a):
            raise ValueError("custom amplitudes are all zero")
        terms = normal * a
        if abs(terms.sum()) > ALGEBRA_TOL * max(1.0, np.abs(terms).sum()):
            raise ValueError(f"custom amplitudes violate the balance constraint (residual {terms.sum():.3e})")
        return UnmarkedAmplitudes(a)

    target = ud.weights.astype(float) if objective is Objective.MAX_OVERLAP else np.ones(ud.r)
    a = _project(target, normal)
    if np.linalg.norm(a) <= ALGEBRA_TOL * np.linalg.norm(target):
        return UnmarkedAmplitudes(_null_direction(normal), zero_overlap=True)
    if objective is Objective.MAX_OVERLAP:
        a = a / np.linalg.norm(a)
    return UnmarkedAmplitudes(a)


def compute_shortages(g: Graph, ma: MarkedAnalysis, ud: UnmarkedDecomposition, a) -> ShortageSums:
    a = np.asarray(a, dtype=float)
    if a.shape != (ud.r,):
        raise ValueError(f"need {ud.r} component amplitudes, got shape {a.shape}")
    per_vertex = {}
    for v in ma.marked_sorted:
        comps = [ud.component_of[w] for w in g.adjacency[v] if w not in ma.marked]
        per_vertex[v] = float(sum(a[c] for c in comps))
    s1 = float(sum(per_vertex[v] for v in ma.part1))
    s2 = float(sum(per_vertex[v] for v in ma.part2))
    return ShortageSums(s1=s1, s2=s2, per_vertex=per_vertex)


def neutralize_shortages(ma: MarkedAnalysis, shortages: ShortageSums) -> dict[tuple[int, int], float]:
    """Amplitudes on marked-internal edges that zero every marked vertex sum.

    Solves ``B x = -s`` with ``B`` the unsigned vertex-edge incidence matrix
    of the marked subgraph; ``lstsq`` gives the minimum-norm solution.
    """
    s1, s2 = shortages.s1, shortages.s2
    if ma.bipartite and abs(s1 - s2) > ALGEBRA_TOL * max(1.0, abs(s1), abs(s2)):
        raise InfeasibleError(f"partite shortage sums differ: {s1!r} vs {s2!r}")

    verts = ma.marked_sorted
    row = {v: i for i, v in enumerate(verts)}
    rhs = -np.array([shortages.per_vertex[v] for v in verts])
    edges = ma.marked_edges
    incidence = np.zeros((len(verts), len(edges)))
    for j, (u, v) in enumerate(edges):
        incidence[row[u], j] = 1.0
        incidence[row[v], j] = 1.0

    if edges:
        x = np.linalg.lstsq(incidence, rhs, rcond=None)[0]
    else:
        x = np.zeros(0)
    resid = np.max(np.abs(incidence @ x - rhs))
    scale = max(1.0, float(np.max(np.abs(rhs))))
    if resid > SOLVER_TOL * scale:
        raise InfeasibleError(f"shortage residual {resid:.3e} exceeds {SOLVER_TOL * scale:.1e}")
    return {e: float(xe) for e, xe in zip(edges, x)}


def _arc_vector(g: Graph, ud: UnmarkedDecomposition, a: np.ndarray, c: dict) -> np.ndarray:
    ct = ud.component_of[g.arc_tail]
    ch = ud.component_of[g.arc_head]
    comp = np.where(ct >= 0, ct, ch)
    amps = np.where(comp >= 0, a[np.maximum(comp, 0)], 0.0)
    for (u, v), val in c.items():
        amps[g.arc(u, v)] = val
        amps[g.arc(v, u)] = val
    return amps


def _arc_overlap(g: Graph, amps: np.ndarray) -> float:
    return float(amps.sum() / np.sqrt(2 * g.m))


def _formula_overlap(g: Graph, a: np.ndarray, weights: np.ndarray) -> float:
    # marked vertices contribute zero by construction
    return float(a @ weights / np.sqrt(2 * g.m))


def assemble_state(
    g: Graph,
    ma: MarkedAnalysis,
    ud: UnmarkedDecomposition,
    a,
    c: dict[tuple[int, int], float],
    normalize: bool = True,
) -> StationaryState:
    a = np.asarray(a, dtype=float)
    amps = _arc_vector(g, ud, a, c)
    norm2 = float(amps @ amps)
    norm2_formula = float(
        2 * np.sum(a**2 * (ud.internal_edges + ud.boundary_total)) + 2 * sum(x * x for x in c.values())
    )
    if abs(norm2 - norm2_formula) > ALGEBRA_TOL * max(1.0, norm2):
        raise RuntimeError(f"state norm mismatch: {norm2!r} vs {norm2_formula!r}")
    if norm2 == 0:
        raise ValueError("assembled state is the zero vector")

    c = dict(c)
    if normalize:
        scale = 1.0 / np.sqrt(norm2)
        amps = amps * scale
        a = a * scale
        c = {e: x * scale for e, x in c.items()}

    weights = ud.weights.astype(float)
    ov = _arc_overlap(g, amps)
    ov_formula = _formula_overlap(g, a, weights)
    if abs(ov - ov_formula) > ALGEBRA_TOL * max(1.0, abs(ov)):
        raise RuntimeError(f"overlap mismatch: arc sum {ov!r} vs component formula {ov_formula!r}")

    return StationaryState(
        arc_amplitudes=amps,
        component_amps=a,
        marked_edge_amps=c,
        component_weights=weights,
        normalized=normalize,
        overlap_with_initial=ov,
    )


def overlap(state: StationaryState, g: Graph) -> float:
    """Inner product with the uniform state ``1/sqrt(2m)`` on every arc."""
    ov = _arc_overlap(g, state.arc_amplitudes)
    ov_formula = _formula_overlap(g, state.component_amps, state.component_weights)
    if abs(ov - ov_formula) > ALGEBRA_TOL * max(1.0, abs(ov)):
        raise RuntimeError(f"overlap mismatch: arc sum {ov!r} vs component formula {ov_formula!r}")
    return ov


def construct_stationary(
    g: Graph,
    marked,
    objective: Objective | str = Objective.MAX_OVERLAP,
    custom: Sequence[float] | None = None,
    normalize: bool = True,
) -> StationaryReport:
    """Run the whole pipeline; ``state`` is ``None`` when none exists."""
    ma = analyze_marked(g, marked)
    ud = decompose_unmarked(g, ma)
    exists, reason = decide_existence(g, ma, ud)
    if not exists:
        return StationaryReport(False, reason, ma, ud)
    amps = solve_component_amplitudes(ud, ma, objective, custom)
    short = compute_shortages(g, ma, ud, amps.a)
    c = neutralize_shortages(ma, short)
    state = assemble_state(g, ma, ud, amps.a, c, normalize=normalize)
    residual = check_stationary(WalkOperator(g, ma.marked), state.arc_amplitudes)
    return StationaryReport(
        exists=True,
        reason=reason,
        analysis=ma,
        decomposition=ud,
        state=state,
        residual_norm=residual,
        zero_overlap_fallback=amps.zero_overlap,
    )
