"""Coined walk with a marked-vertex query: ``U' = S C Q``.

``Q`` negates every arc leaving a marked vertex, ``C`` applies the Grover
diffusion ``x -> 2 mean(x) - x`` to the outgoing arcs of each vertex and
``S`` is the flip-flop shift swapping ``(u, v)`` with ``(v, u)``. At a
marked vertex the net coin is therefore ``-(Grover)``.

Under this convention a state is fixed by ``U'`` when it is symmetric under
``S``, constant on the arcs around each unmarked vertex, and sums to zero
over the outgoing arcs of each marked vertex.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import GraphFormatError, NormDriftError
from .graph import Graph

__all__ = [
    "WalkOperator",
    "EvolutionTrace",
    "uniform_state",
    "apply_step",
    "simulate",
    "check_stationary",
    "vertex_probabilities",
    "marked_probability",
    "write_trace_csv",
]

DENSE_MAX_VERTICES = 12
NORM_DRIFT_TOL = 1e-9


class WalkOperator:
    """Matrix-free ``U'`` for a graph and a marked set (compacted indices)."""

    def __init__(self, g: Graph, marked: Iterable[int] = ()):
        self.graph = g
        self.marked = frozenset(int(v) for v in marked)
        is_marked = np.zeros(g.n, dtype=bool)
        is_marked[list(self.marked)] = True
        self.marked_arc = is_marked[g.arc_tail]
        self.sign = np.where(self.marked_arc, -1.0, 1.0)

    @property
    def dim(self) -> int:
        return self.graph.n_arcs

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.complex128)
        if x.shape != (self.dim,):
            raise ValueError(f"state has shape {x.shape}, operator acts on ({self.dim},)")
        return x

    def apply(self, x) -> np.ndarray:
        g = self.graph
        return _kernels.step(self._check(x), g.offsets, g.reverse, self.sign)

    __call__ = apply

    def to_dense(self) -> np.ndarray:
        """Explicit ``S @ C @ Q``; testing aid limited to small graphs."""
        g = self.graph
        if g.n > DENSE_MAX_VERTICES:
            raise ValueError(f"dense operator limited to {DENSE_MAX_VERTICES} vertices, got {g.n}")
        dim = self.dim
        shift = np.zeros((dim, dim))
        shift[np.arange(dim), g.reverse] = 1.0
        coin = np.zeros((dim, dim))
        for v in range(g.n):
            lo, hi = g.offsets[v], g.offsets[v + 1]
            d = hi - lo
            coin[lo:hi, lo:hi] = 2.0 / d - np.eye(d)
        query = np.diag(self.sign)
        return shift @ coin @ query


@dataclass(frozen=True)
class EvolutionTrace:
    p_series: np.ndarray
    max_p: float
    argmax_t: int
    final_state: np.ndarray

    @property
    def steps(self) -> int:
        return len(self.p_series) - 1


def uniform_state(g: Graph) -> np.ndarray:
    if g.m < 1:
        raise GraphFormatError("uniform state needs at least one edge")
    return np.full(g.n_arcs, 1.0 / np.sqrt(2 * g.m), dtype=np.complex128)


def apply_step(op: WalkOperator, x) -> np.ndarray:
    return op.apply(x)


def marked_probability(op: WalkOperator, x) -> float:
    x = np.asarray(x)
    return float(np.sum(np.abs(x[op.marked_arc]) ** 2))


def vertex_probabilities(g: Graph, x) -> np.ndarray:
    prob = np.abs(np.asarray(x)) ** 2
    return np.add.reduceat(prob, g.offsets[:-1])


def simulate(op: WalkOperator, x0, steps: int) -> EvolutionTrace:
    """Evolve ``steps`` times from ``x0`` recording the marked probability.

    ``x0`` is expected to be normalized; the norm is checked at every step.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    g = op.graph
    x0 = op._check(x0)
    x, p, norm2 = _kernels.evolve(x0, int(steps), g.offsets, g.reverse, op.sign, op.marked_arc)
    drift = np.abs(np.sqrt(norm2) - 1.0)
    if drift.max() > NORM_DRIFT_TOL:
        t = int(np.argmax(drift > NORM_DRIFT_TOL))
        raise NormDriftError(f"norm drift {drift[t]:.3e} at step {t} exceeds {NORM_DRIFT_TOL:g}")
    t_max = int(np.argmax(p))
    return EvolutionTrace(p_series=p, max_p=float(p[t_max]), argmax_t=t_max, final_state=x)


def check_stationary(op: WalkOperator, x) -> float:
    """Relative residual ``||U'x - x|| / ||x||``."""
    x = op._check(x)
    norm = np.linalg.norm(x)
    if norm == 0:
        raise ValueError("zero state")
    return float(np.linalg.norm(op.apply(x) - x) / norm)


def write_trace_csv(trace: EvolutionTrace, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "p_M"])
        for t, p in enumerate(trace.p_series):
            w.writerow([t, f"{p:.17g}"])
