"""Serialization of analysis results: JSON documents, key/value text, CSV."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .bounds import BoundReport
from .graph import Graph, MarkedAnalysis, UnmarkedDecomposition
from .stationary import StationaryReport, StationaryState
from .walk import EvolutionTrace

SCHEMA_VERSION = 1


def _f(x):
    # 17 significant digits round-trips every double
    return None if x is None else float(f"{x:.17g}")


def _labels(g: Graph, verts) -> list:
    return sorted(g.labels[v] for v in verts)


def analysis_dict(g: Graph, ma: MarkedAnalysis, ud: UnmarkedDecomposition) -> dict:
    comps = []
    for i, comp in enumerate(ud.components):
        entry = {
            "vertices": _labels(g, comp),
            "internal_edges": int(ud.internal_edges[i]),
            "boundary_edges": int(ud.boundary_total[i]),
        }
        if ud.boundary is not None:
            entry["k1"] = int(ud.boundary[i, 0])
            entry["k2"] = int(ud.boundary[i, 1])
        comps.append(entry)
    return {
        "n": g.n,
        "m": g.m,
        "marked": _labels(g, ma.marked),
        "bipartite": ma.bipartite,
        "part1": _labels(g, ma.part1),
        "part2": _labels(g, ma.part2),
        "marked_edges": ma.e_m,
        "boundary_edges": ma.d_boundary,
        "degsum1": ma.degsum1,
        "degsum2": ma.degsum2,
        "unmarked_components": comps,
    }


def state_dict(g: Graph, state: StationaryState) -> dict:
    lab = g.labels
    return {
        "normalized": state.normalized,
        "a": [_f(x) for x in state.component_amps],
        "c": [
            {"edge": [lab[u], lab[v]], "amplitude": _f(x)}
            for (u, v), x in state.marked_edge_amps.items()
        ],
        "overlap": _f(state.overlap_with_initial),
    }


def stationary_dict(g: Graph, rep: StationaryReport) -> dict:
    doc = {
        "exists": rep.exists,
        "reason": rep.reason.value,
        "analysis": analysis_dict(g, rep.analysis, rep.decomposition),
    }
    if rep.state is not None:
        doc.update(state_dict(g, rep.state))
        doc["residual_norm"] = _f(rep.residual_norm)
        doc["zero_overlap_fallback"] = rep.zero_overlap_fallback
    return doc


def bound_dict(rep: BoundReport) -> dict:
    doc = {
        "a_bar": _f(rep.a_bar),
        "a_naive": _f(rep.a_naive),
        "denom": rep.denom,
        "c_sq_sum": _f(rep.c_sq_sum),
        "bound": _f(rep.bound),
        "bound_clamped": _f(rep.bound_clamped),
    }
    if rep.steps is not None:
        doc["steps"] = rep.steps
        doc["sim_max_p"] = _f(rep.sim_max_p)
        doc["sim_argmax_t"] = rep.sim_argmax_t
        doc["violation"] = rep.violation
    return doc


def trace_dict(trace: EvolutionTrace) -> dict:
    return {
        "steps": trace.steps,
        "p0": _f(trace.p_series[0]),
        "max_p": _f(trace.max_p),
        "argmax_t": trace.argmax_t,
    }


def to_json(doc: dict) -> str:
    return json.dumps({"schema": SCHEMA_VERSION, **doc}, indent=2) + "\n"


def to_text(doc: dict, prefix: str = "") -> str:
    lines = []
    for key, val in doc.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict):
            lines.append(to_text(val, prefix=name + ".").rstrip("\n"))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            for i, item in enumerate(val):
                lines.append(to_text(item, prefix=f"{name}[{i}].").rstrip("\n"))
        else:
            if isinstance(val, bool):
                val = str(val).lower()
            elif isinstance(val, list):
                val = " ".join(str(x) for x in val)
            lines.append(f"{name}: {val}")
    return "\n".join(lines) + "\n"


def write_state_csv(g: Graph, state: StationaryState, path) -> None:
    lab = g.labels
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["from", "to", "amplitude"])
        for (t, h), x in zip(g.arcs(), state.arc_amplitudes):
            w.writerow([lab[t], lab[h], f"{x:.17g}"])


def read_state_csv(g: Graph, path):
    """Inverse of :func:`write_state_csv`, returning an arc-indexed vector."""
    x = np.zeros(g.n_arcs)
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            t = g.index_of(int(row["from"]))
            h = g.index_of(int(row["to"]))
            x[g.arc(t, h)] = float(row["amplitude"])
    return x
