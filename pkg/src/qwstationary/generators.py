"""Witness instances and standard test families.

Every generator returns ``(graph, marked)`` with ``marked`` in compacted
vertex indices (which coincide with the labels used here).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph, load_graph

__all__ = [
    "FamilySpec",
    "FAMILIES",
    "gen_counterexample",
    "gen_zero_overlap",
    "gen_two_components",
    "gen_cycle",
    "gen_complete",
    "gen_star",
    "gen_path",
    "write_instance",
]

# m1=0, m2=1, u1=2, u2=3, u3=4
_COUNTEREXAMPLE = [(0, 1), (2, 0), (3, 1), (4, 1), (3, 4)]

# m1=0, m2=1; H1 = {u1=2, u2=3}, H2 = {u3=4, u4=5}.
# k11 = k21 = 2, k12 = k22 = 1, |E1| = |E2| = 1.
_ZERO_OVERLAP = [(0, 1), (2, 3), (4, 5), (2, 0), (4, 0), (3, 1), (5, 1), (3, 0), (5, 0)]


def gen_counterexample() -> tuple[Graph, list[int]]:
    """Bipartite M with degree sums 2 and 3 whose complement splits in two."""
    return load_graph(_COUNTEREXAMPLE), [0, 1]


def gen_zero_overlap() -> tuple[Graph, list[int]]:
    """Two identical unmarked components forced to opposite amplitudes."""
    return load_graph(_ZERO_OVERLAP), [0, 1]


def gen_two_components(
    k11: int, k12: int, k21: int, k22: int, size1: int | None = None, size2: int | None = None
) -> tuple[Graph, list[int]]:
    """Marked edge ``0-1`` plus two unmarked paths with prescribed boundary counts.

    Component ``i`` is a path on ``size_i`` vertices; its first ``k_i1``
    vertices attach to vertex 0 and its last ``k_i2`` to vertex 1.
    """
    ks = [(k11, k12), (k21, k22)]
    sizes = [size1, size2]
    edges = [(0, 1)]
    nxt = 2
    for (ka, kb), size in zip(ks, sizes):
        if min(ka, kb) < 0 or ka + kb == 0:
            raise ValueError("each component needs a nonnegative, nonzero boundary")
        size = max(ka, kb) if size is None else size
        if size < max(ka, kb, 1):
            raise ValueError(f"component of size {size} cannot carry {max(ka, kb)} distinct boundary edges")
        verts = list(range(nxt, nxt + size))
        nxt += size
        edges += list(zip(verts, verts[1:]))
        edges += [(v, 0) for v in verts[:ka]]
        edges += [(v, 1) for v in verts[size - kb:]] if kb else []
    return load_graph(edges), [0, 1]


def gen_cycle(n: int, span: int = 2) -> tuple[Graph, list[int]]:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    if not 1 <= span < n:
        raise ValueError(f"span must be in [1, {n - 1}]")
    return load_graph([(i, (i + 1) % n) for i in range(n)]), list(range(span))


def gen_complete(n: int, k: int) -> tuple[Graph, list[int]]:
    if n < 3:
        raise ValueError("complete graph needs n >= 3")
    if not 1 <= k < n:
        raise ValueError(f"k must be in [1, {n - 1}]")
    return load_graph([(i, j) for i in range(n) for j in range(i + 1, n)]), list(range(k))


def gen_star(n: int) -> tuple[Graph, list[int]]:
    """Star with centre 0 (marked) and ``n`` leaves."""
    if n < 2:
        raise ValueError("star needs at least 2 leaves")
    return load_graph([(0, i) for i in range(1, n + 1)]), [0]


def gen_path(n: int, marked: list[int]) -> tuple[Graph, list[int]]:
    if n < 2:
        raise ValueError("path needs n >= 2")
    return load_graph([(i, i + 1) for i in range(n - 1)]), list(marked)


FAMILIES = {
    "counterexample": gen_counterexample,
    "zero-overlap": gen_zero_overlap,
    "two-components": gen_two_components,
    "cycle": gen_cycle,
    "complete": gen_complete,
    "star": gen_star,
}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)

    def build(self) -> tuple[Graph, list[int]]:
        try:
            fn = FAMILIES[self.family]
        except KeyError:
            raise ValueError(f"unknown family {self.family!r}; choose from {sorted(FAMILIES)}") from None
        return fn(**self.params)


def write_instance(g: Graph, marked, prefix) -> tuple[Path, Path]:
    """Write ``<prefix>.edges`` and ``<prefix>.marked`` using original labels."""
    prefix = Path(prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    edge_path = prefix.with_name(prefix.name + ".edges")
    marked_path = prefix.with_name(prefix.name + ".marked")
    lab = g.labels
    edge_path.write_text(
        f"# n={g.n} m={g.m}\n" + "".join(f"{lab[u]} {lab[v]}\n" for u, v in g.edges)
    )
    marked_path.write_text("".join(f"{lab[v]}\n" for v in sorted(marked)))
    return edge_path, marked_path
