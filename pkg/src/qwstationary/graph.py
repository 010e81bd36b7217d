"""Graph representation, marked-set analysis and unmarked-component counts.

Vertices are compacted to ``0..n-1`` in order of first appearance in the
edge list; the original labels are kept in ``Graph.labels`` so files can be
written back with the caller's numbering.

Directed arcs ``(v, c)`` with ``c`` a neighbour of ``v`` are laid out in CSR
order: all arcs leaving vertex 0 (neighbours ascending), then vertex 1, ...
The walk kernels and the stationary-state builder both use this layout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphFormatError, MarkedSetError

__all__ = [
    "Graph",
    "MarkedAnalysis",
    "UnmarkedDecomposition",
    "load_graph",
    "read_edge_list",
    "read_marked",
    "parse_marked",
    "analyze_marked",
    "decompose_unmarked",
]


class Graph:
    """Undirected simple graph with a fixed arc layout.

    Attributes
    ----------
    n, m : int
        Vertex and edge counts.
    edges : tuple of (int, int)
        Edges as ``(min, max)`` pairs, in input order.
    adjacency : tuple of tuple of int
        Sorted neighbour list per vertex.
    labels : tuple
        Original label of each compacted vertex.
    offsets : ndarray, shape (n + 1,)
        Arcs leaving ``v`` occupy ``offsets[v]:offsets[v + 1]``.
    arc_tail, arc_head : ndarray, shape (2m,)
    reverse : ndarray, shape (2m,)
        ``reverse[a]`` is the index of the opposite arc.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], labels: Sequence | None = None):
        self.n = int(n)
        self.edges = tuple((min(u, v), max(u, v)) for u, v in edges)
        self.m = len(self.edges)
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))

        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adjacency = tuple(tuple(sorted(x)) for x in nbrs)
        self.degrees = np.array([len(x) for x in self.adjacency], dtype=np.int64)

        self.offsets = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=self.offsets[1:])
        self.arc_tail = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        self.arc_head = np.fromiter(
            (c for row in self.adjacency for c in row), dtype=np.int64, count=2 * self.m
        )
        self._arc_pos = {
            (int(t), int(h)): i for i, (t, h) in enumerate(zip(self.arc_tail, self.arc_head))
        }
        self.reverse = np.array(
            [self._arc_pos[(int(h), int(t))] for t, h in zip(self.arc_tail, self.arc_head)],
            dtype=np.int64,
        )
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def n_arcs(self) -> int:
        return 2 * self.m

    def arc(self, tail: int, head: int) -> int:
        """Position of arc ``tail -> head``; KeyError if not an edge."""
        return self._arc_pos[(tail, head)]

    def arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.arc_tail.tolist(), self.arc_head.tolist()))

    def index_of(self, label) -> int:
        return self._label_index[label]


@dataclass(frozen=True)
class MarkedAnalysis:
    """Bipartition of the marked set and the edge counts around it.

    ``part1``/``part2`` are empty and ``degsum1``/``degsum2`` zero when the
    marked subgraph is not bipartite.
    """

    marked: frozenset[int]
    bipartite: bool
    part1: frozenset[int]
    part2: frozenset[int]
    e_m: int
    d_boundary: int
    degsum1: int
    degsum2: int
    unmarked_degsum: int
    marked_edges: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def marked_sorted(self) -> list[int]:
        return sorted(self.marked)


@dataclass(frozen=True)
class UnmarkedDecomposition:
    """Connected components of the subgraph induced by the unmarked vertices.

    ``boundary[i] = (k_i1, k_i2)`` counts edges from component ``i`` into the
    two sides of the marked bipartition; it is ``None`` for a non-bipartite
    marked set, where only ``boundary_total`` is meaningful.
    """

    components: tuple[frozenset[int], ...]
    component_of: np.ndarray = field(repr=False)
    internal_edges: np.ndarray
    boundary_total: np.ndarray
    boundary: np.ndarray | None

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def weights(self) -> np.ndarray:
        """Arc count touching each component: ``2|E_i| + k_i``."""
        return 2 * self.internal_edges + self.boundary_total


def load_graph(edge_list: Iterable[tuple[int, int]]) -> Graph:
    labels: list = []
    index: dict = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, pair in enumerate(edge_list):
        try:
            u, v = pair
        except (TypeError, ValueError):
            raise GraphFormatError(f"edge {lineno}: expected a pair, got {pair!r}") from None
        for x in (u, v):
            if isinstance(x, (bool, np.bool_)) or not isinstance(x, (int, np.integer)) or x < 0:
                raise GraphFormatError(f"edge {lineno}: labels must be nonnegative integers, got {x!r}")
        u, v = int(u), int(v)
        if u == v:
            raise GraphFormatError(f"edge {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"edge {lineno}: duplicate edge {u}-{v}")
        seen.add(key)
        for x in (u, v):
            if x not in index:
                index[x] = len(labels)
                labels.append(x)
        edges.append((index[u], index[v]))
    if not edges:
        raise GraphFormatError("edge list is empty")
    return Graph(len(labels), edges, labels)


def _data_lines(path: Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def read_edge_list(path) -> Graph:
    """Read ``u v`` per line; ``#`` lines and blank lines are skipped."""
    pairs = []
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"{path}:{lineno}: expected two integers, got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: non-integer label in {line!r}") from None
    return load_graph(pairs)


def read_marked(path) -> list[int]:
    out = []
    for lineno, line in _data_lines(path):
        try:
            out.append(int(line))
        except ValueError:
            raise GraphFormatError(f"{path}:{lineno}: non-integer vertex {line!r}") from None
    return out


def parse_marked(spec: str) -> list[int]:
    """Parse ``"0,3,5"`` style vertex lists."""
    try:
        return [int(x) for x in spec.replace(" ", "").split(",") if x]
    except ValueError:
        raise GraphFormatError(f"cannot parse marked list {spec!r}") from None


def _bfs_within(g: Graph, start: int, allowed) -> list[int]:
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w in allowed and w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


def analyze_marked(g: Graph, marked: Iterable[int]) -> MarkedAnalysis:
    """Validate ``marked`` (compacted indices) and 2-colour it.

    The lowest-indexed marked vertex always lands in ``part1``.
    """
    mset = frozenset(int(v) for v in marked)
    if not mset:
        raise MarkedSetError(MarkedSetError.EMPTY, "marked set is empty")
    bad = [v for v in mset if not 0 <= v < g.n]
    if bad:
        raise MarkedSetError(MarkedSetError.UNKNOWN_VERTEX, f"vertices {sorted(bad)} not in graph")
    if len(mset) == g.n:
        raise MarkedSetError(MarkedSetError.ALL_VERTICES, "every vertex is marked")

    root = min(mset)
    if len(_bfs_within(g, root, mset)) != len(mset):
        raise MarkedSetError(MarkedSetError.DISCONNECTED, "marked vertices do not induce a connected subgraph")

    color = {root: 0}
    queue = deque([root])
    bipartite = True
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in mset:
                continue
            if w not in color:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                bipartite = False

    marked_edges = tuple(e for e in g.edges if e[0] in mset and e[1] in mset)
    d_boundary = sum(1 for u, v in g.edges if (u in mset) != (v in mset))
    unmarked_degsum = int(sum(g.degrees[v] for v in range(g.n) if v not in mset))

    if bipartite:
        part1 = frozenset(v for v, c in color.items() if c == 0)
        part2 = frozenset(v for v, c in color.items() if c == 1)
        degsum1 = int(sum(g.degrees[v] for v in part1))
        degsum2 = int(sum(g.degrees[v] for v in part2))
    else:
        part1 = part2 = frozenset()
        degsum1 = degsum2 = 0

    return MarkedAnalysis(
        marked=mset,
        bipartite=bipartite,
        part1=part1,
        part2=part2,
        e_m=len(marked_edges),
        d_boundary=d_boundary,
        degsum1=degsum1,
        degsum2=degsum2,
        unmarked_degsum=unmarked_degsum,
        marked_edges=marked_edges,
    )


def decompose_unmarked(g: Graph, ma: MarkedAnalysis) -> UnmarkedDecomposition:
    unmarked = frozenset(range(g.n)) - ma.marked
    component_of = np.full(g.n, -1, dtype=np.int64)
    components = []
    for v in range(g.n):
        if v in ma.marked or component_of[v] >= 0:
            continue
        comp = _bfs_within(g, v, unmarked)
        component_of[comp] = len(components)
        components.append(frozenset(comp))

    r = len(components)
    internal = np.zeros(r, dtype=np.int64)
    total = np.zeros(r, dtype=np.int64)
    boundary = np.zeros((r, 2), dtype=np.int64) if ma.bipartite else None
    for u, v in g.edges:
        cu, cv = component_of[u], component_of[v]
        if cu >= 0 and cv >= 0:
            internal[cu] += 1
        elif cu >= 0 or cv >= 0:
            comp, mv = (cu, v) if cu >= 0 else (cv, u)
            total[comp] += 1
            if boundary is not None:
                boundary[comp, 0 if mv in ma.part1 else 1] += 1

    return UnmarkedDecomposition(
        components=tuple(components),
        component_of=component_of,
        internal_edges=internal,
        boundary_total=total,
        boundary=boundary,
    )
