"""Device coupling graphs and deterministic shortest-path queries."""
from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping


class TopologyError(ValueError):
    pass


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PathResult:
    path: tuple[int, ...]
    length: float


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected, connected device connectivity.

    ``weights`` (optional) maps every edge ``(u, v)`` with ``u < v`` to a
    positive routing cost, typically ``-log`` of the CNOT success rate.
    """

    n_physical: int
    edges: frozenset[tuple[int, int]]
    weights: Mapping[tuple[int, int], float] | None = field(default=None, hash=False)
    name: str = ""

    def __post_init__(self):
        edges = frozenset(_edge(int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n_physical < 1:
            raise TopologyError("graph needs at least one qubit")
        for u, v in edges:
            if u == v:
                raise TopologyError(f"self-loop on qubit {u}")
            if u < 0 or v >= self.n_physical:
                raise TopologyError(f"edge {u}-{v} out of range for {self.n_physical} qubits")
        if self.weights is not None:
            w = {_edge(*e): float(val) for e, val in self.weights.items()}
            if set(w) != edges:
                raise TopologyError("weights must cover exactly the edge set")
            if any(not val > 0 for val in w.values()):
                raise TopologyError("edge weights must be positive")
            object.__setattr__(self, "weights", w)
        if not self._connected():
            raise TopologyError("coupling graph is not connected")

    def _connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in self.neighbors(u):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n_physical

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_physical)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def neighbors(self, q: int) -> tuple[int, ...]:
        return self._adjacency[q]

    def degree(self, q: int) -> int:
        return len(self._adjacency[q])

    def are_coupled(self, a: int, b: int) -> bool:
        return _edge(a, b) in self.edges

    def weight(self, a: int, b: int, weighted: bool = True) -> float:
        if not weighted or self.weights is None:
            return 1.0
        return self.weights[_edge(a, b)]

    def with_weights(self, weights: Mapping[tuple[int, int], float]) -> "CouplingGraph":
        return CouplingGraph(self.n_physical, self.edges, weights, self.name)

    def with_error_rates(self, e2: float | Mapping[tuple[int, int], float]) -> "CouplingGraph":
        """Weight each edge by ``-log(1 - e2)`` for noise-aware routing."""
        if isinstance(e2, Mapping):
            rates = {_edge(*e): r for e, r in e2.items()}
        else:
            rates = {e: e2 for e in self.edges}
        return self.with_weights({e: -math.log1p(-rates[e]) for e in self.edges})

    # -- distances ---------------------------------------------------------

    def _single_source(self, src: int, weighted: bool) -> list[float]:
        dist = [math.inf] * self.n_physical
        dist[src] = 0.0
        if not weighted or self.weights is None:
            frontier = [src]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in self._adjacency[u]:
                        if dist[v] == math.inf:
                            dist[v] = dist[u] + 1
                            nxt.append(v)
                frontier = nxt
            return dist
        heap = [(0.0, src)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v in self._adjacency[u]:
                nd = d + self.weights[_edge(u, v)]
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist

    @cached_property
    def _hop_table(self) -> tuple[tuple[float, ...], ...]:
        return tuple(tuple(self._single_source(s, False)) for s in range(self.n_physical))

    @cached_property
    def _weight_table(self) -> tuple[tuple[float, ...], ...]:
        return tuple(tuple(self._single_source(s, True)) for s in range(self.n_physical))

    def distance_table(self, weighted: bool = False) -> tuple[tuple[float, ...], ...]:
        if weighted and self.weights is not None:
            return self._weight_table
        return self._hop_table

    def distance(self, a: int, b: int, weighted: bool = False) -> float:
        return self.distance_table(weighted)[a][b]


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


def shortest_path(g: CouplingGraph, a: int, b: int, weighted: bool = False) -> PathResult:
    """Minimum-cost path from ``a`` to ``b``.

    Among equal-cost paths the lexicographically smallest vertex sequence is
    returned: walking from ``a``, always step to the smallest neighbour that
    still lies on some optimal path.
    """
    for q in (a, b):
        if not 0 <= q < g.n_physical:
            raise TopologyError(f"qubit {q} out of range")
    use_w = weighted and g.weights is not None
    to_b = g.distance_table(use_w)[b]
    if to_b[a] == math.inf:
        raise TopologyError(f"no path between {a} and {b}")
    path = [a]
    u = a
    while u != b:
        for v in g.neighbors(u):
            if _close(g.weight(u, v, use_w) + to_b[v], to_b[u]):
                path.append(v)
                u = v
                break
        else:  # pragma: no cover - distances are exact for BFS, tolerant for Dijkstra
            raise TopologyError("inconsistent distance table")
    return PathResult(tuple(path), to_b[a])


def trio_cost(g: CouplingGraph, q1: int, q2: int, q3: int,
              weighted: bool = False) -> tuple[int, float]:
    """Member with the smallest summed distance to the other two, and that sum.

    Ties go to the smallest qubit index.
    """
    trio = (q1, q2, q3)
    if len(set(trio)) != 3:
        raise TopologyError(f"trio operands must be distinct, got {trio}")
    table = g.distance_table(weighted and g.weights is not None)
    best: tuple[float, int] | None = None
    for m in sorted(trio):
        s = sum(table[m][o] for o in trio if o != m)
        if best is None or (s < best[0] and not _close(s, best[0])):
            best = (s, m)
    return best[1], best[0]


def pairwise_distance_sum(g: CouplingGraph, q1: int, q2: int, q3: int) -> float:
    return g.distance(q1, q2) + g.distance(q1, q3) + g.distance(q2, q3)


# --------------------------------------------------------------------------
# builders

JOHANNESBURG_EDGES = (
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (4, 9), (5, 6), (6, 7), (7, 8), (8, 9),
    (5, 10), (9, 14), (7, 12), (10, 11), (11, 12), (12, 13), (13, 14), (10, 15),
    (14, 19), (15, 16), (16, 17), (17, 18), (18, 19),
)


def johannesburg() -> CouplingGraph:
    """20-qubit IBM Johannesburg layout: four rings of six joined in a 4x5 frame."""
    return CouplingGraph(20, frozenset(JOHANNESBURG_EDGES), name="johannesburg")


def grid(rows: int, cols: int) -> CouplingGraph:
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise TopologyError(f"degenerate grid {rows}x{cols}")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.add((q, q + 1))
            if r + 1 < rows:
                edges.add((q, q + cols))
    return CouplingGraph(rows * cols, frozenset(edges), name=f"grid-{cols}x{rows}")


def line(n: int) -> CouplingGraph:
    if n < 2:
        raise TopologyError(f"line needs at least 2 qubits, got {n}")
    return CouplingGraph(n, frozenset((i, i + 1) for i in range(n - 1)), name=f"line-{n}")


def clusters(groups: int, size: int) -> CouplingGraph:
    """``groups`` cliques of ``size`` qubits; the first qubit of each is a hub
    and all hubs are pairwise coupled."""
    if groups < 1 or size < 1 or groups * size < 2:
        raise TopologyError(f"degenerate clusters {groups}x{size}")
    edges = set()
    for gi in range(groups):
        base = gi * size
        edges.update(combinations(range(base, base + size), 2))
    edges.update(combinations(range(0, groups * size, size), 2))
    return CouplingGraph(groups * size, frozenset(edges), name=f"clusters-{size}x{groups}")


STANDARD_TOPOLOGIES = ("johannesburg", "grid-5x4", "line-20", "clusters-5x4")


def by_name(name: str) -> CouplingGraph:
    """Resolve a CLI topology name.

    ``johannesburg``, ``grid-<cols>x<rows>``, ``line-<n>``,
    ``clusters-<size>x<groups>``, or a path to an edge-list file.
    """
    if name == "johannesburg":
        return johannesburg()
    m = re.fullmatch(r"grid-(\d+)x(\d+)", name)
    if m:
        return grid(int(m.group(2)), int(m.group(1)))
    m = re.fullmatch(r"line-(\d+)", name)
    if m:
        return line(int(m.group(1)))
    m = re.fullmatch(r"clusters-(\d+)x(\d+)", name)
    if m:
        return clusters(int(m.group(2)), int(m.group(1)))
    if Path(name).is_file():
        return load_edge_list(name)
    raise TopologyError(f"unknown topology {name!r}")


def parse_edge_list(text: str, name: str = "custom") -> CouplingGraph:
    """Parse ``u v [weight]`` lines; ``#`` starts a comment."""
    edges: list[tuple[int, int]] = []
    weights: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if len(parts) not in (2, 3):
            raise TopologyError(f"line {lineno}: expected 'u v [weight]', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            if len(parts) == 3:
                weights[_edge(u, v)] = float(parts[2])
        except ValueError as exc:
            raise TopologyError(f"line {lineno}: {exc}") from None
        edges.append((u, v))
    if not edges:
        raise TopologyError("edge list is empty")
    if weights and len(weights) != len({_edge(*e) for e in edges}):
        raise TopologyError("either every edge or no edge may carry a weight")
    n = 1 + max(max(e) for e in edges)
    return CouplingGraph(n, frozenset(edges), weights or None, name=name)


def load_edge_list(path: str | Path) -> CouplingGraph:
    p = Path(path)
    return parse_edge_list(p.read_text(encoding="utf-8"), name=p.stem)


def has_triangle(g: CouplingGraph) -> bool:
    return any(g.are_coupled(a, c) for a, b in g.edges for c in g.neighbors(b) if c != a)


def triangles(g: CouplingGraph) -> Iterable[tuple[int, int, int]]:
    for a, b, c in combinations(range(g.n_physical), 3):
        if g.are_coupled(a, b) and g.are_coupled(b, c) and g.are_coupled(a, c):
            yield (a, b, c)
