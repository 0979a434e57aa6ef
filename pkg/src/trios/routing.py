"""Initial layouts and the two SWAP-inserting routers.

``route_baseline`` handles a fully decomposed circuit one CNOT at a time.
``route_trios`` keeps Toffolis whole and gathers each operand trio into a
triangle or line before emitting it.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .circuit import Circuit, CircuitError, Gate, GateKind, permutation_unitary, swap
from .decompose import ToffoliPolicy, classify_placement, logical_toffoli
from .topology import CouplingGraph, shortest_path, trio_cost


class LayoutError(ValueError):
    pass


class Layout:
    """Bijection between logical and physical qubits over the whole device.

    Logical indices at or above the program width are idle placeholders so
    that every physical qubit always has exactly one owner.
    """

    __slots__ = ("_l2p", "_p2l")

    def __init__(self, logical_to_physical: Sequence[int]):
        l2p = [int(p) for p in logical_to_physical]
        if sorted(l2p) != list(range(len(l2p))):
            raise LayoutError(f"layout is not a bijection: {l2p}")
        self._l2p = l2p
        self._p2l = [0] * len(l2p)
        for lq, pq in enumerate(l2p):
            self._p2l[pq] = lq

    @property
    def size(self) -> int:
        return len(self._l2p)

    @property
    def logical_to_physical(self) -> tuple[int, ...]:
        return tuple(self._l2p)

    @property
    def physical_to_logical(self) -> tuple[int, ...]:
        return tuple(self._p2l)

    def physical(self, logical: int) -> int:
        return self._l2p[logical]

    def logical(self, physical: int) -> int:
        return self._p2l[physical]

    def swap_physical(self, a: int, b: int) -> None:
        la, lb = self._p2l[a], self._p2l[b]
        self._p2l[a], self._p2l[b] = lb, la
        self._l2p[la], self._l2p[lb] = b, a

    def copy(self) -> "Layout":
        return Layout(self._l2p)

    def __eq__(self, other):
        return isinstance(other, Layout) and self._l2p == other._l2p

    def __repr__(self):
        return f"Layout({self._l2p})"

    def permutation_unitary(self, n_logical: int | None = None) -> np.ndarray:
        """Unitary carrying logical qubit ``i`` onto its physical position."""
        return permutation_unitary(self._l2p)


def identity_layout(n: int, n_physical: int | None = None) -> Layout:
    """Logical ``i`` on physical ``i``; idle placeholders fill any spare qubits."""
    size = n if n_physical is None else n_physical
    if n > size:
        raise LayoutError(f"circuit needs {n} qubits but the device has {size}")
    return Layout(range(size))


def interaction_weights(circuit: Circuit) -> dict[tuple[int, int], int]:
    """CX adds 1 to its pair; CCX adds 2 to each of its three pairs, i.e. the
    weight of its six-CNOT expansion."""
    w: dict[tuple[int, int], int] = defaultdict(int)
    for g in circuit.gates:
        if g.kind is GateKind.CCX:
            for a, b in combinations(sorted(g.qubits), 2):
                w[(a, b)] += 2
        elif g.is_two_qubit:
            a, b = sorted(g.qubits)
            w[(a, b)] += 1
    return dict(w)


def greedy_layout(circuit: Circuit, g: CouplingGraph) -> Layout:
    """Place strongly interacting logical qubits close together.

    Starting from the heaviest interaction, logical qubits are placed
    breadth-first (heaviest edges and highest weighted degree first), each on
    the free physical qubit minimising its weighted distance to already placed
    partners; ties prefer higher physical degree, then lower index.
    """
    n = circuit.n_qubits
    if n > g.n_physical:
        raise LayoutError(f"circuit needs {n} qubits but the device has {g.n_physical}")
    weights = interaction_weights(circuit)
    if not weights:
        return identity_layout(n, g.n_physical)
    nbrs: dict[int, dict[int, int]] = defaultdict(dict)
    wdeg = [0] * n
    for (a, b), w in weights.items():
        nbrs[a][b] = w
        nbrs[b][a] = w
        wdeg[a] += w
        wdeg[b] += w
    dist = g.distance_table()
    placed: dict[int, int] = {}
    free = set(range(g.n_physical))

    def place(lq: int) -> None:
        partners = [(o, w) for o, w in nbrs[lq].items() if o in placed]
        best = min(free, key=lambda p: (sum(w * dist[p][placed[o]] for o, w in partners),
                                         -g.degree(p), p))
        placed[lq] = best
        free.remove(best)

    edges_by_weight = sorted(weights.items(), key=lambda kv: (-kv[1], kv[0]))
    for (a, b), _ in edges_by_weight:
        if a in placed or b in placed:
            continue
        # new component: seed it from its heaviest edge
        queue = sorted((a, b), key=lambda q: (-wdeg[q], q))
        for q in queue:
            place(q)
        head = 0
        while head < len(queue):
            cur = queue[head]
            head += 1
            for o in sorted(nbrs[cur], key=lambda o: (-nbrs[cur][o], -wdeg[o], o)):
                if o not in placed:
                    place(o)
                    queue.append(o)
    rest = sorted(free)
    l2p = []
    for lq in range(g.n_physical):
        l2p.append(placed[lq] if lq in placed else rest.pop(0))
    return Layout(l2p)


# --------------------------------------------------------------------------
# routers

@dataclass(frozen=True)
class RoutedResult:
    circuit: Circuit
    initial_layout: Layout
    final_layout: Layout
    swap_count: int


class _Router:
    """Shared state: output gate list, private layout copy, SWAP counter."""

    def __init__(self, g: CouplingGraph, layout: Layout, weighted: bool):
        if layout.size != g.n_physical:
            raise LayoutError(f"layout covers {layout.size} qubits, device has {g.n_physical}")
        self.g = g
        self.layout = layout.copy()
        self.weighted = weighted and g.weights is not None
        self.out: list[Gate] = []
        self.swaps = 0

    def phys(self, lq: int) -> int:
        return self.layout.physical(lq)

    def do_swap(self, a: int, b: int) -> None:
        self.out.append(swap(a, b))
        self.layout.swap_physical(a, b)
        self.swaps += 1

    def walk(self, path: Sequence[int], stop_before: int) -> None:
        """SWAP the occupant of ``path[0]`` forward until it reaches
        ``path[-1 - stop_before]``."""
        for i in range(len(path) - 1 - stop_before):
            self.do_swap(path[i], path[i + 1])

    def emit_local(self, gate: Gate) -> None:
        """Emit a 0-3 qubit non-Toffoli gate, routing a 2-qubit gate first if needed."""
        if gate.kind is GateKind.BARRIER:
            self.out.append(gate.remap(self.layout.logical_to_physical))
            return
        if gate.is_two_qubit:
            a, b = (self.phys(q) for q in gate.qubits)
            if not self.g.are_coupled(a, b):
                self.walk(shortest_path(self.g, a, b, self.weighted).path, stop_before=1)
        self.out.append(gate.remap(self.layout.logical_to_physical))

    def result(self, circuit: Circuit, initial: Layout) -> RoutedResult:
        routed = Circuit(self.g.n_physical, tuple(self.out), circuit.name)
        return RoutedResult(routed, initial.copy(), self.layout.copy(), self.swaps)


def route_baseline(circuit: Circuit, g: CouplingGraph, layout: Layout,
                   weighted: bool = False) -> RoutedResult:
    """Decompose-first routing: for each distant 2-qubit gate, walk the first
    operand along the shortest path until it neighbours the second."""
    if any(gate.kind is GateKind.CCX for gate in circuit.gates):
        raise CircuitError("baseline router expects Toffolis to be decomposed already")
    r = _Router(g, layout, weighted)
    for gate in circuit.gates:
        r.emit_local(gate)
    return r.result(circuit, layout)


def route_trios(circuit: Circuit, g: CouplingGraph, layout: Layout,
                weighted: bool = False, policy: ToffoliPolicy = "auto") -> RoutedResult:
    """Group routing: each Toffoli's operands are gathered around the member
    with the smallest summed distance to the other two.

    The two movers travel in order of path length (ties: lower physical
    index), each stopping next to the destination.  If the second mover's
    path would end on the square the first one took, it stops one step
    earlier and the first mover becomes the middle of a line.

    With ``policy="6cnot"`` a gathered trio that is not a triangle is lowered
    on the spot and its CNOTs routed pairwise, since that decomposition needs
    all three pairs.
    """
    r = _Router(g, layout, weighted)
    for gate in circuit.gates:
        if gate.kind is not GateKind.CCX:
            r.emit_local(gate)
            continue
        _gather_trio(r, gate)
        trio = tuple(r.phys(q) for q in gate.qubits)
        if policy == "6cnot" and not classify_placement(g, *trio).is_triangle:
            for sub in logical_toffoli(*gate.qubits, policy="6cnot"):
                r.emit_local(sub)
        else:
            r.out.append(gate.remap(r.layout.logical_to_physical))
    return r.result(circuit, layout)


def _gather_trio(r: _Router, gate: Gate) -> None:
    g, w = r.g, r.weighted
    logical = gate.qubits
    dest_phys, _ = trio_cost(g, *(r.phys(q) for q in logical), weighted=w)
    dest = r.layout.logical(dest_phys)
    movers = [q for q in logical if q != dest]
    paths = {q: shortest_path(g, r.phys(q), dest_phys, w) for q in movers}
    movers.sort(key=lambda q: (paths[q].length, r.phys(q)))
    first, second = movers

    r.walk(paths[first].path, stop_before=1)
    landing = r.phys(first)
    path = shortest_path(g, r.phys(second), r.phys(dest), w).path
    if landing in path:
        # normally the penultimate square; with edge weights it can sit deeper
        r.walk(path, stop_before=len(path) - path.index(landing))
    else:
        r.walk(path, stop_before=1)
