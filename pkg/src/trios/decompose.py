"""The two decomposition passes.

Pass 1 lowers everything except Toffoli to one-qubit gates and CNOT.  Pass 2
runs after routing and picks a Toffoli decomposition that fits the physical
trio it landed on, then expands routing SWAPs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .circuit import Circuit, CircuitError, Gate, GateKind, cx, h, t, tdg, u1
from .topology import CouplingGraph

ToffoliPolicy = Literal["auto", "6cnot", "8cnot"]
TOFFOLI_POLICIES = ("auto", "6cnot", "8cnot")


class PlacementError(CircuitError):
    """A Toffoli sits on qubits that are neither a triangle nor a line."""


@dataclass(frozen=True)
class ToffoliPlacement:
    control1: int
    control2: int
    target: int
    middle: int | None = None  # None: triangle; otherwise the qubit coupled to both others

    @property
    def is_triangle(self) -> bool:
        return self.middle is None

    @property
    def qubits(self) -> tuple[int, int, int]:
        return (self.control1, self.control2, self.target)


def classify_placement(g: CouplingGraph, c1: int, c2: int, tgt: int) -> ToffoliPlacement:
    """Triangle if all three pairs are coupled, else Line through the member
    coupled to the other two (smallest index if several)."""
    trio = (c1, c2, tgt)
    coupled = {q: sum(g.are_coupled(q, o) for o in trio if o != q) for q in trio}
    if all(n == 2 for n in coupled.values()):
        return ToffoliPlacement(c1, c2, tgt)
    middles = sorted(q for q, n in coupled.items() if n == 2)
    if not middles:
        raise PlacementError(f"Toffoli on {trio} is neither a triangle nor a line")
    return ToffoliPlacement(c1, c2, tgt, middles[0])


# --------------------------------------------------------------------------
# fragments

def swap_to_cnots(a: int, b: int) -> list[Gate]:
    return [cx(a, b), cx(b, a), cx(a, b)]


def cu1_to_cnots(lam: float, c: int, tgt: int) -> list[Gate]:
    return [u1(lam / 2, c), cx(c, tgt), u1(-lam / 2, tgt), cx(c, tgt), u1(lam / 2, tgt)]


def toffoli_6cnot(p: ToffoliPlacement) -> list[Gate]:
    """Six-CNOT Toffoli; needs CNOTs on all three pairs."""
    if not p.is_triangle:
        raise PlacementError(f"6-CNOT Toffoli needs a triangle, got line through {p.middle}")
    return _toffoli_6cnot_gates(p.control1, p.control2, p.target)


def _toffoli_6cnot_gates(a: int, b: int, c: int) -> list[Gate]:
    return [
        h(c),
        cx(b, c), tdg(c),
        cx(a, c), t(c),
        cx(b, c), tdg(c),
        cx(a, c), t(b), t(c),
        cx(a, b), t(a), tdg(b), h(c),
        cx(a, b),
    ]


def _ccz_8cnot_gates(e1: int, m: int, e2: int) -> list[Gate]:
    # diagonal core of the linear-connectivity Toffoli; only (e1,m) and (m,e2) interact
    return [
        t(e1), t(m), t(e2),
        cx(e1, m),
        cx(m, e2),
        cx(e1, m), t(e2),
        cx(m, e2),
        cx(e1, m),
        tdg(m), tdg(e2),
        cx(m, e2),
        cx(e1, m), tdg(e2),
        cx(m, e2),
    ]


def toffoli_8cnot(p: ToffoliPlacement) -> list[Gate]:
    """Eight-CNOT Toffoli using only the two pairs that include the middle qubit.

    The core is symmetric in its three qubits up to the H pair, so the target
    may be an end or the middle; the H gates simply sit on whichever it is.
    """
    trio = p.qubits
    if p.is_triangle:
        # any member works as the middle on a triangle; use the second control
        mid = p.control2
    else:
        mid = p.middle
        if mid not in trio:
            raise PlacementError(f"middle {mid} is not one of {trio}")
    e1, e2 = [q for q in trio if q != mid]
    return [h(p.target), *_ccz_8cnot_gates(e1, mid, e2), h(p.target)]


def lower_toffoli(p: ToffoliPlacement, policy: ToffoliPolicy = "auto") -> list[Gate]:
    if policy == "6cnot" or (policy == "auto" and p.is_triangle):
        return toffoli_6cnot(p)
    return toffoli_8cnot(p)


def logical_toffoli(c1: int, c2: int, tgt: int, policy: ToffoliPolicy = "6cnot") -> list[Gate]:
    """Connectivity-blind lowering, as a decompose-first compiler would emit it."""
    if policy == "8cnot":
        return toffoli_8cnot(ToffoliPlacement(c1, c2, tgt, middle=c2))
    return _toffoli_6cnot_gates(c1, c2, tgt)


# --------------------------------------------------------------------------
# passes

def pass1_decompose(circuit: Circuit) -> Circuit:
    """Lower to {1q, CX, CCX}: CU1 becomes two CNOTs, program SWAPs three."""
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is GateKind.CU1:
            out.extend(cu1_to_cnots(g.params[0], *g.qubits))
        elif g.kind is GateKind.SWAP:
            out.extend(swap_to_cnots(*g.qubits))
        else:
            out.append(g)
    return circuit.with_gates(out)


def lower_all_toffolis(circuit: Circuit, policy: ToffoliPolicy = "6cnot") -> Circuit:
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is GateKind.CCX:
            out.extend(logical_toffoli(*g.qubits, policy=policy))
        else:
            out.append(g)
    return circuit.with_gates(out)


def pass2_decompose(routed: Circuit, g: CouplingGraph, policy: ToffoliPolicy = "auto") -> Circuit:
    """Mapping-aware lowering of a routed physical circuit.

    Every CCX must sit on a triangle or a line of ``g``; SWAPs become three
    CNOTs.  Raises :class:`PlacementError` if a two- or three-qubit gate is
    not on coupled qubits, which means routing went wrong.
    """
    if routed.n_qubits > g.n_physical:
        raise PlacementError("routed circuit is wider than the device")
    out: list[Gate] = []
    for gate in routed.gates:
        k = gate.kind
        if k is GateKind.CCX:
            p = classify_placement(g, *gate.qubits)
            if policy == "6cnot" and not p.is_triangle:
                raise PlacementError(
                    f"6-CNOT Toffoli requested on non-triangle {gate.qubits}")
            out.extend(lower_toffoli(p, policy))
            continue
        if k is GateKind.CU1:
            frag = cu1_to_cnots(gate.params[0], *gate.qubits)
        elif k is GateKind.SWAP:
            frag = swap_to_cnots(*gate.qubits)
        else:
            frag = [gate]
        if gate.is_two_qubit and not g.are_coupled(*gate.qubits):
            raise PlacementError(f"{k.value} on uncoupled qubits {gate.qubits}")
        out.extend(frag)
    return routed.with_gates(out)
