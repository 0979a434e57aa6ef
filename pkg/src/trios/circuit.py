"""Circuit IR, gate statistics and a dense-unitary simulator.

Basis convention is little-endian everywhere: qubit 0 is the least
significant bit of a basis-state index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np


class CircuitError(ValueError):
    """Raised for malformed gates or circuits."""


class GateKind(Enum):
    H = "h"
    X = "x"
    T = "t"
    TDG = "tdg"
    U1 = "u1"
    U2 = "u2"
    U3 = "u3"
    RZ = "rz"
    RX = "rx"
    CX = "cx"
    CU1 = "cu1"
    SWAP = "swap"
    CCX = "ccx"
    MEASURE = "measure"
    BARRIER = "barrier"

    @property
    def arity(self) -> int | None:
        """Operand count, or None for variable-width kinds (BARRIER)."""
        if self is GateKind.BARRIER:
            return None
        if self in (GateKind.CX, GateKind.CU1, GateKind.SWAP):
            return 2
        if self is GateKind.CCX:
            return 3
        return 1

    @property
    def n_params(self) -> int:
        return _N_PARAMS.get(self, 0)

    @property
    def is_unitary_1q(self) -> bool:
        return self.arity == 1 and self is not GateKind.MEASURE


_N_PARAMS = {GateKind.U1: 1, GateKind.U2: 2, GateKind.U3: 3, GateKind.RZ: 1,
             GateKind.RX: 1, GateKind.CU1: 1}


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    clbit: int | None = None  # MEASURE only; None means same index as the qubit

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        arity = self.kind.arity
        if arity is not None and len(self.qubits) != arity:
            raise CircuitError(
                f"{self.kind.value} takes {arity} qubit(s), got {len(self.qubits)}")
        if self.kind is GateKind.BARRIER and not self.qubits:
            raise CircuitError("barrier needs at least one qubit")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate operands in {self.kind.value}{self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError(f"negative qubit index in {self.qubits}")
        if len(self.params) != self.kind.n_params:
            raise CircuitError(
                f"{self.kind.value} takes {self.kind.n_params} parameter(s), "
                f"got {len(self.params)}")
        if self.clbit is not None and self.kind is not GateKind.MEASURE:
            raise CircuitError("only measure carries a classical bit")
        if self.clbit is not None:
            if self.clbit < 0:
                raise CircuitError(f"negative classical bit {self.clbit}")
            if self.clbit == self.qubits[0]:
                object.__setattr__(self, "clbit", None)

    @property
    def is_two_qubit(self) -> bool:
        return self.kind.arity == 2

    def remap(self, mapping: Sequence[int] | dict[int, int]) -> "Gate":
        """Same gate on relabelled qubits; a measure keeps its classical bit."""
        clbit = self.clbit
        if self.kind is GateKind.MEASURE and clbit is None:
            clbit = self.qubits[0]
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.params, clbit)

    def __str__(self) -> str:
        args = f"({', '.join(f'{p:.6g}' for p in self.params)})" if self.params else ""
        return f"{self.kind.value}{args} {','.join(map(str, self.qubits))}"


# Gate constructors. Argument order follows OpenQASM: parameters first for
# parametrized gates, then qubits.
def h(q: int) -> Gate: return Gate(GateKind.H, (q,))
def x(q: int) -> Gate: return Gate(GateKind.X, (q,))
def t(q: int) -> Gate: return Gate(GateKind.T, (q,))
def tdg(q: int) -> Gate: return Gate(GateKind.TDG, (q,))
def u1(lam: float, q: int) -> Gate: return Gate(GateKind.U1, (q,), (lam,))
def u2(phi: float, lam: float, q: int) -> Gate: return Gate(GateKind.U2, (q,), (phi, lam))
def u3(theta: float, phi: float, lam: float, q: int) -> Gate:
    return Gate(GateKind.U3, (q,), (theta, phi, lam))
def rz(theta: float, q: int) -> Gate: return Gate(GateKind.RZ, (q,), (theta,))
def rx(theta: float, q: int) -> Gate: return Gate(GateKind.RX, (q,), (theta,))
def cx(c: int, tgt: int) -> Gate: return Gate(GateKind.CX, (c, tgt))
def cu1(lam: float, c: int, tgt: int) -> Gate: return Gate(GateKind.CU1, (c, tgt), (lam,))
def swap(a: int, b: int) -> Gate: return Gate(GateKind.SWAP, (a, b))
def ccx(c1: int, c2: int, tgt: int) -> Gate: return Gate(GateKind.CCX, (c1, c2, tgt))
def measure(q: int, clbit: int | None = None) -> Gate:
    return Gate(GateKind.MEASURE, (q,), clbit=clbit)
def barrier(*qubits: int) -> Gate: return Gate(GateKind.BARRIER, tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    """Immutable ordered gate list over ``n_qubits`` qubits."""

    n_qubits: int
    gates: tuple[Gate, ...] = ()
    name: str = ""

    def __post_init__(self):
        if self.n_qubits < 0:
            raise CircuitError("qubit count must be non-negative")
        gates = tuple(self.gates)
        object.__setattr__(self, "gates", gates)
        for g in gates:
            _check_bounds(g, self.n_qubits)
        _check_measure_order(gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def append(self, gate: Gate) -> "Circuit":
        return append(self, gate)

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_qubits, self.gates + tuple(gates), self.name)

    def with_gates(self, gates: Iterable[Gate], n_qubits: int | None = None) -> "Circuit":
        return Circuit(self.n_qubits if n_qubits is None else n_qubits, tuple(gates), self.name)

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(inverse_gate(g) for g in reversed(self.gates)),
                       self.name)

    def count(self, kind: GateKind) -> int:
        return sum(1 for g in self.gates if g.kind is kind)


def _check_bounds(gate: Gate, n_qubits: int) -> None:
    for q in gate.qubits:
        if q >= n_qubits:
            raise CircuitError(
                f"operand {q} of {gate.kind.value} out of range for {n_qubits} qubits")


def _check_measure_order(gates: Sequence[Gate]) -> None:
    measured: set[int] = set()
    for g in gates:
        if g.kind is GateKind.MEASURE:
            measured.add(g.qubits[0])
        elif g.kind is not GateKind.BARRIER and measured.intersection(g.qubits):
            raise CircuitError(f"{g.kind.value} acts on already-measured qubit(s) {g.qubits}")


def append(circuit: Circuit, gate: Gate) -> Circuit:
    """Return ``circuit`` with ``gate`` added at the end."""
    _check_bounds(gate, circuit.n_qubits)
    return Circuit(circuit.n_qubits, circuit.gates + (gate,), circuit.name)


_SELF_INVERSE = {GateKind.H, GateKind.X, GateKind.CX, GateKind.SWAP, GateKind.CCX,
                 GateKind.BARRIER}


def inverse_gate(g: Gate) -> Gate:
    k = g.kind
    if k in _SELF_INVERSE:
        return g
    if k is GateKind.T:
        return Gate(GateKind.TDG, g.qubits)
    if k is GateKind.TDG:
        return Gate(GateKind.T, g.qubits)
    if k in (GateKind.U1, GateKind.RZ, GateKind.RX, GateKind.CU1):
        return Gate(k, g.qubits, (-g.params[0],))
    if k is GateKind.U2:
        phi, lam = g.params
        return Gate(GateKind.U3, g.qubits, (-np.pi / 2, -lam, -phi))
    if k is GateKind.U3:
        theta, phi, lam = g.params
        return Gate(GateKind.U3, g.qubits, (-theta, -lam, -phi))
    raise CircuitError(f"{k.value} has no inverse")


# --------------------------------------------------------------------------
# statistics

@dataclass(frozen=True)
class GateCounts:
    one_qubit: int = 0
    cnot: int = 0
    swap: int = 0
    toffoli: int = 0
    two_qubit_total: int = 0
    depth: int = 0


def depth(circuit: Circuit) -> int:
    """Longest chain of gates that pairwise share a qubit.

    BARRIER synchronises every qubit but is not itself a layer.
    """
    level = [0] * circuit.n_qubits
    for g in circuit.gates:
        if g.kind is GateKind.BARRIER:
            top = max(level, default=0)
            level = [top] * circuit.n_qubits
            continue
        d = 1 + max(level[q] for q in g.qubits)
        for q in g.qubits:
            level[q] = d
    return max(level, default=0)


def count_gates(circuit: Circuit) -> GateCounts:
    one = cnot = n_swap = toffoli = two = 0
    for g in circuit.gates:
        k = g.kind
        if k.is_unitary_1q:
            one += 1
        elif k is GateKind.CX:
            cnot += 1
        elif k is GateKind.SWAP:
            n_swap += 1
        elif k is GateKind.CCX:
            toffoli += 1
        if k.arity == 2:
            two += 1
    return GateCounts(one, cnot, n_swap, toffoli, two, depth(circuit))


# --------------------------------------------------------------------------
# unitary simulation

MAX_UNITARY_QUBITS = 12

_S2 = 1 / np.sqrt(2)
_FIXED = {
    GateKind.H: np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * np.pi / 4)]),
    # two/three-qubit matrices index operands little-endian: operand 0 is bit 0
    GateKind.CX: np.array([[1, 0, 0, 0],
                           [0, 0, 0, 1],
                           [0, 0, 1, 0],
                           [0, 1, 0, 0]], dtype=complex),
    GateKind.SWAP: np.array([[1, 0, 0, 0],
                             [0, 0, 1, 0],
                             [0, 1, 0, 0],
                             [0, 0, 0, 1]], dtype=complex),
}
_CCX = np.eye(8, dtype=complex)
_CCX[[3, 7]] = _CCX[[7, 3]]
_FIXED[GateKind.CCX] = _CCX


def gate_matrix(g: Gate) -> np.ndarray:
    """Matrix of ``g`` over its own operands (operand 0 = least significant bit)."""
    k = g.kind
    if k in _FIXED:
        return _FIXED[k]
    p = g.params
    if k is GateKind.U1:
        return np.diag([1, np.exp(1j * p[0])])
    if k is GateKind.RZ:
        return np.diag([np.exp(-0.5j * p[0]), np.exp(0.5j * p[0])])
    if k is GateKind.RX:
        c, s = np.cos(p[0] / 2), np.sin(p[0] / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if k is GateKind.U2:
        phi, lam = p
        return _S2 * np.array([[1, -np.exp(1j * lam)],
                               [np.exp(1j * phi), np.exp(1j * (phi + lam))]])
    if k is GateKind.U3:
        theta, phi, lam = p
        c, s = np.cos(theta / 2), np.sin(theta / 2)
        return np.array([[c, -np.exp(1j * lam) * s],
                         [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]])
    if k is GateKind.CU1:
        return np.diag([1, 1, 1, np.exp(1j * p[0])])
    raise CircuitError(f"{k.value} has no matrix")


def _apply(tensor: np.ndarray, mat: np.ndarray, qubits: Sequence[int], n: int) -> np.ndarray:
    # tensor axis i holds qubit n-1-i; the trailing axis (if any) is untouched
    k = len(qubits)
    gt = mat.reshape((2,) * (2 * k))
    # gate tensor axes: outputs for operands k-1..0, then inputs k-1..0
    axes = [n - 1 - q for q in reversed(qubits)]
    out = np.tensordot(gt, tensor, axes=(list(range(k, 2 * k)), axes))
    return np.moveaxis(out, list(range(k)), axes)


def to_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary of ``circuit``; later gates multiply on the left."""
    n = circuit.n_qubits
    if n > MAX_UNITARY_QUBITS:
        raise CircuitError(f"to_unitary limited to {MAX_UNITARY_QUBITS} qubits, got {n}")
    if any(g.kind is GateKind.MEASURE for g in circuit.gates):
        raise CircuitError("cannot build a unitary for a circuit with measurements")
    dim = 1 << n
    u = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in circuit.gates:
        if g.kind is GateKind.BARRIER:
            continue
        u = _apply(u, gate_matrix(g), g.qubits, n)
    return u.reshape(dim, dim)


def apply_to_state(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to a state vector (used for wide oracle checks)."""
    n = circuit.n_qubits
    psi = np.asarray(state, dtype=complex).reshape((2,) * n)
    for g in circuit.gates:
        if g.kind in (GateKind.BARRIER, GateKind.MEASURE):
            continue
        psi = _apply(psi, gate_matrix(g), g.qubits, n)
    return psi.reshape(-1)


def basis_state(n: int, index: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=complex)
    psi[index] = 1
    return psi


def equivalent_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff ``a`` equals ``b`` times a global phase, to ``tol`` in max-norm."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise CircuitError(f"dimension mismatch {a.shape} vs {b.shape}")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0 or abs(a[idx]) == 0:
        return bool(np.max(np.abs(a - b)) < tol)
    ratio = a[idx] / b[idx]
    phase = ratio / abs(ratio)
    return bool(np.max(np.abs(a - phase * b)) < tol)


def permutation_unitary(perm: Sequence[int]) -> np.ndarray:
    """Unitary moving the state of qubit ``i`` onto qubit ``perm[i]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise CircuitError(f"not a permutation: {perm}")
    dim = 1 << n
    idx = np.arange(dim)
    dest = np.zeros(dim, dtype=np.int64)
    for i, p in enumerate(perm):
        dest |= ((idx >> i) & 1) << p
    u = np.zeros((dim, dim), dtype=complex)
    u[dest, idx] = 1
    return u
