import cmath
import math
import random

import numpy as np
import pytest

from trios.circuit import (Circuit, CircuitError, Gate, GateKind, append, apply_to_state, barrier,
                           basis_state, ccx, count_gates, cu1, cx, depth, equivalent_up_to_phase,
                           gate_matrix, h, inverse_gate, measure, permutation_unitary, rx, rz, swap,
                           t, tdg, to_unitary, u1, u2, u3, x)

from oracles import CCX_MATRIX, SWAP_MATRIX, random_circuit


def test_append_returns_new_circuit():
    c0 = Circuit(3)
    c1 = append(c0, ccx(0, 1, 2))
    assert len(c0) == 0 and len(c1) == 1
    assert c1.gates[0] == ccx(0, 1, 2)


@pytest.mark.parametrize("build", [
    lambda: ccx(0, 0, 2),
    lambda: cx(1, 1),
    lambda: Gate(GateKind.CX, (0,)),
    lambda: Gate(GateKind.U1, (0,), ()),
    lambda: Gate(GateKind.H, (-1,)),
    lambda: Gate(GateKind.H, (0,), clbit=1),
    lambda: barrier(),
])
def test_malformed_gates_rejected(build):
    with pytest.raises(CircuitError):
        build()


def test_operand_out_of_range():
    with pytest.raises(CircuitError):
        append(Circuit(4), cx(5, 1))


def test_gate_after_measure_rejected():
    with pytest.raises(CircuitError):
        Circuit(2, (measure(0), h(0)))
    # other qubits and barriers are fine
    Circuit(2, (measure(0), h(1), barrier(0, 1), measure(1)))


def test_measure_clbit_normalised():
    assert measure(3, 3) == measure(3)
    assert measure(3, 1).clbit == 1
    # relabelling a measure keeps the classical bit it writes
    assert measure(0).remap({0: 4}).clbit == 0


def test_counts_empty():
    c = count_gates(Circuit(3))
    assert (c.one_qubit, c.cnot, c.swap, c.toffoli, c.two_qubit_total, c.depth) == (0, 0, 0, 0, 0, 0)


def test_counts_and_depth_small():
    c = Circuit(4, (cx(0, 1), cx(2, 3), cx(1, 2)))
    counts = count_gates(c)
    assert counts.cnot == 3 and counts.depth == 2


def test_two_qubit_total_counts_instructions():
    c = Circuit(3, (cx(0, 1), swap(1, 2), cu1(0.3, 0, 2), ccx(0, 1, 2), h(0)))
    counts = count_gates(c)
    assert counts.cnot == 1 and counts.swap == 1 and counts.toffoli == 1
    assert counts.two_qubit_total == 3
    assert counts.one_qubit == 1


def test_barrier_synchronises_depth():
    c = Circuit(3, (h(0), h(0), barrier(0, 1, 2), h(2)))
    assert depth(c) == 3
    assert depth(Circuit(3, (h(0), h(0), h(2)))) == 2


@pytest.mark.parametrize("seed", range(5))
def test_counts_invariant_under_relabelling(seed):
    rng = random.Random(seed)
    c = random_circuit(rng, 5, 30)
    perm = list(range(5))
    rng.shuffle(perm)
    relabelled = c.with_gates([g.remap(perm) for g in c.gates])
    assert count_gates(c) == count_gates(relabelled)


@pytest.mark.parametrize("seed", range(5))
def test_depth_of_reverse(seed):
    c = random_circuit(random.Random(seed), 5, 25)
    rev = c.with_gates(list(reversed(c.gates)))
    assert depth(c) == depth(rev) <= len(c)


def test_hadamard_matrix():
    u = to_unitary(Circuit(1, (h(0),)))
    assert np.allclose(u, np.array([[1, 1], [1, -1]]) / math.sqrt(2), atol=1e-12)


def test_ccx_matrix_little_endian():
    assert np.array_equal(to_unitary(Circuit(3, (ccx(0, 1, 2),))), CCX_MATRIX)


def test_cx_little_endian():
    # control 0 is the least significant bit: |01> (index 1) -> |11> (index 3)
    u = to_unitary(Circuit(2, (cx(0, 1),)))
    assert u[3, 1] == 1 and u[1, 3] == 1 and u[0, 0] == 1 and u[2, 2] == 1


def test_swap_matrix():
    assert np.allclose(to_unitary(Circuit(2, (swap(0, 1),))), SWAP_MATRIX, atol=1e-12)


@pytest.mark.parametrize("g", [
    h(0), x(0), t(0), tdg(0), u1(0.3, 0), u2(0.2, 1.1, 0), u3(0.4, 0.5, 0.6, 0),
    rz(0.7, 0), rx(1.3, 0), cx(0, 1), cu1(0.9, 0, 1), swap(0, 1), ccx(0, 1, 2),
])
def test_gate_matrices_unitary(g):
    m = gate_matrix(g)
    assert np.allclose(m @ m.conj().T, np.eye(len(m)), atol=1e-12)


@pytest.mark.parametrize("g", [u2(0.2, 1.1, 0), u3(0.4, 0.5, 0.6, 0), rz(0.7, 0), rx(1.3, 0),
                               cu1(0.9, 0, 1), t(0), ccx(0, 1, 2)])
def test_inverse_gate(g):
    n = 3
    c = Circuit(n, (g, inverse_gate(g)))
    assert equivalent_up_to_phase(to_unitary(c), np.eye(2 ** n))


@pytest.mark.parametrize("seed", range(4))
def test_concat_is_matrix_product(seed):
    rng = random.Random(seed)
    a, b = random_circuit(rng, 4, 12), random_circuit(rng, 4, 12)
    ab = a.extend(b.gates)
    assert np.allclose(to_unitary(ab), to_unitary(b) @ to_unitary(a), atol=1e-10)


@pytest.mark.parametrize("seed", range(3))
def test_circuit_inverse(seed):
    c = random_circuit(random.Random(seed), 4, 15)
    assert np.allclose(to_unitary(c.inverse()) @ to_unitary(c), np.eye(16), atol=1e-10)


def test_to_unitary_limits():
    with pytest.raises(CircuitError):
        to_unitary(Circuit(13))
    with pytest.raises(CircuitError):
        to_unitary(Circuit(1, (measure(0),)))
    # barriers are ignored
    assert np.allclose(to_unitary(Circuit(2, (barrier(0, 1),))), np.eye(4))


def test_equivalent_up_to_phase():
    u = to_unitary(Circuit(2, (h(0), cx(0, 1))))
    assert equivalent_up_to_phase(u, u * cmath.exp(1j * math.pi / 4))
    assert not equivalent_up_to_phase(np.eye(2), np.array([[0, 1], [1, 0]]))
    with pytest.raises(CircuitError):
        equivalent_up_to_phase(np.eye(2), np.eye(4))


def test_apply_to_state_matches_unitary():
    c = Circuit(3, (h(0), cx(0, 1), ccx(0, 1, 2)))
    psi = apply_to_state(c, basis_state(3, 0))
    assert np.allclose(psi, to_unitary(c)[:, 0])
    assert abs(psi[0]) ** 2 == pytest.approx(0.5) and abs(psi[7]) ** 2 == pytest.approx(0.5)


def test_permutation_unitary_moves_qubits():
    # qubit 0 -> position 2, 1 -> 0, 2 -> 1: basis |001> (q0 set) becomes |100>
    p = permutation_unitary([2, 0, 1])
    assert p[4, 1] == 1
