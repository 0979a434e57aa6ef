import math

import numpy as np
import pytest

from trios.benchmarks import (BENCHMARK_NAMES, BENCHMARKS, TOFFOLI_BENCHMARKS, bv, cnots_after_8cnot,
                              cnx_dirty, cnx_halfborrowed, cnx_inplace, cnx_logancilla, cuccaro_adder,
                              generate, grovers, incrementer_borrowedbit, mcx, qaoa_complete, qft_adder,
                              table1_suite, takahashi_adder)
from trios.circuit import (Circuit, CircuitError, GateKind, apply_to_state, basis_state, count_gates,
                           depth, to_unitary)
from trios.decompose import pass1_decompose

from oracles import classical_output, encode

# rows whose counts are matched by the generators in this package
MATCHED = ["cnx_dirty", "cnx_halfborrowed", "cnx_logancilla", "cuccaro_adder", "takahashi_adder",
           "grovers", "qft_adder", "bv", "qaoa_complete"]


def _unitary(c):
    return to_unitary(pass1_decompose(c))


def _check_classical(c, fn, inputs):
    """Every listed input basis index maps to ``fn(index)`` up to phase."""
    u = _unitary(c)
    for i in inputs:
        assert classical_output(u, i) == fn(i), f"input {i:0{c.n_qubits}b}"


def _mcx_fn(controls, target):
    mask = sum(1 << q for q in controls)
    return lambda i: i ^ (1 << target) if i & mask == mask else i


def test_suite_shape():
    suite = table1_suite()
    assert len(suite) == 11 and [s.name for s, _ in suite] == list(BENCHMARK_NAMES)
    assert all(c.name == s.name for s, c in suite)
    assert len(TOFFOLI_BENCHMARKS) == 8


@pytest.mark.parametrize("name", BENCHMARK_NAMES)
def test_qubit_counts(name):
    spec, _ = BENCHMARKS[name]
    assert generate(name).n_qubits == spec.n_qubits


@pytest.mark.parametrize("name", MATCHED)
def test_counts_match_table(name):
    spec, _ = BENCHMARKS[name]
    c = generate(name)
    assert count_gates(c).toffoli == spec.expected_toffolis
    assert cnots_after_8cnot(c) == spec.expected_cnots_after_8


@pytest.mark.parametrize("name", BENCHMARK_NAMES)
def test_generators_emit_pass1_ir(name):
    kinds = {g.kind for g in generate(name).gates}
    assert kinds <= {k for k in GateKind if k.is_unitary_1q} | {GateKind.CX, GateKind.CCX, GateKind.CU1}


def test_unknown_name():
    with pytest.raises(KeyError):
        generate("shor")


def test_width_parameter():
    assert generate("bv", 5).n_qubits == 5
    assert generate("cnx_dirty", 3).n_qubits == 5
    with pytest.raises(CircuitError):
        cnx_dirty(2)


@pytest.mark.parametrize("n", [2, 5, 20])
def test_bv_closed_form(n):
    c = bv(n)
    counts = count_gates(c)
    assert counts.cnot == n - 1 and counts.toffoli == 0
    # X and H on the ancilla, n - 1 serial CNOTs on it, one closing H
    assert depth(c) == n + 2


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bv_recovers_secret(n):
    psi = apply_to_state(bv(n), basis_state(n, 0))
    probs = np.abs(psi) ** 2
    data_ones = sum(1 << q for q in range(n - 1))
    assert probs[data_ones] + probs[data_ones | 1 << (n - 1)] == pytest.approx(1.0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_qaoa_counts(n):
    assert count_gates(qaoa_complete(n)).cnot == n * (n - 1)


@pytest.mark.parametrize("gen,n", [(cnx_dirty, 3), (cnx_dirty, 4), (cnx_halfborrowed, 3), (cnx_halfborrowed, 4)])
def test_dirty_cnx_any_ancilla_state(gen, n):
    c = gen(n)
    target = c.n_qubits - 1
    controls = sorted(_controls_of(c, n))
    assert len(controls) == n
    _check_classical(c, _mcx_fn(controls, target), range(2 ** c.n_qubits))


def _controls_of(c, n):
    if c.name.startswith("cnx_dirty"):
        return set(range(n))
    order = [0, 1]
    for i in range(2, n):
        order += ["a", i]
    return {idx for idx, key in enumerate(order) if key != "a"}


@pytest.mark.parametrize("n", [3, 4])
def test_logancilla_clean_subspace(n):
    c = cnx_logancilla(n)
    target = 2 * n - 2
    inputs = [i | (t << target) for i in range(2 ** n) for t in (0, 1)]
    _check_classical(c, _mcx_fn(range(n), target), inputs)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_inplace_cnx(n):
    _check_classical(cnx_inplace(n), _mcx_fn(range(n), n), range(2 ** (n + 1)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_incrementer_any_borrowed_state(n):
    c = incrementer_borrowedbit(n)
    mask = (1 << n) - 1

    def fn(i):
        return (i & ~mask) | ((i + 1) & mask)
    _check_classical(c, fn, range(2 ** (n + 1)))


@pytest.mark.parametrize("m,dirty", [(3, 1), (4, 2), (4, 1), (5, 1)])
def test_mcx_split_with_few_dirty_bits(m, dirty):
    n = m + 1 + dirty
    gates = mcx(range(m), m, range(m + 1, n))
    _check_classical(Circuit(n, tuple(gates)), _mcx_fn(range(m), m), range(2 ** n))


def test_cuccaro_three_bits():
    n = 3
    c = cuccaro_adder(n)
    a, b = list(range(1, n + 1)), list(range(n + 1, 2 * n + 1))
    u = _unitary(c)
    for av in range(8):
        for bv_ in range(8):
            s = av + bv_
            out = classical_output(u, encode([(av, a), (bv_, b)]))
            assert out == encode([(av, a), (s & 7, b), (s >> 3, [2 * n + 1])])


@pytest.mark.parametrize("gen", [takahashi_adder, qft_adder])
def test_modular_adders_three_bits(gen):
    c = gen(3)
    u = _unitary(c)
    a, b = [0, 1, 2], [3, 4, 5]
    for av in range(8):
        for bv_ in range(8):
            out = classical_output(u, encode([(av, a), (bv_, b)]))
            assert out == encode([(av, a), ((av + bv_) & 7, b)])


def test_qft_adder_gate_total():
    n = 8
    assert qft_adder(n).count(GateKind.CU1) == n * (n - 1) // 2 * 2 + n * (n + 1) // 2 == 92


@pytest.mark.parametrize("k", range(7))
def test_grover_amplitude(k):
    n = 3
    c = grovers(n, iterations=k)
    psi = apply_to_state(pass1_decompose(c), basis_state(c.n_qubits, 0))
    probs = np.abs(psi) ** 2
    ones = (1 << n) - 1
    p = sum(probs[i] for i in range(len(probs)) if i & ones == ones)
    theta = math.asin(1 / math.sqrt(2 ** n))
    assert p == pytest.approx(math.sin((2 * k + 1) * theta) ** 2, abs=1e-9)


def test_grovers_preset_toffolis():
    assert count_gates(grovers()).toffoli == 6 * 2 * 7 == 84
