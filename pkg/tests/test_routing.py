import random

import pytest

from trios.circuit import Circuit, GateKind, ccx, count_gates, cx, equivalent_up_to_phase, h, measure, to_unitary
from trios.decompose import lower_all_toffolis, pass1_decompose, pass2_decompose
from trios.routing import (Layout, LayoutError, greedy_layout, identity_layout, interaction_weights,
                           route_baseline, route_trios)
from trios.topology import grid, johannesburg, line, trio_cost

from oracles import JOHANNESBURG_TRIOS, expected_routed_unitary, random_circuit


def _single(c1, c2, t, g):
    circ = Circuit(g.n_physical, (ccx(c1, c2, t),))
    routed = route_trios(circ, g, identity_layout(g.n_physical))
    final = pass2_decompose(routed.circuit, g, "8cnot")
    return routed, count_gates(final).cnot


def test_far_trio_instance():
    routed, total = _single(2, 6, 19, johannesburg())
    assert routed.swap_count == 7 and total == 29


def test_adjacent_line_needs_no_swaps():
    routed, total = _single(3, 1, 2, johannesburg())
    assert routed.swap_count == 0 and total == 8


@pytest.mark.parametrize("trio,label,total", JOHANNESBURG_TRIOS, ids=lambda v: str(v))
def test_johannesburg_trio_counts(trio, label, total):
    g = johannesburg()
    assert trio_cost(g, *trio)[1] == label
    routed, got = _single(*trio, g)
    assert got == total
    assert routed.swap_count <= label - 2


def test_line_trio_against_baseline():
    g = line(5)
    routed, _ = _single(0, 2, 4, g)
    assert routed.swap_count == 2
    lowered = lower_all_toffolis(Circuit(5, (ccx(0, 2, 4),)))
    assert route_baseline(lowered, g, identity_layout(5)).swap_count > 2


def test_baseline_rejects_toffoli():
    with pytest.raises(Exception):
        route_baseline(Circuit(3, (ccx(0, 1, 2),)), line(3), identity_layout(3))


def test_swap_count_matches_emitted():
    c = random_circuit(random.Random(1), 6, 40, with_extras=False)
    r = route_trios(c, grid(2, 3), identity_layout(6))
    assert r.circuit.count(GateKind.SWAP) == r.swap_count


def test_layout_bijection():
    with pytest.raises(LayoutError):
        Layout([0, 0, 1])
    lay = identity_layout(3, 5)
    assert lay.logical_to_physical == (0, 1, 2, 3, 4)
    lay.swap_physical(0, 4)
    assert lay.physical(0) == 4 and lay.logical(0) == 4


def test_identity_layout_too_wide():
    with pytest.raises(LayoutError):
        identity_layout(6, 5)


def test_interaction_weights():
    c = Circuit(3, (cx(0, 1), cx(1, 0), ccx(0, 1, 2)))
    assert interaction_weights(c) == {(0, 1): 4, (0, 2): 2, (1, 2): 2}


@pytest.mark.parametrize("g", [line(6), grid(2, 3), johannesburg()], ids=lambda g: g.name)
def test_greedy_layout_is_bijective(g):
    c = random_circuit(random.Random(4), 6, 30)
    lay = greedy_layout(pass1_decompose(c), g)
    assert sorted(lay.logical_to_physical) == list(range(g.n_physical))


def test_greedy_beats_identity_on_scrambled_chain():
    c = Circuit(4, (cx(0, 3), cx(0, 3), cx(3, 1), cx(1, 2)))
    g = line(4)
    lay = greedy_layout(c, g)
    # the heaviest pair lands on coupled qubits
    assert g.are_coupled(lay.physical(0), lay.physical(3))

    def cost(layout):
        return sum(w * g.distance(layout.physical(a), layout.physical(b))
                   for (a, b), w in interaction_weights(c).items())
    assert cost(lay) < cost(identity_layout(4))


def test_greedy_without_interactions_is_identity():
    assert greedy_layout(Circuit(3, (h(0),)), line(4)).logical_to_physical == (0, 1, 2, 3)


def test_measure_follows_its_qubit():
    c = Circuit(5, (cx(0, 4), measure(0)))
    r = route_baseline(c, line(5), identity_layout(5))
    m = r.circuit.gates[-1]
    assert m.kind is GateKind.MEASURE and m.qubits == (r.final_layout.physical(0),) and m.clbit == 0


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("router", ["trios", "baseline"])
@pytest.mark.parametrize("g", [line(5), grid(2, 3)], ids=lambda g: g.name)
def test_routed_semantics(seed, router, g):
    c = pass1_decompose(random_circuit(random.Random(seed), 5, 20))
    init = identity_layout(c.n_qubits, g.n_physical)
    if router == "trios":
        r = route_trios(c, g, init)
    else:
        r = route_baseline(lower_all_toffolis(c), g, init)
    final = pass2_decompose(r.circuit, g)
    want = expected_routed_unitary(c, g.n_physical, r.initial_layout, r.final_layout)
    assert equivalent_up_to_phase(to_unitary(final), want, tol=1e-8)


@pytest.mark.parametrize("seed", range(3))
def test_weighted_routing_semantics(seed):
    rng = random.Random(seed)
    g = grid(2, 3)
    g = g.with_weights({e: rng.uniform(0.2, 3.0) for e in g.edges})
    c = pass1_decompose(random_circuit(rng, 6, 20))
    r = route_trios(c, g, greedy_layout(c, g), weighted=True)
    final = pass2_decompose(r.circuit, g)
    want = expected_routed_unitary(c, 6, r.initial_layout, r.final_layout)
    assert equivalent_up_to_phase(to_unitary(final), want, tol=1e-8)
