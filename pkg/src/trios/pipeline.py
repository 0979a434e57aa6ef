"""End-to-end compilation: the decompose-first baseline and the Trios flow."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Literal

from .circuit import Circuit, CircuitError, GateKind, count_gates
from .decompose import ToffoliPolicy, lower_all_toffolis, pass1_decompose, pass2_decompose
from .noise import NoiseModel, asap_schedule, johannesburg_noise, log_success
from .routing import (Layout, LayoutError, RoutedResult, greedy_layout, identity_layout,
                      route_baseline, route_trios)
from .topology import CouplingGraph

Router = Literal["trios", "baseline"]
LayoutKind = Literal["identity", "greedy"]
ROUTERS = ("trios", "baseline")
LAYOUTS = ("identity", "greedy")


@dataclass(frozen=True)
class ReportRow:
    benchmark: str
    topology: str
    router: str
    layout: str
    n_qubits: int
    toffoli_in: int
    cnot_in: int
    swaps_added: int
    two_qubit_total: int
    depth: int
    duration_us: float
    est_success: float

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def cells(self) -> list[str]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            out.append(format(v, ".10g") if isinstance(v, float) else str(v))
        return out


@dataclass(frozen=True)
class CompileResult:
    circuit: Circuit          # final physical circuit: 1q, CX, measure, barrier
    routed: RoutedResult
    log_success: float
    row: ReportRow


def _initial_layout(kind: LayoutKind, circuit: Circuit, g: CouplingGraph) -> Layout:
    if kind == "identity":
        return identity_layout(circuit.n_qubits, g.n_physical)
    if kind == "greedy":
        return greedy_layout(circuit, g)
    raise ValueError(f"unknown layout {kind!r}")


def compile_circuit(circuit: Circuit, g: CouplingGraph, router: Router = "trios",
                    layout: LayoutKind = "identity", toffoli: ToffoliPolicy = "auto",
                    noise_aware: bool = False, nm: NoiseModel | None = None,
                    model_measurement: bool = False, name: str | None = None) -> CompileResult:
    """Run pass 1, layout, routing, pass 2, scheduling and the success estimate.

    The baseline lowers every Toffoli before routing, with the 6-CNOT form
    unless ``toffoli="8cnot"``. Trios routes Toffolis whole and lets pass 2
    choose. ``noise_aware`` routes on edge weights: the graph's own if it
    has them, otherwise ``-log(1 - e2)`` from ``nm``.
    """
    if circuit.n_qubits > g.n_physical:
        raise LayoutError(f"circuit needs {circuit.n_qubits} qubits, "
                          f"{g.name or 'device'} has {g.n_physical}")
    nm = nm or johannesburg_noise(20.0)
    if noise_aware and g.weights is None:
        g = g.with_error_rates(nm.e2)
    p1 = pass1_decompose(circuit)
    init = _initial_layout(layout, p1, g)
    if router == "trios":
        routed = route_trios(p1, g, init, weighted=noise_aware, policy=toffoli)
    elif router == "baseline":
        lowered = lower_all_toffolis(p1, "8cnot" if toffoli == "8cnot" else "6cnot")
        routed = route_baseline(lowered, g, init, weighted=noise_aware)
    else:
        raise ValueError(f"unknown router {router!r}")
    final = pass2_decompose(routed.circuit, g, toffoli)
    _validate(final, routed, g)
    sched = asap_schedule(final, nm)
    ls = log_success(final, nm, model_measurement, duration=sched.duration)
    counts_in = count_gates(p1)
    counts_out = count_gates(final)
    row = ReportRow(
        benchmark=name or circuit.name or "circuit",
        topology=g.name or "custom",
        router=router,
        layout=layout,
        n_qubits=circuit.n_qubits,
        toffoli_in=counts_in.toffoli,
        cnot_in=counts_in.cnot,
        swaps_added=routed.swap_count,
        two_qubit_total=counts_out.cnot,
        depth=counts_out.depth,
        duration_us=sched.duration,
        est_success=math.exp(ls),
    )
    return CompileResult(final, routed, ls, row)


def _validate(final: Circuit, routed: RoutedResult, g: CouplingGraph) -> None:
    n_swaps = routed.circuit.count(GateKind.SWAP)
    if n_swaps != routed.swap_count:
        raise CircuitError(f"router reported {routed.swap_count} SWAPs, emitted {n_swaps}")
    for gate in final.gates:
        if gate.kind is GateKind.CX:
            if not g.are_coupled(*gate.qubits):
                raise CircuitError(f"CX on uncoupled qubits {gate.qubits}")
        elif not (gate.kind.is_unitary_1q or gate.kind in (GateKind.MEASURE, GateKind.BARRIER)):
            raise CircuitError(f"{gate.kind.value} left after lowering")


def geomean(values: list[float]) -> float:
    if not values:
        return math.nan
    if any(v <= 0 for v in values):
        return 0.0
    return math.exp(sum(math.log(v) for v in values) / len(values))
