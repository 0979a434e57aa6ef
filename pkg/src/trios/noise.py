"""ASAP scheduling and the closed-form success-rate estimate."""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .circuit import Circuit, CircuitError, GateKind


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate-type error rates, gate durations (µs) and coherence times (µs).

    ``improvement`` divides every error rate and multiplies T1/T2.
    """

    e1: float
    e2: float
    e_meas: float
    t_1q: float
    t_2q: float
    T1: float
    T2: float
    improvement: float = 1.0

    def __post_init__(self):
        for name in ("e1", "e2", "e_meas"):
            v = getattr(self, name)
            if not 0 <= v < 1:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")
        for name in ("t_1q", "t_2q", "T1", "T2", "improvement"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    def improved(self, factor: float) -> "NoiseModel":
        return replace(self, improvement=factor)

    @property
    def e1_eff(self) -> float:
        return self.e1 / self.improvement

    @property
    def e2_eff(self) -> float:
        return self.e2 / self.improvement

    @property
    def e_meas_eff(self) -> float:
        return self.e_meas / self.improvement

    @property
    def T1_eff(self) -> float:
        return self.T1 * self.improvement

    @property
    def T2_eff(self) -> float:
        return self.T2 * self.improvement


def johannesburg_noise(improvement: float = 1.0) -> NoiseModel:
    """IBM Johannesburg averages from 2020-08-19 calibration data.

    No readout error figure was published alongside these; it is taken equal
    to the CNOT error, the same order of magnitude reported for the device.
    """
    return NoiseModel(e1=0.0004, e2=0.0147, e_meas=0.0147, t_1q=0.07, t_2q=0.559,
                      T1=70.87, T2=72.72, improvement=improvement)


@dataclass(frozen=True)
class ScheduleResult:
    duration: float
    starts: tuple[float, ...]


_LOWERED = {GateKind.CX, GateKind.MEASURE, GateKind.BARRIER}


def _check_lowered(circuit: Circuit) -> None:
    for g in circuit.gates:
        if not (g.kind.is_unitary_1q or g.kind in _LOWERED):
            raise CircuitError(f"{g.kind.value} must be lowered before scheduling")


def gate_duration(kind: GateKind, nm: NoiseModel) -> float:
    if kind in (GateKind.MEASURE, GateKind.BARRIER):
        return 0.0
    return nm.t_2q if kind is GateKind.CX else nm.t_1q


def asap_schedule(circuit: Circuit, nm: NoiseModel) -> ScheduleResult:
    """Each gate starts when the last gate on any of its qubits has finished."""
    _check_lowered(circuit)
    ready = [0.0] * circuit.n_qubits
    starts = []
    end = 0.0
    for g in circuit.gates:
        qubits = range(circuit.n_qubits) if g.kind is GateKind.BARRIER else g.qubits
        s = max((ready[q] for q in qubits), default=0.0)
        f = s + gate_duration(g.kind, nm)
        for q in qubits:
            ready[q] = f
        starts.append(s)
        end = max(end, f)
    return ScheduleResult(end, tuple(starts))


def log_success(circuit: Circuit, nm: NoiseModel, model_measurement: bool = False,
                duration: float | None = None) -> float:
    """Natural log of :func:`estimate_success`; stays finite where the
    probability itself would underflow."""
    _check_lowered(circuit)
    n1 = n2 = nm_ = 0
    for g in circuit.gates:
        if g.kind.is_unitary_1q:
            n1 += 1
        elif g.kind is GateKind.CX:
            n2 += 1
        elif g.kind is GateKind.MEASURE:
            nm_ += 1
    if duration is None:
        duration = asap_schedule(circuit, nm).duration
    total = n1 * math.log1p(-nm.e1_eff) + n2 * math.log1p(-nm.e2_eff)
    if model_measurement:
        total += nm_ * math.log1p(-nm.e_meas_eff)
    return total - (duration / nm.T1_eff + duration / nm.T2_eff)


def estimate_success(circuit: Circuit, nm: NoiseModel, model_measurement: bool = False) -> float:
    """Probability that no gate error and no decoherence event occurs:
    ``(1-e1)^n1 (1-e2)^n2 exp(-(D/T1 + D/T2))`` with ``D`` the ASAP duration."""
    return math.exp(log_success(circuit, nm, model_measurement))


def success_ratio(trios: Circuit, baseline: Circuit, nm: NoiseModel,
                  model_measurement: bool = False) -> float:
    """``estimate_success(trios) / estimate_success(baseline)``, computed in log
    space; ``inf`` when the baseline probability is vanishingly small."""
    d = log_success(trios, nm, model_measurement) - log_success(baseline, nm, model_measurement)
    try:
        return math.exp(d)
    except OverflowError:
        return math.inf


def sensitivity_sweep(circuit_pair: tuple[Circuit, Circuit], nm: NoiseModel,
                      factors: Iterable[float], model_measurement: bool = False) -> list[float]:
    trios, baseline = circuit_pair
    return [success_ratio(trios, baseline, nm.improved(f), model_measurement) for f in factors]


def log_spaced(lo: float, hi: float, n: int) -> list[float]:
    if n < 2:
        return [float(lo)]
    a, b = math.log10(lo), math.log10(hi)
    return [10 ** (a + (b - a) * i / (n - 1)) for i in range(n)]
