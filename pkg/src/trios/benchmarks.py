"""Generators for the eleven-circuit benchmark suite.

Each generator takes a width parameter so small instances can be checked
against a simulator; ``BENCHMARKS`` pins the suite presets. Circuits use
1q gates, CX and CCX, except ``qft_adder`` (CU1) and ``cnx_inplace`` (CU1
for controlled roots of X), which pass 1 lowers.

Register layout is blocked (one contiguous index range per register) unless
a docstring says otherwise. That layout matters because the default initial
mapping is the identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .circuit import (Circuit, CircuitError, Gate, GateKind, ccx, cu1, cx, h, rx, rz, x)


# --------------------------------------------------------------------------
# reusable reversible blocks

def mcx_ladder(controls: Sequence[int], target: int, dirty: Sequence[int]) -> list[Gate]:
    """C^mX with ``m - 2`` borrowed bits in any state: ``4(m - 2)`` Toffolis.

    A V-shaped Toffoli ladder toggles the target by ``AND(controls)`` XOR a
    garbage term; running the inner half twice cancels the garbage.
    """
    c = list(controls)
    m = len(c)
    if m == 0:
        return [x(target)]
    if m == 1:
        return [cx(c[0], target)]
    if m == 2:
        return [ccx(c[0], c[1], target)]
    if len(dirty) < m - 2:
        raise CircuitError(f"C^{m}X ladder needs {m - 2} borrowed bits, got {len(dirty)}")
    a = list(dirty[:m - 2])
    inner = [ccx(c[i + 2], a[i], a[i + 1]) for i in range(m - 4, -1, -1)]
    top = [ccx(c[m - 1], a[m - 3], target)] + inner
    mid = [ccx(c[0], c[1], a[0])]
    return top + mid + top[::-1] + inner + mid + inner[::-1]


def mcx(controls: Sequence[int], target: int, dirty: Sequence[int]) -> list[Gate]:
    """C^mX from Toffolis, borrowing bits from ``dirty`` and restoring them.

    Uses the ladder when ``m - 2`` bits are available. With fewer (but at
    least one) the controls are split in two, the first half is ANDed into
    a borrowed bit and the second half plus that bit drives the target; each
    half runs twice so the borrowed bit's contents cancel.
    """
    c = list(controls)
    m = len(c)
    if m <= 2 or len(dirty) >= m - 2:
        return mcx_ladder(c, target, dirty)
    if not dirty:
        raise CircuitError(f"C^{m}X on {m + 1} wires needs a borrowed bit")
    b, rest = dirty[0], list(dirty[1:])
    k1 = (m + 1) // 2
    c1, c2 = c[:k1], c[k1:]
    first = mcx(c1, b, c2 + [target] + rest)
    second = mcx(c2 + [b], target, c1 + rest)
    return second + first + second + first


def ttk_adder(a: Sequence[int], b: Sequence[int]) -> list[Gate]:
    """``b += a (mod 2^n)`` in place with no ancilla: ``2n - 2`` Toffolis, ``5n - 6`` CX."""
    a, b = list(a), list(b)
    n = len(a)
    if len(b) != n:
        raise CircuitError("adder registers must have equal width")
    g: list[Gate] = []
    g += [cx(a[i], b[i]) for i in range(1, n)]
    g += [cx(a[i], a[i + 1]) for i in reversed(range(1, n - 1))]
    g += [ccx(b[i], a[i], a[i + 1]) for i in range(n - 1)]
    for i in reversed(range(1, n)):
        g += [cx(a[i], b[i]), ccx(b[i - 1], a[i - 1], a[i])]
    g += [cx(a[i], a[i + 1]) for i in range(1, n - 1)]
    g += [cx(a[i], b[i]) for i in range(n)]
    return g


def _inverse(gates: Sequence[Gate]) -> list[Gate]:
    # every gate used in the reversible blocks is self-inverse
    return list(reversed(gates))


def increment(v: Sequence[int], dirty: Sequence[int] = ()) -> list[Gate]:
    """``v += 1 (mod 2^n)``, ``v[0]`` least significant, borrowing ``dirty``.

    Up to three bits use the direct carry cascade. With ``n`` borrowed bits
    ``g`` it computes ``v -= g; g = ~g; v -= g; g = ~g``. With fewer it
    splits ``v`` into low and high halves and uses a single borrowed bit.
    """
    v, dirty = list(v), list(dirty)
    n = len(v)
    if n == 0:
        return []
    if n <= 3:
        g: list[Gate] = []
        for k in range(n - 1, 0, -1):
            g += mcx_ladder(v[:k], v[k], [])
        return g + [x(v[0])]
    if len(dirty) >= n:
        gr = dirty[:n]
        sub = _inverse(ttk_adder(gr, v))
        flip = [x(q) for q in gr]
        return sub + flip + sub + flip
    if not dirty:
        raise CircuitError(f"incrementing {n} bits in place needs a borrowed bit")
    return _increment_one_borrowed(v, dirty[0], dirty[1:])


def _increment_one_borrowed(v: list[int], b: int, rest: list[int]) -> list[Gate]:
    # b-controlled increment of the high half is an increment of (b, high)
    # followed by NOT b; doing it and the carry toggle twice makes b's
    # initial value cancel
    k = (len(v) + 1) // 2
    lo, hi = v[:k], v[k:]
    cinc = increment([b] + hi, lo + rest) + [x(b)]
    fan = [cx(b, q) for q in hi]
    carry = mcx(lo, b, hi + rest)
    return cinc + fan + carry + cinc + carry + fan + increment(lo, hi + [b] + rest)


def _controlled_xpow(controls: Sequence[int], target: int, k: int) -> list[Gate]:
    """``X^(1/2^k)`` on ``target`` controlled by every qubit in ``controls``.

    Roots of X are written as ``H U1(pi/2^k) H``. For two or more controls
    the last control is toggled by the others (borrowing the target) and
    its root is cancelled, leaving the remaining controls to apply a finer
    root.
    """
    c = list(controls)
    lam = math.pi / 2 ** k
    if not c:
        return [x(target)] if k == 0 else [h(target), Gate(GateKind.U1, (target,), (lam,)), h(target)]
    if len(c) == 1:
        return [cx(c[0], target)] if k == 0 else [h(target), cu1(lam, c[0], target), h(target)]
    if len(c) == 2 and k == 0:
        return [ccx(c[0], c[1], target)]
    q, rest = c[-1], c[:-1]
    half = math.pi / 2 ** (k + 1)
    toggle = mcx(rest, q, [target])
    return ([h(target), cu1(half, q, target), h(target)] + toggle
            + [h(target), cu1(-half, q, target), h(target)] + toggle
            + _controlled_xpow(rest, target, k + 1))


# --------------------------------------------------------------------------
# generators

def cnx_dirty(n: int = 6) -> Circuit:
    """C^nX with ``n - 2`` borrowed (dirty) ancillas via the Toffoli ladder.

    Qubits: controls ``0..n-1``, ancillas ``n..2n-3``, target ``2n-2``.
    """
    _need(n >= 3, "cnx_dirty needs n >= 3 controls")
    c = list(range(n))
    a = list(range(n, 2 * n - 2))
    return Circuit(2 * n - 1, tuple(mcx_ladder(c, 2 * n - 2, a)), f"cnx_dirty_{n}")


def cnx_halfborrowed(n: int = 10) -> Circuit:
    """Same ladder as :func:`cnx_dirty`, with roughly half the register
    borrowed and each borrowed bit sitting between the controls it chains:
    ``c0 c1 a0 c2 a1 c3 ... a(n-3) c(n-1) target``."""
    _need(n >= 3, "cnx_halfborrowed needs n >= 3 controls")
    order = [0, 1]
    for i in range(2, n):
        order += [("a", i - 2), i]
    pos = {key: idx for idx, key in enumerate(order)}
    c = [pos[i] for i in range(n)]
    a = [pos[("a", j)] for j in range(n - 2)]
    t = len(order)
    return Circuit(t + 1, tuple(mcx_ladder(c, t, a)), f"cnx_halfborrowed_{n}")


def logancilla_gates(controls: Sequence[int], target: int,
                     ancillas: Sequence[int]) -> list[Gate]:
    """Log-depth C^nX with ``n - 2`` clean ancillas: a balanced AND tree is
    computed, applied to the target and uncomputed (``2(n - 2) + 1`` Toffolis)."""
    queue = list(controls)
    if len(queue) <= 2:
        return mcx_ladder(queue, target, [])
    if len(ancillas) < len(queue) - 2:
        raise CircuitError("log-depth C^nX needs n - 2 clean ancillas")
    free = list(ancillas)
    compute: list[Gate] = []
    while len(queue) > 2:
        a, b = queue.pop(0), queue.pop(0)
        anc = free.pop(0)
        compute.append(ccx(a, b, anc))
        queue.append(anc)
    return compute + [ccx(queue[0], queue[1], target)] + compute[::-1]


def cnx_logancilla(n: int = 10) -> Circuit:
    """Qubits: controls ``0..n-1``, clean ancillas ``n..2n-3``, target ``2n-2``."""
    _need(n >= 3, "cnx_logancilla needs n >= 3 controls")
    gates = logancilla_gates(range(n), 2 * n - 2, range(n, 2 * n - 2))
    return Circuit(2 * n - 1, tuple(gates), f"cnx_logancilla_{n}")


def cnx_inplace(n: int = 3) -> Circuit:
    """C^nX with no ancilla at all: controls ``0..n-1``, target ``n``.

    Toffoli, CNOT and NOT on four or more wires only produce even
    permutations while C^nX is odd, so controlled roots of X are required;
    see :func:`_controlled_xpow`.
    """
    _need(n >= 1, "cnx_inplace needs at least one control")
    return Circuit(n + 1, tuple(_controlled_xpow(range(n), n, 0)), f"cnx_inplace_{n}")


def incrementer_borrowedbit(n: int = 4) -> Circuit:
    """``v += 1`` on ``n`` bits (qubits ``0..n-1``) with one borrowed bit (qubit ``n``)."""
    _need(n >= 1, "incrementer needs at least one bit")
    return Circuit(n + 1, tuple(increment(range(n), [n])), f"incrementer_borrowedbit_{n}")


def cuccaro_adder(n: int = 9) -> Circuit:
    """Ripple-carry adder ``b += a`` with carry out, n MAJ and n UMA blocks.

    Qubits: carry-in ancilla ``0``, ``a`` at ``1..n``, ``b`` at ``n+1..2n``,
    carry out ``2n+1``. UMA is the three-CNOT variant.
    """
    _need(n >= 1, "cuccaro_adder needs n >= 1")
    a = [1 + i for i in range(n)]
    b = [1 + n + i for i in range(n)]
    cin, z = 0, 2 * n + 1
    g: list[Gate] = []
    carries = [cin] + a[:-1]
    for i in range(n):
        c, bi, ai = carries[i], b[i], a[i]
        g += [cx(ai, bi), cx(ai, c), ccx(c, bi, ai)]
    g.append(cx(a[-1], z))
    for i in reversed(range(n)):
        c, bi, ai = carries[i], b[i], a[i]
        g += [x(bi), cx(c, bi), ccx(c, bi, ai), x(bi), cx(ai, c), cx(ai, bi)]
    return Circuit(2 * n + 2, tuple(g), f"cuccaro_adder_{n}")


def takahashi_adder(n: int = 10) -> Circuit:
    """``b += a (mod 2^n)`` with no ancilla; ``a`` at ``0..n-1``, ``b`` at ``n..2n-1``."""
    _need(n >= 1, "takahashi_adder needs n >= 1")
    gates = ttk_adder(range(n), range(n, 2 * n))
    return Circuit(2 * n, tuple(gates), f"takahashi_adder_{n}")


def qft_adder(n: int = 8) -> Circuit:
    """Fourier-basis adder ``b += a (mod 2^n)``: QFT on ``b`` (no final
    swaps), controlled phases from ``a``, inverse QFT.

    ``a`` at ``0..n-1``, ``b`` at ``n..2n-1``; ``n(n-1)/2 + n(n+1)/2 +
    n(n-1)/2`` CU1 gates in total.
    """
    _need(n >= 1, "qft_adder needs n >= 1")
    a = list(range(n))
    b = list(range(n, 2 * n))
    qft: list[Gate] = []
    for j in reversed(range(n)):
        qft.append(h(b[j]))
        for k in reversed(range(j)):
            qft.append(cu1(math.pi / 2 ** (j - k), b[k], b[j]))
    add = [cu1(math.pi / 2 ** (j - k), a[k], b[j]) for j in range(n) for k in range(j + 1)]
    iqft = [g if g.kind is GateKind.H else cu1(-g.params[0], *g.qubits) for g in reversed(qft)]
    return Circuit(2 * n, tuple(qft + add + iqft), f"qft_adder_{n}")


def grovers(n: int = 5, iterations: int = 6) -> Circuit:
    """Grover search for the all-ones string over ``n`` qubits.

    Qubits: search register ``0..n-1``, clean ancillas ``n..2n-3``, and a
    phase-kickback qubit ``2n-2`` prepared in ``|->``. Oracle and diffusion
    each use one log-depth C^nX (``2n - 3`` Toffolis).
    """
    _need(n >= 3, "grovers needs n >= 3")
    s = list(range(n))
    anc = list(range(n, 2 * n - 2))
    kick = 2 * n - 2
    flip = logancilla_gates(s, kick, anc)
    g: list[Gate] = [x(kick), h(kick)] + [h(q) for q in s]
    for _ in range(iterations):
        g += flip
        g += [h(q) for q in s] + [x(q) for q in s]
        g += flip
        g += [x(q) for q in s] + [h(q) for q in s]
    return Circuit(2 * n - 1, tuple(g), f"grovers_{n}")


def bv(n: int = 20) -> Circuit:
    """Bernstein-Vazirani for the all-ones secret: ``n - 1`` data qubits,
    the last qubit is the ``|->`` ancilla."""
    _need(n >= 2, "bv needs n >= 2")
    anc = n - 1
    g: list[Gate] = [x(anc)] + [h(q) for q in range(n)]
    g += [cx(q, anc) for q in range(n - 1)]
    g += [h(q) for q in range(n - 1)]
    return Circuit(n, tuple(g), f"bv_{n}")


def qaoa_complete(n: int = 10, gamma: float = 0.5, beta: float = 0.25) -> Circuit:
    """One QAOA MaxCut layer on the complete graph ``K_n``; each ZZ term is
    ``CX RZ CX``."""
    _need(n >= 2, "qaoa_complete needs n >= 2")
    g: list[Gate] = [h(q) for q in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            g += [cx(i, j), rz(2 * gamma, j), cx(i, j)]
    g += [rx(2 * beta, q) for q in range(n)]
    return Circuit(n, tuple(g), f"qaoa_complete_{n}")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise CircuitError(msg)


# --------------------------------------------------------------------------
# suite

@dataclass(frozen=True)
class BenchmarkSpec:
    """Expected size of a preset: qubits, Toffolis, and CNOTs once every
    Toffoli is expanded with the 8-CNOT form (no routing)."""

    name: str
    n_qubits: int
    expected_toffolis: int
    expected_cnots_after_8: int


BENCHMARKS: dict[str, tuple[BenchmarkSpec, Callable[[], Circuit]]] = {
    spec.name: (spec, gen) for spec, gen in [
        (BenchmarkSpec("cnx_dirty", 11, 16, 128), cnx_dirty),
        (BenchmarkSpec("cnx_halfborrowed", 19, 32, 256), cnx_halfborrowed),
        (BenchmarkSpec("cnx_logancilla", 19, 17, 136), cnx_logancilla),
        (BenchmarkSpec("cnx_inplace", 4, 54, 490), cnx_inplace),
        (BenchmarkSpec("cuccaro_adder", 20, 18, 190), cuccaro_adder),
        (BenchmarkSpec("takahashi_adder", 20, 18, 188), takahashi_adder),
        (BenchmarkSpec("incrementer_borrowedbit", 5, 50, 448), incrementer_borrowedbit),
        (BenchmarkSpec("grovers", 9, 84, 672), grovers),
        (BenchmarkSpec("qft_adder", 16, 0, 92), qft_adder),
        (BenchmarkSpec("bv", 20, 0, 19), bv),
        (BenchmarkSpec("qaoa_complete", 10, 0, 90), qaoa_complete),
    ]
}

BENCHMARK_NAMES = tuple(BENCHMARKS)
TOFFOLI_BENCHMARKS = BENCHMARK_NAMES[:8]

_WIDTH_GENERATORS: dict[str, Callable[[int], Circuit]] = {
    "cnx_dirty": cnx_dirty, "cnx_halfborrowed": cnx_halfborrowed,
    "cnx_logancilla": cnx_logancilla, "cnx_inplace": cnx_inplace,
    "cuccaro_adder": cuccaro_adder, "takahashi_adder": takahashi_adder,
    "incrementer_borrowedbit": incrementer_borrowedbit, "grovers": grovers,
    "qft_adder": qft_adder, "bv": bv, "qaoa_complete": qaoa_complete,
}


def generate(name: str, width: int | None = None) -> Circuit:
    """Preset circuit for ``name``, or a resized one when ``width`` is given.

    ``width`` is the generator's size parameter (controls, bits, or qubits
    depending on the family), not necessarily the qubit count.
    """
    if name not in BENCHMARKS:
        raise KeyError(f"unknown benchmark {name!r}; choose from {', '.join(BENCHMARK_NAMES)}")
    if width is None:
        return _named(BENCHMARKS[name][1](), name)
    return _WIDTH_GENERATORS[name](width)


def _named(c: Circuit, name: str) -> Circuit:
    return Circuit(c.n_qubits, c.gates, name)


def table1_suite() -> list[tuple[BenchmarkSpec, Circuit]]:
    return [(spec, _named(gen(), name)) for name, (spec, gen) in BENCHMARKS.items()]


def cnots_after_8cnot(circuit: Circuit) -> int:
    """Two-qubit gate count with every Toffoli worth 8 CNOTs and CU1 counted once."""
    return sum(8 if g.kind is GateKind.CCX else 1 for g in circuit.gates if g.kind.arity in (2, 3))
