"""``trios`` command-line entry point."""
from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path
from typing import Sequence

from . import qasm
from .benchmarks import BENCHMARK_NAMES, BENCHMARKS, TOFFOLI_BENCHMARKS, generate, table1_suite
from .decompose import TOFFOLI_POLICIES
from .noise import johannesburg_noise, log_spaced, log_success
from .pipeline import LAYOUTS, ROUTERS, ReportRow, compile_circuit, geomean
from .topology import STANDARD_TOPOLOGIES, TopologyError, by_name

DEFAULT_IMPROVEMENT = 20.0
FACTOR_LABELS = {1.0: "current-hardware", 20.0: "simulation-default"}


def _write_csv(rows: list[list[str]], header: list[str], path: str | None, append: bool = False) -> None:
    if path is None or path == "-":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    p = Path(path)
    fresh = not append or not p.exists() or p.stat().st_size == 0
    with p.open("a" if append else "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if fresh:
            w.writerow(header)
        w.writerows(rows)


def _fmt(v: float) -> str:
    return format(v, ".10g")


def _load_input(spec: str):
    """A .qasm path, or ``bench:<name>`` for a built-in preset."""
    if spec.startswith("bench:"):
        return generate(spec[len("bench:"):])
    return qasm.load(spec)


# --------------------------------------------------------------------------
# subcommands

def cmd_compile(args: argparse.Namespace) -> int:
    circuit = _load_input(args.input)
    g = by_name(args.topology)
    nm = johannesburg_noise(args.improvement)
    res = compile_circuit(circuit, g, args.router, args.layout, args.toffoli,
                          noise_aware=args.noise_aware, nm=nm,
                          model_measurement=args.model_measurement)
    if args.out:
        qasm.dump(res.circuit, args.out)
    _write_csv([res.row.cells()], ReportRow.header(), args.report, append=args.report not in (None, "-"))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for spec, circuit in table1_suite():
        qasm.dump(circuit, out / f"{spec.name}.qasm")
        print(f"{spec.name:24s} qubits={circuit.n_qubits:3d} -> {out / (spec.name + '.qasm')}")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    text = qasm.serialize(generate(args.name, args.width))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _topologies(arg: str) -> list[str]:
    return list(STANDARD_TOPOLOGIES) if arg == "all" else [t for t in arg.split(",") if t]


def _benchmarks(arg: str | None, default: Sequence[str]) -> list[str]:
    if arg is None or arg == "all":
        return list(default)
    names = [b for b in arg.split(",") if b]
    for b in names:
        if b not in BENCHMARKS:
            raise SystemExit(f"unknown benchmark {b!r}")
    return names


def cmd_compare(args: argparse.Namespace) -> int:
    """Every benchmark on every topology with both routers, then one
    geometric-mean row per topology over the Toffoli benchmarks: the
    ``two_qubit_total`` and ``est_success`` cells hold trios/baseline ratios."""
    nm = johannesburg_noise(args.improvement)
    rows: list[list[str]] = []
    failed = 0
    for topo in _topologies(args.topologies):
        try:
            g = by_name(topo)
        except TopologyError as exc:
            print(f"error: {topo}: {exc}", file=sys.stderr)
            failed += 1
            continue
        gate_ratios, success_ratios = [], []
        for name in _benchmarks(args.benchmarks, BENCHMARK_NAMES):
            circuit = generate(name)
            pair = {}
            for router in ROUTERS:
                try:
                    pair[router] = compile_circuit(circuit, g, router, args.layout, args.toffoli,
                                                   noise_aware=args.noise_aware, nm=nm)
                except Exception as exc:  # report and keep sweeping
                    print(f"error: {name} on {topo} ({router}): {exc}", file=sys.stderr)
                    failed += 1
                    continue
                rows.append(pair[router].row.cells())
            if len(pair) == 2 and name in TOFFOLI_BENCHMARKS:
                t, b = pair["trios"], pair["baseline"]
                gate_ratios.append(t.row.two_qubit_total / b.row.two_qubit_total)
                success_ratios.append(math.exp(t.log_success - b.log_success))
        if gate_ratios:
            summary = [""] * len(ReportRow.header())
            summary[:4] = ["geomean", g.name or topo, "trios/baseline", args.layout]
            summary[ReportRow.header().index("two_qubit_total")] = _fmt(geomean(gate_ratios))
            summary[ReportRow.header().index("est_success")] = _fmt(geomean(success_ratios))
            rows.append(summary)
    _write_csv(rows, ReportRow.header(), args.report)
    return 1 if failed else 0


def parse_factors(spec: str) -> list[float]:
    """``lo:hi:logN`` (N log-spaced points) or a comma list; 1 and 20 are
    always included so the two reference columns exist."""
    if ":" in spec:
        lo, hi, n = spec.split(":")
        if not n.startswith("log"):
            raise ValueError(f"bad factor spec {spec!r}; expected lo:hi:logN")
        factors = log_spaced(float(lo), float(hi), int(n[3:]))
    else:
        factors = [float(f) for f in spec.split(",") if f]
    factors = [round(f, 12) for f in factors]
    return sorted(set(factors) | set(FACTOR_LABELS))


def cmd_sweep(args: argparse.Namespace) -> int:
    g = by_name(args.topology)
    factors = parse_factors(args.factors)
    rows = []
    failed = 0
    for name in _benchmarks(args.benchmarks, TOFFOLI_BENCHMARKS):
        circuit = generate(name)
        try:
            t = compile_circuit(circuit, g, "trios", args.layout, args.toffoli)
            b = compile_circuit(circuit, g, "baseline", args.layout, args.toffoli)
        except Exception as exc:
            print(f"error: {name}: {exc}", file=sys.stderr)
            failed += 1
            continue
        for f in factors:
            nm = johannesburg_noise(f)
            lt = log_success(t.circuit, nm, args.model_measurement)
            lb = log_success(b.circuit, nm, args.model_measurement)
            rows.append([name, g.name, _fmt(f), FACTOR_LABELS.get(f, ""),
                         _fmt(math.exp(lt)), _fmt(math.exp(lb)), _fmt(_safe_exp(lt - lb))])
    header = ["benchmark", "topology", "improvement", "label",
              "success_trios", "success_baseline", "success_ratio"]
    _write_csv(rows, header, args.report)
    return 1 if failed else 0


def _safe_exp(v: float) -> float:
    try:
        return math.exp(v)
    except OverflowError:
        return math.inf


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trios", description="Toffoli-aware routing compiler")
    sub = p.add_subparsers(dest="command", required=True)

    def compile_opts(sp, with_router=True):
        if with_router:
            sp.add_argument("--router", choices=ROUTERS, default="trios")
        sp.add_argument("--layout", choices=LAYOUTS, default="identity")
        sp.add_argument("--toffoli", choices=TOFFOLI_POLICIES, default="auto")

    c = sub.add_parser("compile", help="compile one circuit and append a report row")
    c.add_argument("--input", required=True, help=".qasm file, or bench:<name>")
    c.add_argument("--topology", default="johannesburg")
    compile_opts(c)
    c.add_argument("--noise-aware", action="store_true", help="route on -log CNOT success weights")
    c.add_argument("--improvement", type=float, default=DEFAULT_IMPROVEMENT)
    c.add_argument("--model-measurement", action="store_true")
    c.add_argument("--out", help="write the compiled circuit here")
    c.add_argument("--report", help="CSV file to append to (default: stdout)")
    c.set_defaults(func=cmd_compile)

    b = sub.add_parser("bench", help="write the benchmark suite as .qasm files")
    b.add_argument("--suite", choices=["table1"], default="table1")
    b.add_argument("--out-dir", default="benchmarks")
    b.set_defaults(func=cmd_bench)

    gsub = sub.add_parser("gen", help="print one benchmark as QASM")
    gsub.add_argument("name", choices=BENCHMARK_NAMES)
    gsub.add_argument("--width", type=int)
    gsub.add_argument("--out")
    gsub.set_defaults(func=cmd_gen)

    cmp_ = sub.add_parser("compare", help="both routers over benchmarks x topologies")
    cmp_.add_argument("--topologies", default="all")
    cmp_.add_argument("--benchmarks", default="all")
    compile_opts(cmp_, with_router=False)
    cmp_.add_argument("--noise-aware", action="store_true")
    cmp_.add_argument("--improvement", type=float, default=DEFAULT_IMPROVEMENT)
    cmp_.add_argument("--report")
    cmp_.set_defaults(func=cmd_compare)

    sw = sub.add_parser("sweep", help="success ratio versus error-rate improvement")
    sw.add_argument("--benchmarks", default=None, help="comma list (default: Toffoli benchmarks)")
    sw.add_argument("--topology", default="johannesburg")
    sw.add_argument("--factors", default="1:100:log25")
    compile_opts(sw, with_router=False)
    sw.add_argument("--model-measurement", action="store_true")
    sw.add_argument("--report")
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
