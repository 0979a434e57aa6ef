"""Reader and writer for a single-register subset of OpenQASM 2.0."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path

from .circuit import Circuit, CircuitError, Gate, GateKind


class QasmError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


_GATES = {k.value: k for k in GateKind if k not in (GateKind.MEASURE, GateKind.BARRIER)}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+|//[^\n]*)
  | (?P<num>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<arrow>->)
  | (?P<sym>[\[\](),;+\-*/^])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise QasmError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.qreg: tuple[str, int] | None = None
        self.creg: tuple[str, int] | None = None
        self.gates: list[Gate] = []

    # -- token helpers ---------------------------------------------------
    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> QasmError:
        tok = tok or self.cur
        return QasmError(msg, tok.line, tok.col)

    def take(self, kind: str | None = None, text: str | None = None) -> _Tok:
        tok = self.cur
        if (kind and tok.kind != kind) or (text and tok.text != text):
            want = repr(text) if text else kind
            got = repr(tok.text) if tok.text else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def peek(self, text: str) -> bool:
        return self.cur.text == text and self.cur.kind in ("sym", "arrow", "id")

    # -- grammar -----------------------------------------------------------
    def program(self) -> Circuit:
        self.take("id", "OPENQASM")
        ver = self.take("num")
        if ver.text != "2.0":
            raise self.error(f"only OPENQASM 2.0 is supported, got {ver.text}", ver)
        self.take("sym", ";")
        while self.cur.kind != "eof":
            self.statement()
        if self.qreg is None:
            raise self.error("no qreg declared")
        try:
            return Circuit(self.qreg[1], tuple(self.gates))
        except CircuitError as exc:
            raise QasmError(str(exc)) from None

    def statement(self) -> None:
        tok = self.take("id")
        word = tok.text
        if word == "include":
            self.take("str")
            self.take("sym", ";")
        elif word in ("qreg", "creg"):
            self.declaration(tok)
        elif word == "measure":
            self.measure(tok)
        elif word == "barrier":
            qubits = [q for arg in self.arglist() for q in arg]
            self.take("sym", ";")
            self.gates.append(Gate(GateKind.BARRIER, tuple(dict.fromkeys(qubits))))
        elif word in _GATES:
            self.application(tok, _GATES[word])
        else:
            raise self.error(f"unsupported gate or statement {word!r}", tok)

    def declaration(self, tok: _Tok) -> None:
        name = self.take("id").text
        self.take("sym", "[")
        size_tok = self.take("num")
        if not size_tok.text.isdigit() or int(size_tok.text) < 1:
            raise self.error("register size must be a positive integer", size_tok)
        self.take("sym", "]")
        self.take("sym", ";")
        slot = "qreg" if tok.text == "qreg" else "creg"
        if getattr(self, slot) is not None:
            raise self.error(f"{slot} re-declared; a single {slot} is supported", tok)
        if self.qreg and self.qreg[0] == name or self.creg and self.creg[0] == name:
            raise self.error(f"register name {name!r} already in use", tok)
        setattr(self, slot, (name, int(size_tok.text)))

    def reference(self, reg: tuple[str, int] | None, what: str) -> list[int]:
        tok = self.take("id")
        if reg is None or tok.text != reg[0]:
            raise self.error(f"unknown {what} register {tok.text!r}", tok)
        if not self.peek("["):
            return list(range(reg[1]))
        self.take("sym", "[")
        idx_tok = self.take("num")
        if not idx_tok.text.isdigit():
            raise self.error("register index must be an integer", idx_tok)
        idx = int(idx_tok.text)
        if idx >= reg[1]:
            raise self.error(f"index {idx} out of range for {reg[0]}[{reg[1]}]", idx_tok)
        self.take("sym", "]")
        return [idx]

    def arglist(self) -> list[list[int]]:
        args = [self.reference(self.qreg, "quantum")]
        while self.peek(","):
            self.take("sym", ",")
            args.append(self.reference(self.qreg, "quantum"))
        return args

    def measure(self, tok: _Tok) -> None:
        qs = self.reference(self.qreg, "quantum")
        self.take("arrow")
        cs = self.reference(self.creg, "classical")
        self.take("sym", ";")
        if len(qs) != len(cs):
            raise self.error("measure register sizes differ", tok)
        self.gates.extend(Gate(GateKind.MEASURE, (q,), clbit=c) for q, c in zip(qs, cs))

    def application(self, tok: _Tok, kind: GateKind) -> None:
        params: list[float] = []
        if self.peek("("):
            self.take("sym", "(")
            if not self.peek(")"):
                params.append(self.expr())
                while self.peek(","):
                    self.take("sym", ",")
                    params.append(self.expr())
            self.take("sym", ")")
        if len(params) != kind.n_params:
            raise self.error(f"{kind.value} takes {kind.n_params} parameter(s), got {len(params)}", tok)
        args = self.arglist()
        self.take("sym", ";")
        if len(args) != kind.arity:
            raise self.error(f"{kind.value} takes {kind.arity} argument(s), got {len(args)}", tok)
        widths = {len(a) for a in args if len(a) > 1}
        if len(widths) > 1:
            raise self.error("broadcast arguments differ in size", tok)
        n = widths.pop() if widths else 1
        for j in range(n):
            qubits = tuple(a[j] if len(a) > 1 else a[0] for a in args)
            try:
                self.gates.append(Gate(kind, qubits, tuple(params)))
            except CircuitError as exc:
                raise self.error(str(exc), tok) from None

    # -- angle expressions -------------------------------------------------
    def expr(self) -> float:
        val = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take("sym").text
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> float:
        val = self.unary()
        while self.peek("*") or self.peek("/"):
            op = self.take("sym")
            rhs = self.unary()
            if op.text == "/" and rhs == 0:
                raise self.error("division by zero", op)
            val = val * rhs if op.text == "*" else val / rhs
        return val

    def unary(self) -> float:
        if self.peek("-"):
            self.take("sym")
            return -self.unary()
        if self.peek("+"):
            self.take("sym")
            return self.unary()
        base = self.atom()
        if self.peek("^"):
            self.take("sym")
            return base ** self.unary()
        return base

    def atom(self) -> float:
        tok = self.cur
        if tok.kind == "num":
            self.i += 1
            return float(tok.text)
        if tok.kind == "id" and tok.text == "pi":
            self.i += 1
            return math.pi
        if self.peek("("):
            self.take("sym")
            val = self.expr()
            self.take("sym", ")")
            return val
        raise self.error(f"expected a number, pi or '(' in angle, got {tok.text or 'end of input'!r}")


def parse(text: str, name: str = "") -> Circuit:
    """Parse program text into a :class:`Circuit` over the declared qreg."""
    c = _Parser(text).program()
    return Circuit(c.n_qubits, c.gates, name) if name else c


def load(path: str | Path) -> Circuit:
    p = Path(path)
    return parse(p.read_text(encoding="utf-8"), name=p.stem)


def _fmt(v: float) -> str:
    return format(v, ".17g")


def serialize(circuit: Circuit) -> str:
    """Deterministic text: one statement per line, angles to 17 significant digits."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.n_qubits}];"]
    clbits = [g.clbit if g.clbit is not None else g.qubits[0]
              for g in circuit.gates if g.kind is GateKind.MEASURE]
    if clbits:
        lines.append(f"creg c[{max(circuit.n_qubits, max(clbits) + 1)}];")
    for g in circuit.gates:
        if g.kind is GateKind.MEASURE:
            c = g.clbit if g.clbit is not None else g.qubits[0]
            lines.append(f"measure q[{g.qubits[0]}] -> c[{c}];")
            continue
        if g.kind.value not in _GATES and g.kind is not GateKind.BARRIER:
            raise QasmError(f"cannot serialize {g.kind.value}")
        params = f"({','.join(_fmt(p) for p in g.params)})" if g.params else ""
        args = ",".join(f"q[{q}]" for q in g.qubits)
        lines.append(f"{g.kind.value}{params} {args};")
    return "\n".join(lines) + "\n"


def dump(circuit: Circuit, path: str | Path) -> None:
    Path(path).write_text(serialize(circuit), encoding="utf-8")
