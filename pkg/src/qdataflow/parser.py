"""Line-oriented circuit text format.

::

    QUBITS 4
    WRITE 0
    ENCODE PHASE_SIGNAL 2 ABSTRACT
    PREP H q0
    ORACLE FLIP 3 PER_STATE
    CP pi/2 q0 q1
    MCZ q0 q1 q2 q3

One statement per line, ``#`` starts a comment, keywords are
case-insensitive.  Angles are decimal literals, ``pi``, ``pi/<int>`` or
``-pi/<int>``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional

from .circuits import Circuit
from .errors import CircuitValidationError, DomainError
from .dataflow import MAX_DIAGRAM_QUBITS
from .sim import Counting, Gate, GateKind, Section


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str
    severity: str = "error"

    def __str__(self):
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


class CircuitParseError(ValueError):
    def __init__(self, diagnostics: list[ParseDiagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\Z")
_PI_FRACTION = re.compile(r"(-?)pi(?:/(\d+))?\Z", re.IGNORECASE)
_QUBIT = re.compile(r"q(\d+)\Z", re.IGNORECASE)
_INT = re.compile(r"\d+\Z")

_SINGLE = {
    "H": GateKind.H,
    "NOT": GateKind.NOT,
    "SX": GateKind.ROOT_OF_NOT,
}
_ROTATIONS = {"ROTX": GateKind.ROTX, "ROTY": GateKind.ROTY, "PHASE": GateKind.PHASE}


def parse_angle(text: str) -> float:
    m = _PI_FRACTION.match(text)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValueError("division by zero in angle")
        value = math.pi / den
        return -value if m.group(1) else value
    if _DECIMAL.match(text):
        value = float(text)
        if math.isfinite(value):
            return value
    raise ValueError(f"bad angle {text!r}")


def format_angle(angle: float) -> str:
    """Exact ``pi``/``pi/k`` spellings where they round-trip, else ``repr``."""
    mag = abs(angle)
    if 1e-12 < mag <= math.pi:
        den = round(math.pi / mag)
        if den >= 1 and math.pi / den == mag:
            if den > 1:
                return f"{'-' if angle < 0 else ''}pi/{den}"
            if angle > 0:
                return "pi"
    return repr(float(angle))


def _qubit(q: int) -> str:
    return f"q{q}"


def format_op(gate: Gate) -> str:
    """Canonical statement for one op (no trailing newline)."""
    kind = gate.kind
    if kind is GateKind.WRITE:
        return f"WRITE {gate.basis}"
    if kind is GateKind.ENCODE_PHASE_SIGNAL:
        return f"ENCODE PHASE_SIGNAL {gate.frequency} {gate.counting.name}"
    if kind is GateKind.ORACLE_FLIP:
        marked = ",".join(str(m) for m in sorted(gate.marked))
        return f"ORACLE FLIP {marked} {gate.counting.name}"
    qs = " ".join(_qubit(q) for q in gate.qubits)
    if kind in (GateKind.ROTX, GateKind.ROTY, GateKind.PHASE, GateKind.CPHASE):
        text = f"{kind.value} {format_angle(gate.angle)} {qs}"
    else:
        text = f"{kind.value} {qs}"
    return f"PREP {text}" if gate.section is Section.PREP else text


def serialize_circuit(circuit: Circuit) -> str:
    lines = [f"QUBITS {circuit.num_qubits}"]
    lines += [format_op(g) for g in circuit.ops]
    return "\n".join(lines)


class _LineParser:
    """Parses one statement; records diagnostics instead of raising."""

    def __init__(self, lineno: int, tokens: list[tuple[int, str]], n: Optional[int]):
        self.lineno = lineno
        self.tokens = tokens
        self.n = n
        self.diagnostics: list[ParseDiagnostic] = []

    def error(self, col: int, message: str, severity: str = "error") -> None:
        self.diagnostics.append(ParseDiagnostic(self.lineno, col, message, severity))

    def qubits(self, toks: list[tuple[int, str]]) -> Optional[tuple[int, ...]]:
        out = []
        ok = True
        for col, tok in toks:
            m = _QUBIT.match(tok)
            if not m:
                self.error(col, f"expected qubit like q0, got {tok!r}")
                ok = False
                continue
            q = int(m.group(1))
            if self.n is not None and q >= self.n:
                self.error(col, f"qubit index {q} out of range (circuit has {self.n} qubits)")
                ok = False
            elif q in out:
                self.error(col, f"duplicate qubit q{q} in one gate")
                ok = False
            out.append(q)
        return tuple(out) if ok else None

    def angle(self, tok: tuple[int, str]) -> Optional[float]:
        try:
            return parse_angle(tok[1])
        except ValueError:
            self.error(tok[0], f"bad angle {tok[1]!r}")
            return None

    def arity(self, toks, expected: int, what: str) -> bool:
        if len(toks) != expected:
            col = toks[0][0] if toks else self.tokens[0][0]
            self.error(col, f"{what} expects {expected} operand(s), got {len(toks)}")
            return False
        return True

    def gate(self, toks: list[tuple[int, str]], section: Section) -> Optional[Gate]:
        col, word = toks[0]
        kw = word.upper()
        args = toks[1:]
        if kw in _SINGLE:
            if not self.arity(args, 1, kw):
                return None
            qs = self.qubits(args)
            return qs and Gate(_SINGLE[kw], qs, section=section)
        if kw in _ROTATIONS:
            if not self.arity(args, 2, kw):
                return None
            angle, qs = self.angle(args[0]), self.qubits(args[1:])
            if angle is None or qs is None:
                return None
            return Gate(_ROTATIONS[kw], qs, angle=angle, section=section)
        if kw == "CP":
            if not self.arity(args, 3, kw):
                return None
            angle, qs = self.angle(args[0]), self.qubits(args[1:])
            if angle is None or qs is None:
                return None
            return Gate(GateKind.CPHASE, qs, angle=angle, section=section)
        if kw == "SWAP":
            if not self.arity(args, 2, kw):
                return None
            qs = self.qubits(args)
            return qs and Gate(GateKind.SWAP, qs, section=section)
        if kw == "MCZ":
            if not args:
                self.error(col, "MCZ needs at least one qubit")
                return None
            qs = self.qubits(args)
            return qs and Gate(GateKind.MCZ, qs, section=section)
        self.error(col, f"unknown keyword {word!r}")
        return None

    def counting(self, toks, default: Counting) -> Optional[Counting]:
        if not toks:
            return default
        if len(toks) > 1:
            self.error(toks[1][0], f"unexpected token {toks[1][1]!r}")
            return None
        word = toks[0][1].upper()
        if word in ("ABSTRACT", "PER_STATE"):
            return Counting[word]
        self.error(toks[0][0], f"expected ABSTRACT or PER_STATE, got {toks[0][1]!r}")
        return None


def _tokenize(line: str) -> list[tuple[int, str]]:
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def parse_with_diagnostics(source: str) -> tuple[Optional[Circuit], list[ParseDiagnostic]]:
    """Parse ``source``; returns the circuit (or ``None``) and every diagnostic."""
    diags: list[ParseDiagnostic] = []
    n: Optional[int] = None
    write: Optional[Gate] = None
    write_line = 0
    encode: Optional[Gate] = None
    body: list[Gate] = []
    seen_statement = False

    for lineno, raw in enumerate(source.splitlines(), start=1):
        tokens = _tokenize(raw.split("#", 1)[0])
        if not tokens:
            continue
        lp = _LineParser(lineno, tokens, n)
        col, word = tokens[0]
        kw = word.upper()
        first = not seen_statement
        seen_statement = True

        if kw == "QUBITS":
            if not first:
                lp.error(col, "QUBITS must be the first statement")
            elif len(tokens) != 2 or not _INT.match(tokens[1][1]):
                lp.error(col, "QUBITS expects one non-negative integer")
            else:
                value = int(tokens[1][1])
                if not 1 <= value <= MAX_DIAGRAM_QUBITS:
                    lp.error(tokens[1][0], f"qubit count must be in 1..{MAX_DIAGRAM_QUBITS}")
                else:
                    n = value
            diags += lp.diagnostics
            continue
        if first:
            lp.error(col, "first statement must be QUBITS <N>")

        if kw == "WRITE":
            if write is not None or encode is not None or body:
                lp.error(col, "WRITE must precede every other op")
            elif len(tokens) != 2 or not _INT.match(tokens[1][1]):
                lp.error(col, "WRITE expects one basis index")
            else:
                basis = int(tokens[1][1])
                if n is not None and basis >= 1 << n:
                    lp.error(tokens[1][0], f"basis index {basis} out of range")
                elif n is not None:
                    write = Gate(
                        GateKind.WRITE, tuple(range(n)), basis=basis, counting=Counting.ABSTRACT
                    )
                    write_line = lineno
        elif kw == "ENCODE":
            if encode is not None or body:
                lp.error(col, "ENCODE must come before every gate and appear once")
            elif len(tokens) < 3 or tokens[1][1].upper() != "PHASE_SIGNAL":
                lp.error(col, "expected ENCODE PHASE_SIGNAL <f> [ABSTRACT|PER_STATE]")
            elif not _INT.match(tokens[2][1]):
                lp.error(tokens[2][0], f"bad frequency {tokens[2][1]!r}")
            else:
                f = int(tokens[2][1])
                counting = lp.counting(tokens[3:], Counting.ABSTRACT)
                if n is not None and f >= 1 << n:
                    lp.error(tokens[2][0], f"frequency {f} out of range")
                elif n is not None and counting is not None:
                    encode = Gate(
                        GateKind.ENCODE_PHASE_SIGNAL,
                        tuple(range(n)),
                        frequency=f,
                        counting=counting,
                    )
        elif kw == "ORACLE":
            if len(tokens) < 3 or tokens[1][1].upper() != "FLIP":
                lp.error(col, "expected ORACLE FLIP <idx>[,<idx>...] [ABSTRACT|PER_STATE]")
            else:
                icol, itext = tokens[2]
                parts = itext.split(",")
                if not all(_INT.match(p) for p in parts):
                    lp.error(icol, f"bad marked-index list {itext!r}")
                else:
                    marked = [int(p) for p in parts]
                    if len(set(marked)) != len(marked):
                        lp.error(icol, "duplicate marked index ignored", "warning")
                    counting = lp.counting(tokens[3:], Counting.PER_STATE)
                    bad = [m for m in marked if n is not None and m >= 1 << n]
                    if bad:
                        lp.error(icol, f"marked index {bad[0]} out of range")
                    elif n is not None and counting is not None:
                        body.append(
                            Gate(
                                GateKind.ORACLE_FLIP,
                                tuple(range(n)),
                                marked=frozenset(marked),
                                counting=counting,
                            )
                        )
        elif kw == "PREP":
            if len(tokens) < 2:
                lp.error(col, "PREP needs a gate statement")
            else:
                g = lp.gate(tokens[1:], Section.PREP)
                if g is not None and any(b.section is Section.MAIN for b in body):
                    lp.error(col, "PREP gates must precede main-section ops")
                elif g is not None:
                    body.append(g)
        else:
            g = lp.gate(tokens, Section.MAIN)
            if g is not None:
                body.append(g)
        diags += lp.diagnostics

    if not seen_statement:
        diags.append(ParseDiagnostic(1, 1, "empty circuit: QUBITS <N> is required"))
    elif n is None and not diags:
        diags.append(ParseDiagnostic(1, 1, "missing QUBITS statement"))
    if any(d.severity == "error" for d in diags) or n is None:
        return None, diags

    if write is None:
        write = Gate(GateKind.WRITE, tuple(range(n)), basis=0, counting=Counting.ABSTRACT)
    ops = [write] + ([encode] if encode else []) + body
    try:
        circuit = Circuit(n, tuple(ops))
    except (CircuitValidationError, DomainError) as exc:
        diags.append(ParseDiagnostic(write_line or 1, 1, str(exc)))
        return None, diags
    return circuit, diags


def parse_circuit(source: str) -> Circuit:
    """Parse circuit text; raises :class:`CircuitParseError` listing every diagnostic."""
    circuit, diags = parse_with_diagnostics(source)
    if circuit is None:
        raise CircuitParseError([d for d in diags if d.severity == "error"] or diags)
    return circuit
