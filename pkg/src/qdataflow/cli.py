"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 when the circuit text or
arguments fail validation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .circuits import build_aa_iteration, build_demo, build_qft
from .dataflow import CountingPolicy, build_diagram, validate_diagram
from .errors import DomainError
from .export import (
    export_dot,
    export_json_report,
    format_report,
    run_sweep,
    sweep_to_csv,
)
from .metrics import SpeedupQuery, amdahl_speedup, compute_report, gustafson_speedup
from .parser import CircuitParseError, parse_circuit
from .sim import probabilities

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _add_outputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--epsilon", type=float, default=1e-10)
    p.add_argument("--include-prep", action="store_true")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--binary-labels", action="store_true", help="label DOT nodes in binary")


def _parse_marked(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad marked list {text!r}") from None


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdataflow", description="Quantum dataflow diagrams and parallelism metrics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="analyze a circuit file")
    p.add_argument("file")
    _add_outputs(p)

    p = sub.add_parser("builtin", help="analyze a built-in circuit")
    bsub = p.add_subparsers(dest="circuit", required=True, parser_class=_Parser)
    q = bsub.add_parser("qft")
    q.add_argument("--qubits", type=int, required=True)
    q.add_argument("--frequency", type=int, required=True)
    q.add_argument("--inverse", action="store_true")
    _add_outputs(q)
    a = bsub.add_parser("aa")
    a.add_argument("--qubits", type=int, required=True)
    a.add_argument("--marked", type=_parse_marked, required=True)
    a.add_argument("--iterations", type=int, default=1)
    _add_outputs(a)
    d = bsub.add_parser("demo")
    d.add_argument("--name", choices=["root_of_not", "h_forkjoin"], required=True)
    _add_outputs(d)

    p = sub.add_parser("sweep", help="efficiency sweep over register sizes")
    ssub = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    s = ssub.add_parser("qft")
    s.add_argument("--min", type=int, required=True, dest="n_min")
    s.add_argument("--max", type=int, required=True, dest="n_max")
    s.add_argument("--csv", required=True, metavar="PATH")

    p = sub.add_parser("laws", help="Amdahl / Gustafson speedup")
    p.add_argument("law", choices=["amdahl", "gustafson"])
    p.add_argument("--serial-fraction", type=float, required=True)
    p.add_argument("--parallelism", type=float, required=True)

    p = sub.add_parser("simulate", help="print final-state probabilities")
    p.add_argument("file")
    return parser


def _analyze(circuit, args) -> None:
    policy = CountingPolicy(epsilon=args.epsilon, include_prep=args.include_prep)
    diagram = build_diagram(circuit, policy)
    check = validate_diagram(diagram)
    if not check.ok:
        raise DomainError("diagram failed validation: " + "; ".join(check.violations))
    report = compute_report(diagram)
    to_stdout = args.json == "-" or args.dot == "-"
    if not to_stdout:
        sys.stdout.write(format_report(report))
    if args.json:
        _emit(export_json_report(report), args.json)
    if args.dot:
        _emit(export_dot(diagram, "binary" if args.binary_labels else "decimal"), args.dot)


def _read_circuit(path: str):
    return parse_circuit(Path(path).read_text(encoding="utf-8"))


def _format_float(value: float) -> str:
    return repr(float(f"{value:.12g}"))


def run(args: argparse.Namespace) -> None:
    if args.command == "analyze":
        _analyze(_read_circuit(args.file), args)
    elif args.command == "builtin":
        if args.circuit == "qft":
            circuit = build_qft(args.qubits, args.frequency, args.inverse)
        elif args.circuit == "aa":
            circuit = build_aa_iteration(args.qubits, args.marked, args.iterations)
        else:
            circuit = build_demo(args.name)
        _analyze(circuit, args)
    elif args.command == "sweep":
        rows = run_sweep("qft_freq2", args.n_min, args.n_max)
        _emit(sweep_to_csv(rows), args.csv)
    elif args.command == "laws":
        query = SpeedupQuery(args.serial_fraction, args.parallelism)
        fn = amdahl_speedup if args.law == "amdahl" else gustafson_speedup
        print(_format_float(fn(query)))
    elif args.command == "simulate":
        circuit = _read_circuit(args.file)
        probs = probabilities(circuit.final_state())
        width = circuit.num_qubits
        for x, p in enumerate(probs.tolist()):
            print(f"{x}\t{x:0{width}b}\t{p:.12f}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        run(args)
    except CircuitParseError as exc:
        for d in exc.diagnostics:
            print(f"{args.file}:{d}", file=sys.stderr)
        return EXIT_INVALID
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
