"""DOT, JSON and CSV output for diagrams, reports and efficiency sweeps."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .circuits import build_qft
from .dataflow import DataflowDiagram, build_diagram
from .errors import DomainError
from .metrics import MetricsReport, compute_report, qft_closed_form_parallelism

SWEEP_MAX_QUBITS = 14
CSV_HEADER = ("N", "t_work", "t_span", "P", "eta_p", "eta_di", "closed_form_P")


def pen_width(weight: float) -> float:
    return 1 + 4 * weight


def _node_id(layer: int, basis: int) -> str:
    return f"L{layer}_S{basis}"


def _basis_label(basis: int, num_qubits: int, mode: str) -> str:
    if mode == "binary":
        return f"|{basis:0{num_qubits}b}⟩"
    return f"|{basis}⟩"


def export_dot(diagram: DataflowDiagram, label_mode: str = "decimal") -> str:
    """Graphviz source: one same-rank cluster per layer, thicker = more probable."""
    if label_mode not in ("decimal", "binary"):
        raise DomainError(f"unknown label mode {label_mode!r}")
    out = [
        "digraph dataflow {",
        "  rankdir=LR;",
        '  node [shape=circle, fontname="Helvetica"];',
    ]
    for layer in diagram.layers:
        out.append(f"  subgraph cluster_L{layer.index} {{")
        out.append("    rank=same;")
        out.append(f'    label="{layer.label}";')
        for v in sorted(layer.vertices, key=lambda v: v.basis_index):
            label = _basis_label(v.basis_index, diagram.num_qubits, label_mode)
            out.append(
                f'    {_node_id(layer.index, v.basis_index)} [label="{label}", '
                f"penwidth={pen_width(v.weight):.6f}];"
            )
        out.append("  }")
    for (sl, sx), (dl, dx), w in sorted(diagram.edges):
        out.append(
            f"  {_node_id(sl, sx)} -> {_node_id(dl, dx)} [penwidth={pen_width(w):.6f}];"
        )
    out.append("}")
    return "\n".join(out) + "\n"


def report_to_dict(report: MetricsReport) -> dict:
    return {
        "qubits": report.num_qubits,
        "t_work": report.t_work,
        "t_span": report.t_span,
        "parallelism": report.parallelism,
        "eta_p": report.eta_p,
        "eta_di": report.eta_di,
        "layers": [
            {
                "index": s.index,
                "label": s.label,
                "live_in": s.live_in,
                "counted_nodes": s.counted_nodes,
            }
            for s in report.per_layer
        ],
    }


def export_json_report(report: MetricsReport) -> str:
    # json writes floats with repr, i.e. 17 significant digits
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def format_report(report: MetricsReport) -> str:
    lines = [
        f"qubits       {report.num_qubits}",
        f"T_W (work)   {report.t_work}",
        f"T_inf (span) {report.t_span}",
        f"P            {report.parallelism:.6g}",
        f"eta_P        {report.eta_p:.6g}",
        f"eta_DI       {report.eta_di:.6g}",
        "",
        f"{'layer':>5}  {'live_in':>7}  {'nodes':>5}  op",
    ]
    for s in report.per_layer:
        lines.append(f"{s.index:>5}  {s.live_in:>7}  {s.counted_nodes:>5}  {s.label}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SweepRow:
    num_qubits: int
    t_work: int
    t_span: int
    parallelism: float
    eta_p: float
    eta_di: float
    closed_form_p: float


def run_sweep(family: str, n_min: int, n_max: int) -> list[SweepRow]:
    """Build the full diagram for every register size in ``[n_min, n_max]``."""
    if family != "qft_freq2":
        raise DomainError(f"unknown sweep family {family!r}")
    if not 3 <= n_min <= n_max <= SWEEP_MAX_QUBITS:
        raise DomainError(f"need 3 <= n_min <= n_max <= {SWEEP_MAX_QUBITS}")
    rows = []
    for n in range(n_min, n_max + 1):
        report = compute_report(build_diagram(build_qft(n, 2)))
        rows.append(
            SweepRow(
                n,
                report.t_work,
                report.t_span,
                report.parallelism,
                report.eta_p,
                report.eta_di,
                qft_closed_form_parallelism(n),
            )
        )
    return rows


def sweep_to_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [
                r.num_qubits,
                r.t_work,
                r.t_span,
                repr(r.parallelism),
                repr(r.eta_p),
                repr(r.eta_di),
                repr(r.closed_form_p),
            ]
        )
    return buf.getvalue()
