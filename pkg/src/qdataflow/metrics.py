"""Work, span and parallelism of dataflow diagrams, plus the classical speedup laws."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataflow import DataflowDiagram
from .errors import DomainError


@dataclass(frozen=True)
class LayerSummary:
    index: int
    label: str
    live_in: int
    counted_nodes: int


@dataclass(frozen=True)
class MetricsReport:
    num_qubits: int
    t_work: int
    t_span: int
    parallelism: float
    eta_p: float
    eta_di: float
    per_layer: tuple[LayerSummary, ...]


def longest_path_vertices(diagram: DataflowDiagram) -> int:
    """Vertex count of the longest directed path, by DP in layer order."""
    depth: dict[tuple[int, int], int] = {}
    for layer in diagram.layers:
        for v in layer.vertices:
            depth[(layer.index, v.basis_index)] = 1
    if not depth:
        return 0
    edges = diagram.edge_index
    order = np.argsort(edges[:, 0], kind="stable")
    for sl, sx, dl, dx in edges[order].tolist():
        src = depth.get((sl, sx))
        if src is None or (dl, dx) not in depth:
            continue
        if src + 1 > depth[(dl, dx)]:
            depth[(dl, dx)] = src + 1
    return max(depth.values())


def compute_report(diagram: DataflowDiagram) -> MetricsReport:
    if not diagram.layers:
        raise DomainError("diagram has no layers")
    t_work = sum(layer.counted_nodes for layer in diagram.layers)
    t_span = longest_path_vertices(diagram)
    parallelism = t_work / t_span
    eta_p = parallelism / 2**diagram.num_qubits
    per_layer = tuple(
        LayerSummary(layer.index, layer.label, len(layer.live_in), layer.counted_nodes)
        for layer in diagram.layers
    )
    return MetricsReport(
        num_qubits=diagram.num_qubits,
        t_work=t_work,
        t_span=t_span,
        parallelism=parallelism,
        eta_p=eta_p,
        eta_di=1 - eta_p,
        per_layer=per_layer,
    )


def qft_closed_form_parallelism(num_qubits: int) -> float:
    """Parallelism of the QFT on a frequency-two phase signal, in closed form."""
    n = num_qubits
    if n < 2:
        raise DomainError("frequency 2 needs at least two qubits")
    work = n * 2**n + n // 2 + 2
    span = n * (n + 1) / 2 + n // 2 + 2
    return work / span


@dataclass(frozen=True)
class SpeedupQuery:
    serial_fraction: float
    parallelism: float

    def __post_init__(self):
        if not 0 <= self.serial_fraction <= 1:
            raise DomainError(f"serial fraction {self.serial_fraction} outside [0, 1]")
        if not self.parallelism >= 1:
            raise DomainError(f"parallelism {self.parallelism} below 1")


def amdahl_speedup(query: SpeedupQuery) -> float:
    """``1 / (F + (1 - F) / P)``; with ``F = 0`` and infinite ``P`` returns ``P``."""
    f, p = query.serial_fraction, query.parallelism
    if f == 0 and math.isinf(p):
        return p
    return 1 / (f + (1 - f) / p)


def gustafson_speedup(query: SpeedupQuery) -> float:
    f, p = query.serial_fraction, query.parallelism
    return p - f * (p - 1)
