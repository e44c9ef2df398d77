"""Quantum dataflow diagrams: layered DAGs of gate applications to live basis states.

A circuit is simulated one op at a time.  Every counted op becomes a layer
whose vertices are the basis states alive *before* the op.  Edges join
consecutive layers wherever the op (together with any uncounted prep ops that
follow it) carries amplitude from one live state to another.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .circuits import Circuit, initial_state
from .errors import DomainError
from .sim import (
    DIAGONAL_KINDS,
    Counting,
    Gate,
    GateKind,
    Section,
    apply_gate,
    gate_unitary,
)

MAX_DIAGRAM_QUBITS = 24
WEIGHT_ATOL = 1e-9


@dataclass(frozen=True)
class CountingPolicy:
    """How ops turn into counted nodes.

    epsilon
        An amplitude is live when its magnitude exceeds this.
    include_prep
        Give prep-section ops their own layers.
    """

    epsilon: float = 1e-10
    include_prep: bool = False
    write_nodes: int = field(default=1, init=False)

    def __post_init__(self):
        if not 0 < self.epsilon < 1e-3:
            raise DomainError(f"epsilon must lie in (0, 1e-3), got {self.epsilon}")


@dataclass(frozen=True)
class Vertex:
    layer: int
    basis_index: int
    weight: float


@dataclass(frozen=True)
class Layer:
    index: int
    label: str
    counted_nodes: int
    live_in: tuple[int, ...]
    vertices: tuple[Vertex, ...]


@dataclass(frozen=True)
class DataflowDiagram:
    """Layers plus an edge table.

    ``edge_index`` rows are ``(src_layer, src_basis, dst_layer, dst_basis)``
    and ``edge_weight`` holds the probability of the destination state.
    """

    num_qubits: int
    layers: tuple[Layer, ...]
    edge_index: np.ndarray
    edge_weight: np.ndarray
    final_live: tuple[int, ...] = ()

    @property
    def edges(self) -> Iterator[tuple[tuple[int, int], tuple[int, int], float]]:
        for (sl, sx, dl, dx), w in zip(self.edge_index.tolist(), self.edge_weight.tolist()):
            yield (sl, sx), (dl, dx), w

    @property
    def num_edges(self) -> int:
        return len(self.edge_index)

    def edges_from(self, layer: int) -> np.ndarray:
        return self.edge_index[self.edge_index[:, 0] == layer]


def live_states(state: np.ndarray, epsilon: float = 1e-10) -> np.ndarray:
    """Sorted basis indices whose amplitude magnitude exceeds ``epsilon``."""
    return np.flatnonzero(np.abs(state) > epsilon)


def gate_label(gate: Gate) -> str:
    # imported lazily: the parser depends on this module's siblings only
    from .parser import format_op

    return format_op(gate)


def _gate_couplings(gate: Gate, xs: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """(src, dst) pairs with a nonzero matrix element of one gate from states ``xs``."""
    if gate.kind is GateKind.WRITE or gate.kind in DIAGONAL_KINDS:
        return xs, xs
    u = gate_unitary(gate)
    qubits = gate.qubits
    local_in = np.zeros_like(xs)
    for i, q in enumerate(qubits):
        local_in |= ((xs >> q) & 1) << i
    rest = xs & ~sum(1 << q for q in qubits)
    src, dst = [], []
    for out in range(len(u)):
        hit = np.abs(u[out, local_in]) > eps
        y = rest[hit].copy()
        for i, q in enumerate(qubits):
            y |= ((out >> i) & 1) << q
        src.append(xs[hit])
        dst.append(y)
    return np.concatenate(src), np.concatenate(dst)


def _segment_couplings(
    segment: list[Gate], xs: np.ndarray, n: int, eps: float
) -> tuple[np.ndarray, np.ndarray]:
    """Couplings of a composite op sequence, from its exact matrix columns."""
    src, dst = [], []
    for x in xs.tolist():
        col = np.zeros(1 << n, dtype=np.complex128)
        col[x] = 1
        for g in segment:
            col = apply_gate(col, g)
        ys = np.flatnonzero(np.abs(col) > eps)
        src.append(np.full(len(ys), x))
        dst.append(ys)
    return np.concatenate(src), np.concatenate(dst)


def _is_counted(gate: Gate, policy: CountingPolicy) -> bool:
    return policy.include_prep or gate.section is not Section.PREP


def build_diagram(
    circuit: Circuit, policy: Optional[CountingPolicy] = None
) -> DataflowDiagram:
    """Simulate ``circuit`` and lay it out as a dataflow diagram."""
    policy = policy or CountingPolicy()
    n = circuit.num_qubits
    if n > MAX_DIAGRAM_QUBITS:
        raise DomainError(f"diagrams are limited to {MAX_DIAGRAM_QUBITS} qubits")
    eps = policy.epsilon
    ops = list(circuit.ops)
    if not ops:
        raise DomainError("circuit has no ops")

    # a segment is one counted op followed by the uncounted ops before the next one
    segments: list[list[Gate]] = []
    leading: list[Gate] = []
    for g in ops:
        if _is_counted(g, policy):
            segments.append([g])
        elif segments:
            segments[-1].append(g)
        else:
            leading.append(g)

    state = initial_state(circuit)
    for g in leading:
        state = apply_gate(state, g)

    layers: list[Layer] = []
    live_per_layer: list[np.ndarray] = []
    couplings: list[tuple[np.ndarray, np.ndarray]] = []
    for t, segment in enumerate(segments):
        head = segment[0]
        live = live_states(state, eps)
        probs = np.abs(state[live]) ** 2
        if head.kind is GateKind.ENCODE_PHASE_SIGNAL:
            counted = 1 if head.counting is Counting.ABSTRACT else len(live)
        elif head.kind is GateKind.WRITE:
            counted = policy.write_nodes
        elif head.kind is GateKind.ORACLE_FLIP and head.counting is Counting.ABSTRACT:
            counted = 1
        else:
            counted = len(live)
        vertices = tuple(
            Vertex(t, x, w) for x, w in zip(live.tolist(), probs.tolist())
        )
        layers.append(Layer(t, gate_label(head), counted, tuple(live.tolist()), vertices))
        live_per_layer.append(live)

        for g in segment:
            state = apply_gate(state, g)
        if head.kind is GateKind.ENCODE_PHASE_SIGNAL:
            # state replacement: every live input feeds every output
            outs = live_states(state, eps)
            couplings.append((np.repeat(live, len(outs)), np.tile(outs, len(live))))
        elif len(segment) == 1:
            couplings.append(_gate_couplings(head, live, eps))
        else:
            couplings.append(_segment_couplings(segment, live, n, eps))

    rows, weights = [], []
    for t in range(len(layers) - 1):
        src, dst = couplings[t]
        alive_next = np.zeros(1 << n, dtype=bool)
        alive_next[live_per_layer[t + 1]] = True
        keep = alive_next[dst]
        src, dst = src[keep], dst[keep]
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        # destination weight: probability of the state entering layer t+1
        next_state_probs = np.zeros(1 << n)
        next_state_probs[live_per_layer[t + 1]] = [
            v.weight for v in layers[t + 1].vertices
        ]
        block = np.empty((len(src), 4), dtype=np.int64)
        block[:, 0] = t
        block[:, 1] = src
        block[:, 2] = t + 1
        block[:, 3] = dst
        rows.append(block)
        weights.append(next_state_probs[dst])
    edge_index = np.concatenate(rows) if rows else np.empty((0, 4), dtype=np.int64)
    edge_weight = np.concatenate(weights) if weights else np.empty(0)
    final_live = tuple(live_states(state, eps).tolist())
    return DataflowDiagram(n, tuple(layers), edge_index, edge_weight, final_live)


@dataclass
class ValidationReport:
    violations: list[str]
    layer_weight_sums: list[float]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_diagram(diagram: DataflowDiagram) -> ValidationReport:
    """Check the structural invariants of a diagram; never raises."""
    violations = []
    sums = []
    layer_count = len(diagram.layers)
    if layer_count == 0:
        violations.append("diagram has no layers")
    for t, layer in enumerate(diagram.layers):
        if layer.index != t:
            violations.append(f"layer {t} carries index {layer.index}")
        if not layer.vertices:
            violations.append(f"layer {t} has no vertices")
        total = sum(v.weight for v in layer.vertices)
        sums.append(total)
        if {v.basis_index for v in layer.vertices} == set(layer.live_in):
            if abs(total - 1) > WEIGHT_ATOL:
                violations.append(f"layer {t} weights sum to {total!r}, not 1")
        for v in layer.vertices:
            if v.layer != t:
                violations.append(f"vertex |{v.basis_index}> of layer {t} tagged layer {v.layer}")
            if v.weight <= 0:
                violations.append(f"vertex L{t}|{v.basis_index}> has non-positive weight")

    present = {(t, v.basis_index) for t, layer in enumerate(diagram.layers) for v in layer.vertices}
    has_parent = set()
    for (sl, sx), (dl, dx), _ in diagram.edges:
        if dl != sl + 1:
            violations.append(f"edge L{sl}|{sx}> -> L{dl}|{dx}> skips layers")
            continue
        if (sl, sx) not in present or (dl, dx) not in present:
            violations.append(f"edge L{sl}|{sx}> -> L{dl}|{dx}> touches a missing vertex")
            continue
        has_parent.add((dl, dx))
    for t, layer in enumerate(diagram.layers[1:], start=1):
        for v in layer.vertices:
            if (t, v.basis_index) not in has_parent:
                violations.append(f"vertex L{t}|{v.basis_index}> has no incoming edge")
    return ValidationReport(violations, sums)
