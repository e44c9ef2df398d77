import math
from collections import Counter

import numpy as np
import pytest

from qdataflow.circuits import build_aa_iteration, build_demo, build_qft
from qdataflow.dataflow import (
    CountingPolicy,
    DataflowDiagram,
    Layer,
    Vertex,
    build_diagram,
    live_states,
    validate_diagram,
)
from qdataflow.errors import DomainError
from qdataflow.sim import Counting, GateKind, encode_phase_signal
from qdataflow.parser import parse_circuit, serialize_circuit

QFT4_LIVE = [1, 1, 16, 8, 8, 8, 8, 4, 4, 4, 2, 2, 1, 1]
AA4_LIVE = [1, 16, 16, 8, 7, 9, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 9, 7, 9]


def _live_counts(diagram):
    return [len(layer.live_in) for layer in diagram.layers]


def test_live_states():
    s = np.zeros(4, dtype=complex)
    s[0] = s[3] = 1 / math.sqrt(2)
    assert live_states(s, 1e-10).tolist() == [0, 3]
    s[1] = 1e-16
    assert live_states(s, 1e-10).tolist() == [0, 3]
    assert live_states(encode_phase_signal(4, 2)).tolist() == list(range(16))


def test_policy_bounds():
    with pytest.raises(DomainError):
        CountingPolicy(epsilon=0)
    with pytest.raises(DomainError):
        CountingPolicy(epsilon=1e-2)


def test_qft4_layers():
    d = build_diagram(build_qft(4, 2))
    assert _live_counts(d) == QFT4_LIVE
    assert [l.counted_nodes for l in d.layers][:2] == [1, 1]
    assert d.final_live == (2,)


def test_aa4_layers():
    d = build_diagram(build_aa_iteration(4, {3}))
    assert _live_counts(d) == AA4_LIVE
    assert d.layers[1].counted_nodes == 16
    assert sum(l.counted_nodes for l in d.layers) == 242


def test_h_forkjoin_layers():
    d = build_diagram(build_demo("h_forkjoin"))
    assert _live_counts(d) == [1, 1, 2]
    assert d.final_live == (0,)
    assert d.num_edges == 3


def test_include_prep_gives_prep_layers():
    d = build_diagram(build_aa_iteration(4, {3}), CountingPolicy(include_prep=True))
    assert _live_counts(d)[:6] == [1, 1, 2, 4, 8, 16]
    assert len(d.layers) == 23
    assert validate_diagram(d).ok


def test_alternative_aa_convention_also_totals_242():
    # spawning H's counted (1+2+4+8) and a single-node oracle
    c = build_aa_iteration(4, {3})
    text = "\n".join(
        line.replace("PER_STATE", "ABSTRACT") for line in serialize_circuit(c).splitlines()
    )
    d = build_diagram(parse_circuit(text), CountingPolicy(include_prep=True))
    assert sum(l.counted_nodes for l in d.layers) == 242
    assert len(d.layers) == 23


@pytest.mark.parametrize(
    "circuit",
    [build_qft(4, 2), build_qft(5, 3), build_aa_iteration(4, {3}), build_aa_iteration(3, {1, 6}, 2),
     build_demo("h_forkjoin"), build_demo("root_of_not"), build_qft(3, 5, inverse=True)],
    ids=lambda c: c.name,
)
def test_structural_invariants(circuit):
    d = build_diagram(circuit)
    report = validate_diagram(d)
    assert report.ok, report.violations
    for t, layer in enumerate(d.layers):
        assert math.isclose(report.layer_weight_sums[t], 1, abs_tol=1e-9)
        assert all(v.weight > CountingPolicy().epsilon ** 2 for v in layer.vertices)

    ops = [g for g in circuit.ops if g.section.value == "main"]
    edges_by_layer = {}
    for (sl, sx), (dl, dx), _ in d.edges:
        assert dl == sl + 1
        edges_by_layer.setdefault(sl, []).append((sx, dx))
    for t, g in enumerate(ops[:-1]):
        pairs = edges_by_layer.get(t, [])
        live_in, live_out = set(d.layers[t].live_in), set(d.layers[t + 1].live_in)
        if g.kind in (GateKind.CPHASE, GateKind.MCZ, GateKind.ORACLE_FLIP, GateKind.PHASE):
            assert live_in == live_out
            assert all(x == y for x, y in pairs)
        if g.kind in (GateKind.NOT, GateKind.SWAP):
            assert len(live_in) == len(live_out)
            assert len(pairs) == len(live_in)
            assert len({x for x, _ in pairs}) == len({y for _, y in pairs}) == len(pairs)
        if g.kind is GateKind.H:
            assert max(Counter(x for x, _ in pairs).values()) <= 2
            assert max(Counter(y for _, y in pairs).values()) <= 2


def _backward_reachable(d):
    parents = {}
    for (sl, sx), (dl, dx), _ in d.edges:
        parents.setdefault((dl, dx), []).append((sl, sx))

    def reach(node):
        while node[0] > 0:
            node = parents[node][0]
        return node

    last = len(d.layers) - 1
    return all(reach((last, v.basis_index))[0] == 0 for v in d.layers[last].vertices)


@pytest.mark.parametrize("c", [build_qft(4, 2), build_aa_iteration(4, {3})], ids=lambda c: c.name)
def test_final_vertices_reach_layer_zero(c):
    assert _backward_reachable(build_diagram(c))


@pytest.mark.parametrize("c", [build_qft(4, 2), build_qft(6, 2), build_aa_iteration(4, {3})],
                         ids=lambda c: c.name)
@pytest.mark.parametrize("scale", [0.1, 10])
def test_live_sets_stable_under_epsilon_scaling(c, scale):
    base = build_diagram(c)
    scaled = build_diagram(c, CountingPolicy(epsilon=1e-10 * scale))
    assert [l.live_in for l in base.layers] == [l.live_in for l in scaled.layers]


def test_validate_flags_cross_layer_edge():
    layers = tuple(
        Layer(t, "H q0", 1, (0,), (Vertex(t, 0, 1.0),)) for t in range(3)
    )
    edges = np.array([[0, 0, 1, 0], [1, 0, 2, 0], [0, 0, 2, 0]])
    d = DataflowDiagram(1, layers, edges, np.ones(3))
    violations = validate_diagram(d).violations
    assert any("skips layers" in v for v in violations)


def test_validate_flags_orphan_vertex():
    d = build_diagram(build_qft(4, 2))
    keep = ~((d.edge_index[:, 2] == 5) & (d.edge_index[:, 3] == d.layers[5].live_in[0]))
    broken = DataflowDiagram(d.num_qubits, d.layers, d.edge_index[keep], d.edge_weight[keep])
    violations = validate_diagram(broken).violations
    assert any("no incoming edge" in v and "L5" in v for v in violations)


def test_validate_flags_bad_weight_sum():
    layers = (Layer(0, "WRITE 0", 1, (0,), (Vertex(0, 0, 0.5),)),)
    d = DataflowDiagram(1, layers, np.empty((0, 4), dtype=np.int64), np.empty(0))
    assert not validate_diagram(d).ok


def test_encode_counting_per_state():
    c = build_qft(3, 2)
    text = serialize_circuit(c).replace("ENCODE PHASE_SIGNAL 2 ABSTRACT", "ENCODE PHASE_SIGNAL 2 PER_STATE")
    d = build_diagram(parse_circuit(text))
    assert d.layers[1].counted_nodes == 1  # live_in before ENCODE is |0> alone
    assert parse_circuit(text).ops[1].counting is Counting.PER_STATE
