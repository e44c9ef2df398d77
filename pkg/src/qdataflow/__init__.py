"""Quantum dataflow diagrams and work/span parallelism metrics for gate circuits."""

from .circuits import (
    Circuit,
    build_aa_iteration,
    build_demo,
    build_qft,
    dft_matrix,
    grover_optimal_iterations,
    reflection_grover_state,
)
from .dataflow import CountingPolicy, DataflowDiagram, build_diagram, live_states, validate_diagram
from .errors import CircuitValidationError, DomainError, ResourceError, UnsupportedGateError
from .export import export_dot, export_json_report, run_sweep, sweep_to_csv
from .metrics import (
    MetricsReport,
    SpeedupQuery,
    amdahl_speedup,
    compute_report,
    gustafson_speedup,
    qft_closed_form_parallelism,
)
from .parser import CircuitParseError, ParseDiagnostic, parse_circuit, serialize_circuit
from .sim import (
    Counting,
    Gate,
    GateKind,
    Section,
    apply_gate,
    encode_phase_signal,
    gate_unitary,
    new_basis_state,
    probabilities,
    tensor_expand,
)

__version__ = "0.1.0"
