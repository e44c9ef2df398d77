"""Circuit container, builders for the case-study circuits, and dense oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from .errors import CircuitValidationError, DomainError, ResourceError
from .sim import (
    MAX_DENSE_QUBITS,
    Counting,
    Gate,
    GateKind,
    Section,
    new_basis_state,
    simulate,
)


@dataclass(frozen=True)
class Circuit:
    """Ordered op sequence: WRITE, optional ENCODE, prep block, main body."""

    num_qubits: int
    ops: tuple[Gate, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        validate_circuit(self)

    @property
    def gates(self) -> tuple[Gate, ...]:
        """Ops excluding WRITE/ENCODE pseudo-ops."""
        return tuple(g for g in self.ops if g.is_unitary)

    def final_state(self) -> np.ndarray:
        return simulate(self.ops, self.num_qubits)


def validate_circuit(circuit: Circuit) -> None:
    n = circuit.num_qubits
    ops = circuit.ops
    if n < 1:
        raise CircuitValidationError("a circuit needs at least one qubit")
    for i, g in enumerate(ops):
        if max(g.qubits) >= n:
            raise CircuitValidationError(
                f"op {i} ({g.kind.name}) uses qubit {max(g.qubits)} >= {n}"
            )
        if g.kind in (GateKind.WRITE, GateKind.ENCODE_PHASE_SIGNAL, GateKind.ORACLE_FLIP):
            if len(g.qubits) != n:
                raise CircuitValidationError(f"op {i} ({g.kind.name}) must span the register")
        if g.kind is GateKind.WRITE and i != 0:
            raise CircuitValidationError("WRITE may only be the first op")
        if g.kind is GateKind.ENCODE_PHASE_SIGNAL and not (
            i == 0 or (i == 1 and ops[0].kind is GateKind.WRITE)
        ):
            raise CircuitValidationError("ENCODE must directly follow WRITE")
    # prep ops: one contiguous block right after the leading pseudo-ops
    start = 0
    while start < len(ops) and not ops[start].is_unitary:
        start += 1
    in_prep = True
    for i in range(start, len(ops)):
        prep = ops[i].section is Section.PREP
        if prep and not in_prep:
            raise CircuitValidationError(f"prep op {i} follows a main-section op")
        in_prep = in_prep and prep
    for i in range(start):
        if ops[i].section is Section.PREP:
            raise CircuitValidationError("pseudo-ops cannot be tagged prep")


def _write(n: int, basis: int = 0) -> Gate:
    return Gate(GateKind.WRITE, tuple(range(n)), basis=basis, counting=Counting.ABSTRACT)


def qft_gates(num_qubits: int, inverse: bool = False) -> list[Gate]:
    """H + controlled-phase blocks from the top qubit down, then the reversal SWAPs."""
    gates = []
    for j in range(num_qubits - 1, -1, -1):
        gates.append(Gate(GateKind.H, (j,)))
        for c in range(j - 1, -1, -1):
            gates.append(Gate(GateKind.CPHASE, (c, j), angle=math.pi / 2 ** (j - c)))
    for i in range(num_qubits // 2):
        gates.append(Gate(GateKind.SWAP, (i, num_qubits - 1 - i)))
    if inverse:
        gates = [
            replace(g, angle=-g.angle) if g.angle is not None else g for g in reversed(gates)
        ]
    return gates


def build_qft(num_qubits: int, frequency: int, inverse: bool = False) -> Circuit:
    if num_qubits < 1:
        raise DomainError("QFT needs at least one qubit")
    if not 0 <= frequency < 1 << num_qubits:
        raise DomainError(f"frequency {frequency} out of range for {num_qubits} qubits")
    encode = Gate(
        GateKind.ENCODE_PHASE_SIGNAL,
        tuple(range(num_qubits)),
        frequency=frequency,
        counting=Counting.ABSTRACT,
    )
    ops = [_write(num_qubits), encode, *qft_gates(num_qubits, inverse)]
    name = f"{'iqft' if inverse else 'qft'}-n{num_qubits}-f{frequency}"
    return Circuit(num_qubits, tuple(ops), name)


def diffusion_gates(num_qubits: int) -> list[Gate]:
    qs = range(num_qubits)
    return (
        [Gate(GateKind.H, (q,)) for q in qs]
        + [Gate(GateKind.NOT, (q,)) for q in qs]
        + [Gate(GateKind.MCZ, tuple(qs))]
        + [Gate(GateKind.NOT, (q,)) for q in qs]
        + [Gate(GateKind.H, (q,)) for q in qs]
    )


def build_aa_iteration(
    num_qubits: int, marked: Iterable[int], iterations: int = 1
) -> Circuit:
    marked = frozenset(int(m) for m in marked)
    if not marked:
        raise DomainError("marked set must be non-empty")
    if min(marked) < 0 or max(marked) >= 1 << num_qubits:
        raise DomainError(f"marked index out of range for {num_qubits} qubits")
    if iterations < 1:
        raise DomainError("at least one iteration is required")
    allq = tuple(range(num_qubits))
    ops = [_write(num_qubits)]
    ops += [Gate(GateKind.H, (q,), section=Section.PREP) for q in allq]
    oracle = Gate(GateKind.ORACLE_FLIP, allq, marked=marked, counting=Counting.PER_STATE)
    for _ in range(iterations):
        ops.append(oracle)
        ops += diffusion_gates(num_qubits)
    label = ",".join(str(m) for m in sorted(marked))
    return Circuit(num_qubits, tuple(ops), f"aa-n{num_qubits}-m{label}-k{iterations}")


def build_demo(name: str) -> Circuit:
    if name == "root_of_not":
        g = Gate(GateKind.ROOT_OF_NOT, (0,))
    elif name == "h_forkjoin":
        g = Gate(GateKind.H, (0,))
    else:
        raise DomainError(f"unknown demo {name!r}")
    return Circuit(1, (_write(1), g, g), name)


def dft_matrix(num_qubits: int) -> np.ndarray:
    """Dense unitary with entries ``exp(2*pi*i*x*y/2**n)/sqrt(2**n)``."""
    if num_qubits > MAX_DENSE_QUBITS:
        raise ResourceError(f"refusing dense {num_qubits}-qubit DFT")
    dim = 1 << num_qubits
    k = np.arange(dim)
    xy = np.outer(k, k) % dim
    return np.exp(2j * np.pi * xy / dim) / math.sqrt(dim)


def reflection_grover_state(
    num_qubits: int, marked: Iterable[int], iterations: int = 1
) -> np.ndarray:
    """Apply (2|s><s| - I) O_marked to the uniform state, built from dense matrices."""
    if num_qubits > MAX_DENSE_QUBITS:
        raise ResourceError(f"refusing dense {num_qubits}-qubit reflection")
    dim = 1 << num_qubits
    s = np.full(dim, 1 / math.sqrt(dim), dtype=np.complex128)
    oracle = np.eye(dim, dtype=np.complex128)
    for m in marked:
        oracle[m, m] = -1
    reflect = 2 * np.outer(s, s.conj()) - np.eye(dim)
    state = s.copy()
    for _ in range(iterations):
        state = reflect @ (oracle @ state)
    return state


def grover_success_probability(num_qubits: int, marked: int, iterations: int) -> float:
    state = build_aa_iteration(num_qubits, {marked}, iterations).final_state()
    return float(abs(state[marked]) ** 2)


def grover_optimal_iterations(num_qubits: int) -> int:
    """Iteration count maximizing simulated single-target success probability.

    Scans every ``k`` from 1 to ``floor(sqrt(2**n)) + 2``; ties go to the
    smaller ``k``.
    """
    if num_qubits < 2:
        raise DomainError("need at least two qubits")
    k_max = math.isqrt(1 << num_qubits) + 2
    best_k, best_p = 1, -1.0
    for k in range(1, k_max + 1):
        p = grover_success_probability(num_qubits, 0, k)
        if p > best_p + 1e-12:
            best_k, best_p = k, p
    return best_k


def initial_state(circuit: Circuit) -> np.ndarray:
    basis = next((g.basis for g in circuit.ops if g.kind is GateKind.WRITE), 0)
    return new_basis_state(circuit.num_qubits, basis)
