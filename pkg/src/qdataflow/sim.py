"""Exact state-vector simulation for small registers.

States are 1-D ``complex128`` arrays of length ``2**n``.  Basis index ``x``
stores qubit ``q`` in bit ``q`` (qubit 0 is the least-significant bit).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, ResourceError, UnsupportedGateError

MAX_DENSE_QUBITS = 12
STATE_ATOL = 1e-9


class GateKind(enum.Enum):
    H = "H"
    NOT = "NOT"
    ROOT_OF_NOT = "SX"
    ROTX = "ROTX"
    ROTY = "ROTY"
    PHASE = "PHASE"
    CPHASE = "CP"
    SWAP = "SWAP"
    MCZ = "MCZ"
    ORACLE_FLIP = "ORACLE"
    WRITE = "WRITE"
    ENCODE_PHASE_SIGNAL = "ENCODE"


class Counting(enum.Enum):
    ABSTRACT = "abstract"
    PER_STATE = "per_state"


class Section(enum.Enum):
    PREP = "prep"
    MAIN = "main"


ANGLE_KINDS = frozenset({GateKind.ROTX, GateKind.ROTY, GateKind.PHASE, GateKind.CPHASE})
PSEUDO_KINDS = frozenset({GateKind.WRITE, GateKind.ENCODE_PHASE_SIGNAL})
DIAGONAL_KINDS = frozenset(
    {GateKind.PHASE, GateKind.CPHASE, GateKind.MCZ, GateKind.ORACLE_FLIP}
)
_ARITY = {
    GateKind.H: 1,
    GateKind.NOT: 1,
    GateKind.ROOT_OF_NOT: 1,
    GateKind.ROTX: 1,
    GateKind.ROTY: 1,
    GateKind.PHASE: 1,
    GateKind.CPHASE: 2,
    GateKind.SWAP: 2,
}


@dataclass(frozen=True)
class Gate:
    """One operation of a circuit.

    ``qubits`` lists the acted qubits; for multi-qubit matrices ``qubits[0]``
    is the least-significant bit of the local index.  ``CPHASE`` uses
    ``(control, target)``.  Register-wide ops (ORACLE_FLIP, WRITE, ENCODE)
    carry every qubit of the register.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    angle: Optional[float] = None
    marked: Optional[frozenset[int]] = None
    frequency: Optional[int] = None
    basis: Optional[int] = None
    counting: Counting = Counting.PER_STATE
    section: Section = Section.MAIN

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if not self.qubits:
            raise DomainError(f"{self.kind.name}: qubit list is empty")
        if len(set(self.qubits)) != len(self.qubits):
            raise DomainError(f"{self.kind.name}: duplicate qubit in {self.qubits}")
        if min(self.qubits) < 0:
            raise DomainError(f"{self.kind.name}: negative qubit index")
        arity = _ARITY.get(self.kind)
        if arity is not None and len(self.qubits) != arity:
            raise DomainError(
                f"{self.kind.name} acts on {arity} qubit(s), got {len(self.qubits)}"
            )
        if (self.angle is not None) != (self.kind in ANGLE_KINDS):
            raise DomainError(f"{self.kind.name}: angle present iff rotation/phase kind")
        if self.angle is not None:
            object.__setattr__(self, "angle", float(self.angle))
        if (self.marked is not None) != (self.kind is GateKind.ORACLE_FLIP):
            raise DomainError(f"{self.kind.name}: marked set present iff ORACLE_FLIP")
        if self.marked is not None:
            marked = frozenset(int(m) for m in self.marked)
            if not marked:
                raise DomainError("ORACLE_FLIP needs a non-empty marked set")
            if min(marked) < 0 or max(marked) >= 1 << len(self.qubits):
                raise DomainError(f"marked index out of range: {sorted(marked)}")
            object.__setattr__(self, "marked", marked)
        if (self.frequency is not None) != (self.kind is GateKind.ENCODE_PHASE_SIGNAL):
            raise DomainError(f"{self.kind.name}: frequency present iff ENCODE")
        if self.frequency is not None and not 0 <= self.frequency < 1 << len(self.qubits):
            raise DomainError(f"frequency {self.frequency} out of range")
        if (self.basis is not None) != (self.kind is GateKind.WRITE):
            raise DomainError(f"{self.kind.name}: basis present iff WRITE")
        if self.basis is not None and not 0 <= self.basis < 1 << len(self.qubits):
            raise DomainError(f"WRITE basis {self.basis} out of range")

    @property
    def is_unitary(self) -> bool:
        return self.kind not in PSEUDO_KINDS


def new_basis_state(num_qubits: int, basis_index: int) -> np.ndarray:
    if num_qubits < 0:
        raise DomainError("num_qubits must be non-negative")
    dim = 1 << num_qubits
    if not 0 <= basis_index < dim:
        raise DomainError(f"basis index {basis_index} out of range for {num_qubits} qubits")
    state = np.zeros(dim, dtype=np.complex128)
    state[basis_index] = 1.0
    return state


def num_qubits_of(state: np.ndarray) -> int:
    dim = len(state)
    n = dim.bit_length() - 1
    if dim < 1 or 1 << n != dim:
        raise DomainError(f"state length {dim} is not a power of two")
    return n


_SQRT_HALF = 1 / math.sqrt(2)


def _single_qubit_matrix(kind: GateKind, angle: Optional[float]) -> np.ndarray:
    if kind is GateKind.H:
        return _SQRT_HALF * np.array([[1, 1], [1, -1]], dtype=np.complex128)
    if kind is GateKind.NOT:
        return np.array([[0, 1], [1, 0]], dtype=np.complex128)
    if kind is GateKind.ROOT_OF_NOT:
        return 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=np.complex128)
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    if kind is GateKind.ROTX:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    if kind is GateKind.ROTY:
        return np.array([[c, -s], [s, c]], dtype=np.complex128)
    if kind is GateKind.PHASE:
        return np.diag([1, np.exp(1j * angle)]).astype(np.complex128)
    raise AssertionError(kind)


def diagonal_of(gate: Gate) -> Optional[np.ndarray]:
    """Diagonal of the local matrix for diagonal kinds, else ``None``."""
    k = len(gate.qubits)
    if gate.kind is GateKind.PHASE:
        return np.array([1, np.exp(1j * gate.angle)], dtype=np.complex128)
    if gate.kind is GateKind.CPHASE:
        return np.array([1, 1, 1, np.exp(1j * gate.angle)], dtype=np.complex128)
    if gate.kind is GateKind.MCZ:
        d = np.ones(1 << k, dtype=np.complex128)
        d[-1] = -1
        return d
    if gate.kind is GateKind.ORACLE_FLIP:
        d = np.ones(1 << k, dtype=np.complex128)
        d[sorted(gate.marked)] = -1
        return d
    return None


def gate_unitary(gate: Gate) -> np.ndarray:
    """Local ``2**k x 2**k`` matrix of a gate on its ``k`` acted qubits."""
    if not gate.is_unitary:
        raise UnsupportedGateError(f"{gate.kind.name} has no unitary matrix")
    if gate.kind in _ARITY and _ARITY[gate.kind] == 1:
        return _single_qubit_matrix(gate.kind, gate.angle)
    if gate.kind is GateKind.SWAP:
        return np.array(
            [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
        )
    if len(gate.qubits) > MAX_DENSE_QUBITS:
        raise ResourceError(f"dense matrix on {len(gate.qubits)} qubits refused")
    return np.diag(diagonal_of(gate))


def encode_phase_signal(num_qubits: int, frequency: int) -> np.ndarray:
    """Equal-magnitude state with phase ``-2*pi*f*x/2**n`` on basis ``x``."""
    dim = 1 << num_qubits
    if not 0 <= frequency < dim:
        raise DomainError(f"frequency {frequency} out of range for {num_qubits} qubits")
    x = np.arange(dim)
    # reduce f*x mod dim first so the phase is exact at the quarter turns
    return np.exp(-2j * np.pi * ((frequency * x) % dim) / dim) / math.sqrt(dim)


def _local_index(xs: np.ndarray, qubits: tuple[int, ...]) -> np.ndarray:
    out = np.zeros_like(xs)
    for i, q in enumerate(qubits):
        out |= ((xs >> q) & 1) << i
    return out


def apply_gate(state: np.ndarray, gate: Gate) -> np.ndarray:
    """Apply ``gate`` to ``state`` as I x ... x U x ... x I; returns a new array.

    WRITE leaves the prepared basis state untouched and ENCODE replaces the
    state with the encoded phase signal.
    """
    n = num_qubits_of(state)
    if max(gate.qubits) >= n:
        raise DomainError(f"qubit index {max(gate.qubits)} out of range for {n} qubits")
    if gate.kind is GateKind.WRITE:
        return np.array(state, dtype=np.complex128)
    if gate.kind is GateKind.ENCODE_PHASE_SIGNAL:
        return encode_phase_signal(n, gate.frequency)

    diag = diagonal_of(gate)
    if diag is not None:
        xs = np.arange(len(state))
        return state * diag[_local_index(xs, gate.qubits)]

    k = len(gate.qubits)
    u = gate_unitary(gate).reshape([2] * (2 * k))
    psi = np.asarray(state, dtype=np.complex128).reshape([2] * n)
    # C-order reshape puts qubit n-1 on axis 0; U's first tensor axis is its MSB
    axes = [n - 1 - q for q in reversed(gate.qubits)]
    out = np.tensordot(u, psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return np.ascontiguousarray(out).reshape(-1)


def tensor_expand(gate: Gate, num_qubits: int) -> np.ndarray:
    """Full ``2**n x 2**n`` matrix of a unitary gate; brute-force test oracle."""
    if num_qubits > MAX_DENSE_QUBITS:
        raise ResourceError(f"refusing dense {num_qubits}-qubit matrix")
    if max(gate.qubits) >= num_qubits:
        raise DomainError("gate acts outside the register")
    local = gate_unitary(gate)
    dim = 1 << num_qubits
    xs = np.arange(dim)
    rest_mask = ~sum(1 << q for q in gate.qubits)
    loc = _local_index(xs, gate.qubits)
    rest = xs & rest_mask
    # element <y|U|x> is local[loc(y), loc(x)] when y, x agree off the acted qubits
    same_rest = rest[:, None] == rest[None, :]
    return np.where(same_rest, local[loc[:, None], loc[None, :]], 0).astype(np.complex128)


def probabilities(state: np.ndarray) -> np.ndarray:
    return np.abs(state) ** 2


def polar(state: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Magnitudes and phases (radians) of every amplitude."""
    return np.abs(state), np.angle(state)


def simulate(ops, num_qubits: int, initial: Optional[np.ndarray] = None) -> np.ndarray:
    """Run a sequence of gates from ``initial`` (or the WRITE basis, or |0>)."""
    if initial is None:
        basis = next((g.basis for g in ops if g.kind is GateKind.WRITE), 0)
        state = new_basis_state(num_qubits, basis)
    else:
        state = np.asarray(initial, dtype=np.complex128)
    for gate in ops:
        state = apply_gate(state, gate)
    return state
