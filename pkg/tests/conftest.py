import numpy as np
import pytest
from hypothesis import strategies as st

from qdataflow.sim import Gate, GateKind

ATOL = 1e-9


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


angles = st.floats(min_value=-2 * np.pi, max_value=2 * np.pi, allow_nan=False)


@st.composite
def gates(draw, n: int):
    """Any unitary-kind gate (incl. ORACLE_FLIP) on an ``n``-qubit register."""
    kinds = [GateKind.H, GateKind.NOT, GateKind.ROOT_OF_NOT, GateKind.ROTX,
             GateKind.ROTY, GateKind.PHASE, GateKind.MCZ, GateKind.ORACLE_FLIP]
    if n >= 2:
        kinds += [GateKind.CPHASE, GateKind.SWAP]
    kind = draw(st.sampled_from(kinds))
    qubit = st.integers(0, n - 1)
    if kind in (GateKind.CPHASE, GateKind.SWAP):
        qs = tuple(draw(st.lists(qubit, min_size=2, max_size=2, unique=True)))
    elif kind is GateKind.MCZ:
        qs = tuple(draw(st.lists(qubit, min_size=1, max_size=n, unique=True)))
    elif kind is GateKind.ORACLE_FLIP:
        marked = draw(st.frozensets(st.integers(0, (1 << n) - 1), min_size=1))
        return Gate(kind, tuple(range(n)), marked=marked)
    else:
        qs = (draw(qubit),)
    angle = draw(angles) if kind in (GateKind.ROTX, GateKind.ROTY, GateKind.PHASE,
                                     GateKind.CPHASE) else None
    return Gate(kind, qs, angle=angle)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, (ok, title) in sorted(module.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {title}")
