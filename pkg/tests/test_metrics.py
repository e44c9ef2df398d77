import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qdataflow.circuits import build_aa_iteration, build_demo, build_qft
from qdataflow.dataflow import build_diagram
from qdataflow.errors import DomainError
from qdataflow.metrics import (
    SpeedupQuery,
    amdahl_speedup,
    compute_report,
    gustafson_speedup,
    longest_path_vertices,
    qft_closed_form_parallelism,
)


def test_qft4_report():
    r = compute_report(build_diagram(build_qft(4, 2)))
    assert (r.t_work, r.t_span) == (68, 14)
    assert r.parallelism == pytest.approx(68 / 14, abs=1e-12)
    assert round(r.parallelism, 2) == 4.86
    assert round(r.eta_p, 1) == 0.3 and round(r.eta_di, 1) == 0.7


def test_aa4_report():
    r = compute_report(build_diagram(build_aa_iteration(4, {3})))
    assert (r.t_work, r.t_span) == (242, 19)
    assert round(r.parallelism, 1) == 12.7
    assert round(r.eta_p, 1) == 0.8 and round(r.eta_di, 1) == 0.2


def test_h_forkjoin_report():
    r = compute_report(build_diagram(build_demo("h_forkjoin")))
    assert (r.t_work, r.t_span) == (4, 3)
    assert r.parallelism == pytest.approx(4 / 3)


def test_report_invariants():
    for c in (build_qft(5, 2), build_aa_iteration(5, {7}, 2), build_qft(4, 9, inverse=True)):
        d = build_diagram(c)
        r = compute_report(d)
        assert r.t_work == sum(s.counted_nodes for s in r.per_layer)
        assert r.t_span == len(d.layers) == longest_path_vertices(d)
        assert r.t_span <= r.t_work
        assert r.eta_p + r.eta_di == 1
        assert 0 < r.eta_p <= 1


def _closed_form_exact(n):
    return Fraction(n * 2**n + n // 2 + 2) / (Fraction(n * (n + 1), 2) + n // 2 + 2)


def test_closed_form_values():
    assert qft_closed_form_parallelism(4) == pytest.approx(68 / 14, abs=1e-12)
    assert qft_closed_form_parallelism(3) == pytest.approx(3.0, abs=1e-12)
    assert qft_closed_form_parallelism(2) == pytest.approx(11 / 6, abs=1e-12)
    with pytest.raises(DomainError):
        qft_closed_form_parallelism(1)


@pytest.mark.parametrize("n", range(2, 9))
def test_diagram_matches_closed_form(n):
    r = compute_report(build_diagram(build_qft(n, 2)))
    assert r.parallelism == pytest.approx(qft_closed_form_parallelism(n), abs=1e-12)
    assert Fraction(r.t_work, r.t_span) == _closed_form_exact(n)


def test_efficiency_trend():
    reports = [compute_report(build_diagram(build_qft(n, 2))) for n in range(3, 11)]
    for a, b in itertools.pairwise(reports):
        assert b.eta_p < a.eta_p
        assert b.eta_di > a.eta_di


def test_amdahl():
    assert amdahl_speedup(SpeedupQuery(0.5, 1e12)) == pytest.approx(2.0, abs=1e-9)
    assert amdahl_speedup(SpeedupQuery(0.0, 16)) == 16
    assert amdahl_speedup(SpeedupQuery(1.0, 1000)) == 1
    assert amdahl_speedup(SpeedupQuery(0.0, math.inf)) == math.inf


def test_gustafson():
    assert gustafson_speedup(SpeedupQuery(0, 64)) == 64
    assert gustafson_speedup(SpeedupQuery(1, 64)) == 1
    assert gustafson_speedup(SpeedupQuery(0.5, 16)) == 8.5


def test_query_bounds():
    with pytest.raises(DomainError):
        SpeedupQuery(1.5, 2)
    with pytest.raises(DomainError):
        SpeedupQuery(0.5, 0.5)


fractions_ = st.floats(min_value=1e-6, max_value=1.0)
parallelisms = st.floats(min_value=1.0, max_value=1e9)


@given(fractions_, parallelisms, parallelisms)
def test_amdahl_bounded_and_monotone(f, p1, p2):
    lo, hi = sorted((p1, p2))
    s_lo = amdahl_speedup(SpeedupQuery(f, lo))
    s_hi = amdahl_speedup(SpeedupQuery(f, hi))
    assert s_lo <= s_hi * (1 + 1e-12)
    assert s_hi <= min(hi, 1 / f) * (1 + 1e-12)
