from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltc import (
    Circuit,
    build_dependency_graph,
    FidelityParams,
    GateTimeModel,
    TapeState,
    TimingParams,
    execution_time,
    gate_time,
    generate_benchmark,
    schedule_blocks,
    success_rate,
    tilt_blocking,
    verify,
)
from tiltc.costmodel import gate_fidelity, gate_layers, success_rate_from_counts
from tiltc.scheduling import Cool, GateOp, Schedule, ScheduleMetrics, Shuttle, SwapOp


def _schedule(events, n=32, zone=8, head=0):
    ev = tuple(events)
    shuttles = [e for e in ev if isinstance(e, Shuttle)]
    metrics = ScheduleMetrics(
        len(shuttles),
        sum(isinstance(e, SwapOp) for e in ev),
        sum(abs(e.delta) for e in shuttles),
        sum(isinstance(e, GateOp) and len(e.positions) == 2 for e in ev),
    )
    return Schedule(n, zone, ev, TapeState(tuple(range(n)), head, zone), metrics)


def test_gate_times():
    assert gate_time(GateTimeModel.TROUT_AM, 1) == 48
    assert gate_time(GateTimeModel.DUAN_AM, 1) == 78
    assert gate_time(GateTimeModel.PM, 1) == 165
    with pytest.raises(ValueError):
        gate_time(GateTimeModel.PM, 0)


def test_pm_beats_trout_from_distance_five():
    for d in range(1, 200):
        faster = gate_time(GateTimeModel.PM, d) < gate_time(GateTimeModel.TROUT_AM, d)
        assert faster == (d >= 5)


def test_model_labels():
    assert GateTimeModel.from_label("PM") is GateTimeModel.PM
    with pytest.raises(ValueError):
        GateTimeModel.from_label("fast")


def test_param_validation():
    with pytest.raises(ValueError):
        TimingParams(ion_pitch_um=0)
    with pytest.raises(ValueError):
        FidelityParams(eps_shuttle=1.0)


def test_empty_schedule_time():
    assert execution_time(_schedule([])).t_exec_us == 10_200


def test_single_shuttle_time():
    s = _schedule([Shuttle(10), Cool()], head=10)
    assert execution_time(s).t_exec_us == 10_290


def test_layers_parallelize_disjoint_gates_and_respect_shuttles():
    ev = [GateOp(0, (0, 1)), GateOp(1, (2, 3)), GateOp(2, (1, 2)), Shuttle(1), Cool(), GateOp(3, (5, 6))]
    layers, dists, idx = gate_layers(_schedule(ev, head=1))
    assert layers == [1, 1, 2, 3]
    assert dists == [1, 1, 1, 1]
    t = execution_time(_schedule(ev, head=1), GateTimeModel.TROUT_AM)
    assert t.gate_us == 3 * 48 and t.layers == 3


def test_gate_time_uses_distance():
    s = _schedule([GateOp(0, (0, 5))])
    assert execution_time(s, GateTimeModel.DUAN_AM).gate_us == 100 * 5 - 22


def test_unverified_schedule_rejected():
    c = Circuit.from_ops(4, [("cx", (0, 1))])
    bad = _schedule([GateOp(0, (0, 3))], n=4, zone=2)
    report = verify(c, bad)
    assert not report.valid
    with pytest.raises(ValueError):
        execution_time(bad, report=report)


def test_gate_fidelity_zone16():
    assert gate_fidelity(FidelityParams(), 16) == pytest.approx(0.999)


def test_success_rate_trivial_and_example():
    assert success_rate_from_counts(0, 0, 16) == 1.0
    value = success_rate_from_counts(4368, 48, 16)
    expected = 0.999**4368 * math.prod(1 - 0.001 * m for m in range(1, 49))
    assert value == pytest.approx(expected, rel=1e-12)
    assert 3.5e-3 <= value <= 4.5e-3


def test_success_rate_clamps_and_reset():
    assert success_rate_from_counts(0, 1001, 16) == 0.0
    assert success_rate_from_counts(0, 10, 16, reset_shuttle_index=True) == pytest.approx(0.999**10)
    with pytest.raises(ValueError):
        success_rate_from_counts(1, 1, 1)
    assert success_rate_from_counts(1, 0, 600) == 0.0


def test_swaps_count_as_gates():
    c = generate_benchmark("qft", 32)
    s = schedule_blocks(tilt_blocking(c, 8), c, 8)
    m = s.metrics
    assert success_rate(s) == pytest.approx(success_rate_from_counts(m.two_qubit_gates + m.swaps, m.shuttles, 8))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 3000), st.integers(0, 200), st.integers(2, 64))
def test_success_rate_monotone(g, s, n):
    base = success_rate_from_counts(g, s, n)
    if base > 0:
        assert success_rate_from_counts(g + 1, s, n) < base
        assert success_rate_from_counts(g, s + 1, n) < base
        if g > 0:
            assert success_rate_from_counts(g, s, n + 1) < base


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 20), st.integers(0, 5))
def test_execution_time_monotone(dist, extra):
    one = _schedule([Shuttle(dist), Cool()], head=dist)
    farther = _schedule([Shuttle(dist + 1), Cool()], head=dist + 1)
    more = _schedule([Shuttle(dist), Cool()] + [Shuttle(1), Cool(), Shuttle(-1), Cool()] * (extra + 1), head=dist)
    assert execution_time(farther).t_exec_us > execution_time(one).t_exec_us
    assert execution_time(more).t_exec_us > execution_time(one).t_exec_us


def test_shuttle_loss_exceeds_gate_loss():
    f = FidelityParams()
    fg = gate_fidelity(f, 16)
    # the first shuttle and one gate cost the same at default parameters
    assert 1 - f.eps_shuttle * 1 == pytest.approx(fg)
    for m in range(2, 101):
        assert 1 - f.eps_shuttle * m < fg**m


def test_layering_validity_on_benchmark():
    c = generate_benchmark("rcs-like", 32, seed=1)
    s = schedule_blocks(tilt_blocking(c, 8), c, 8)
    layers, _, idx = gate_layers(s)
    seen: dict[int, set[int]] = {}
    for layer, k in zip(layers, idx):
        ps = set(s.events[k].positions)
        assert not ps & seen.setdefault(layer, set())
        seen[layer] |= ps
    two_q = Circuit(c.n_qubits, tuple(g for g in c.gates if g.is_two_qubit))
    assert max(layers) >= build_dependency_graph(two_q).longest_path()
