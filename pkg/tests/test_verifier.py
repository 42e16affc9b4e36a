from __future__ import annotations

import dataclasses
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltc import (
    Circuit,
    TapeState,
    generate_benchmark,
    optimal_shuttles_bruteforce,
    schedule_baseline,
    schedule_blocks,
    tilt_blocking,
    verify,
)
from tiltc.scheduling import Cool, GateOp, Schedule, ScheduleMetrics, Shuttle, SwapOp

from conftest import random_circuit


def _sched(c, zone, events, head=0, pos_of=None, metrics=None):
    n = c.n_qubits
    ev = tuple(events)
    if metrics is None:
        sh = [e for e in ev if isinstance(e, Shuttle)]
        metrics = ScheduleMetrics(
            len(sh),
            sum(isinstance(e, SwapOp) for e in ev),
            sum(abs(e.delta) for e in sh),
            sum(isinstance(e, GateOp) and len(e.positions) == 2 for e in ev),
        )
    return Schedule(n, zone, ev, TapeState(pos_of or tuple(range(n)), head, zone), metrics)


def _rules(report):
    return {v.rule for v in report.violations}


C4 = Circuit.from_ops(4, [("cx", (0, 1)), ("cx", (2, 3))])


def test_valid_hand_schedule():
    s = _sched(C4, 2, [GateOp(0, (0, 1)), Shuttle(2), Cool(), GateOp(1, (2, 3))], head=2)
    r = verify(C4, s)
    assert r.valid and r.violations == ()
    assert r.to_json()["recomputed"] == {"S": 1, "swaps": 0, "dist": 2, "g": 2}


def test_gate_outside_zone():
    s = _sched(C4, 2, [GateOp(0, (0, 1)), GateOp(1, (2, 3))])
    assert "zone" in _rules(verify(C4, s))


def test_missing_gate():
    s = _sched(C4, 2, [GateOp(0, (0, 1))])
    assert _rules(verify(C4, s)) == {"coverage"}


def test_duplicate_gate():
    s = _sched(C4, 4, [GateOp(0, (0, 1)), GateOp(0, (0, 1)), GateOp(1, (2, 3))])
    assert "coverage" in _rules(verify(C4, s))


def test_wrong_operands_and_order():
    c = Circuit.from_ops(3, [("cx", (0, 1)), ("cx", (1, 2))])
    s = _sched(c, 3, [GateOp(1, (1, 2)), GateOp(0, (0, 1))])
    assert _rules(verify(c, s)) == {"order"}
    s = _sched(c, 3, [GateOp(0, (1, 0)), GateOp(1, (1, 2))])
    assert "order" in _rules(verify(c, s))


def test_swap_changes_mapping():
    c = Circuit.from_ops(3, [("cx", (0, 2))])
    s = _sched(c, 2, [SwapOp((0, 1)), Shuttle(1), Cool(), GateOp(0, (1, 2))], head=1, pos_of=(1, 0, 2))
    assert verify(c, s).valid


def test_missing_cool_and_orphan_cool():
    s = _sched(C4, 2, [GateOp(0, (0, 1)), Shuttle(2), GateOp(1, (2, 3))], head=2)
    assert "cooling" in _rules(verify(C4, s))
    s = _sched(C4, 4, [Cool(), GateOp(0, (0, 1)), GateOp(1, (2, 3))])
    assert "cooling" in _rules(verify(C4, s))


def test_head_off_tape():
    s = _sched(C4, 2, [GateOp(0, (0, 1)), Shuttle(3), Cool(), Shuttle(-1), Cool(), GateOp(1, (2, 3))], head=2)
    assert "head" in _rules(verify(C4, s))


def test_metrics_and_final_mismatch():
    good = _sched(C4, 2, [GateOp(0, (0, 1)), Shuttle(2), Cool(), GateOp(1, (2, 3))], head=2)
    lying = dataclasses.replace(good, metrics=ScheduleMetrics(0, 0, 0, 2))
    assert _rules(verify(C4, lying)) == {"metrics"}
    moved = dataclasses.replace(good, final=TapeState((0, 1, 2, 3), 1, 2))
    assert _rules(verify(C4, moved)) == {"final"}


def test_violations_are_data():
    s = _sched(C4, 2, [GateOp(5, (9, 9)), Shuttle(0), Cool()])
    r = verify(C4, s)
    assert not r.valid and len(r.violations) >= 2


def test_generated_schedules_valid():
    for name in ("qft", "adder-ripple", "rcs-like"):
        c = generate_benchmark(name, 24, seed=3)
        for s in (schedule_blocks(tilt_blocking(c, 8), c, 8), schedule_baseline(c, 8)):
            r = verify(c, s)
            assert r.valid and r.metrics == s.metrics


def test_verify_linear_in_events():
    def cost(n):
        c = generate_benchmark("qft", n)
        s = schedule_blocks(tilt_blocking(c, 8), c, 8)
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            verify(c, s)
            best = min(best, time.perf_counter() - t0)
        return best / len(s.events)

    assert cost(96) / cost(48) < 3.0


# --- oracle ---------------------------------------------------------------------


def test_oracle_trivial():
    assert optimal_shuttles_bruteforce(Circuit.from_ops(4, [("cx", (0, 1))]), 2) == 0
    assert optimal_shuttles_bruteforce(Circuit(5), 3) == 0


def test_oracle_far_pair():
    c = Circuit.from_ops(4, [("cx", (0, 3))])
    opt = optimal_shuttles_bruteforce(c, 2)
    assert opt == 2  # q0 walks 0 -> 1 -> 2 with a shuttle after each swap
    assert schedule_blocks(tilt_blocking(c, 2), c, 2).metrics.shuttles >= opt


def test_oracle_limits():
    with pytest.raises(ValueError):
        optimal_shuttles_bruteforce(Circuit(7), 2)
    with pytest.raises(ValueError):
        optimal_shuttles_bruteforce(Circuit(6), 4)
    with pytest.raises(ValueError):
        optimal_shuttles_bruteforce(random_circuit(4, 21, 0), 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 6), st.integers(2, 3), st.integers(1, 10))
def test_oracle_lower_bounds_both(seed, n, zone, g):
    c = random_circuit(n, g, seed)
    opt = optimal_shuttles_bruteforce(c, zone)
    assert opt <= schedule_blocks(tilt_blocking(c, zone), c, zone).metrics.shuttles
    assert opt <= schedule_baseline(c, zone).metrics.shuttles
