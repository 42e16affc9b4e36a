"""Independent schedule replay and a brute-force minimum-shuttle oracle."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .circuit import Circuit
from .scheduling import Cool, GateOp, Schedule, ScheduleMetrics, Shuttle, SwapOp


@dataclass(frozen=True)
class Violation:
    seq: int
    rule: str
    detail: str

    def to_json(self) -> dict:
        return {"seq": self.seq, "rule": self.rule, "detail": self.detail}


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...] = ()
    metrics: ScheduleMetrics = field(default_factory=ScheduleMetrics)

    def to_json(self) -> dict:
        m = self.metrics
        return {
            "valid": self.valid,
            "violations": [v.to_json() for v in self.violations],
            "recomputed": {"S": m.shuttles, "swaps": m.swaps, "dist": m.distance, "g": m.two_qubit_gates},
        }


def verify(circuit: Circuit, schedule: Schedule, zone: int | None = None) -> VerificationReport:
    """Replay ``schedule`` from the identity mapping with the head at 0.

    Rules: ``zone`` (gate/swap positions inside the live window), ``head``
    (head stays on the tape, shuttles move it), ``order`` (each gate hits
    its own logical operands and is the next pending gate on each of
    them), ``coverage`` (every gate runs exactly once), ``cooling`` (each
    shuttle is directly followed by a cool), plus ``final`` and
    ``metrics`` consistency with what the schedule claims.
    """
    zone = schedule.zone if zone is None else zone
    n = circuit.n_qubits
    out: list[Violation] = []

    def bad(seq: int, rule: str, detail: str) -> None:
        out.append(Violation(seq, rule, detail))

    if schedule.n != n:
        bad(-1, "head", f"schedule tape has {schedule.n} slots, circuit has {n} qubits")
    if zone > n or zone < 1:
        bad(-1, "head", f"zone {zone} does not fit a tape of {n}")
        return VerificationReport(False, tuple(out))

    # per-qubit program order, independent of the DAG code
    queues: list[deque[int]] = [deque() for _ in range(n)]
    gates = {}
    for g in circuit.gates:
        gates[g.id] = g
        for q in g.qubits:
            queues[q].append(g.id)
    done: set[int] = set()

    at = list(range(n))
    head = 0
    shuttles = swaps = dist = two_q = 0
    events = schedule.events
    for seq, ev in enumerate(events):
        if isinstance(ev, (GateOp, SwapOp)):
            for p in ev.positions:
                if not (0 <= p < n and head <= p < head + zone):
                    bad(seq, "zone", f"position {p} outside zone [{head}, {head + zone})")
            if len(set(ev.positions)) != len(ev.positions):
                bad(seq, "zone", f"repeated position in {ev.positions}")
            if any(not 0 <= p < n for p in ev.positions):
                continue
        if isinstance(ev, GateOp):
            g = gates.get(ev.gate)
            if g is None:
                bad(seq, "coverage", f"unknown gate id {ev.gate}")
                continue
            if ev.gate in done:
                bad(seq, "coverage", f"gate {ev.gate} executed twice")
                continue
            logical = tuple(at[p] for p in ev.positions)
            if logical != g.qubits:
                bad(seq, "order", f"gate {ev.gate} hits qubits {logical}, expected {g.qubits}")
            for q in g.qubits:
                if not queues[q] or queues[q][0] != ev.gate:
                    nxt = queues[q][0] if queues[q] else None
                    bad(seq, "order", f"gate {ev.gate} runs before gate {nxt} on qubit {q}")
            for q in g.qubits:
                try:
                    queues[q].remove(ev.gate)
                except ValueError:
                    pass
            done.add(ev.gate)
            if g.is_two_qubit:
                two_q += 1
        elif isinstance(ev, SwapOp):
            a, b = ev.positions
            at[a], at[b] = at[b], at[a]
            swaps += 1
        elif isinstance(ev, Shuttle):
            if ev.delta == 0:
                bad(seq, "head", "shuttle with zero displacement")
            head += ev.delta
            if not 0 <= head <= n - zone:
                bad(seq, "head", f"head {head} outside [0, {n - zone}]")
            shuttles += 1
            dist += abs(ev.delta)
            if seq + 1 >= len(events) or not isinstance(events[seq + 1], Cool):
                bad(seq, "cooling", "shuttle not followed by a cool")
        elif isinstance(ev, Cool):
            if seq == 0 or not isinstance(events[seq - 1], Shuttle):
                bad(seq, "cooling", "cool without a preceding shuttle")
        else:
            bad(seq, "zone", f"unknown event {ev!r}")

    missing = [g.id for g in circuit.gates if g.id not in done]
    if missing:
        bad(len(events), "coverage", f"{len(missing)} gate(s) never executed, first {missing[0]}")

    pos_of = [0] * n
    for p, q in enumerate(at):
        pos_of[q] = p
    if tuple(pos_of) != schedule.final.pos_of or head != schedule.final.head:
        bad(len(events), "final", "replayed tape state differs from the reported final state")
    metrics = ScheduleMetrics(shuttles, swaps, dist, two_q)
    if metrics != schedule.metrics:
        bad(len(events), "metrics", f"reported {schedule.metrics}, replay gives {metrics}")
    return VerificationReport(not out, tuple(out), metrics)


def optimal_shuttles_bruteforce(circuit: Circuit, zone: int, max_gates: int = 20) -> int:
    """Fewest shuttles that execute ``circuit`` (n <= 6, zone <= 3).

    0-1 breadth-first search over (ion order, head, executed set).  Swaps
    inside the zone are free, shuttles cost one, and executable gates are
    run eagerly since running a gate never hurts.
    """
    n = circuit.n_qubits
    if n > 6 or zone > 3:
        raise ValueError(f"oracle limited to n <= 6 and zone <= 3 (got n={n}, zone={zone})")
    if zone < 2 or zone > n:
        raise ValueError(f"zone {zone} invalid for {n} qubits")
    gates = circuit.gates
    if len(gates) > max_gates:
        raise ValueError(f"oracle limited to {max_gates} gates, circuit has {len(gates)}")

    pred_mask = []
    last_on = [-1] * n
    for i, g in enumerate(gates):
        m = 0
        for q in g.qubits:
            if last_on[q] >= 0:
                m |= 1 << last_on[q]
            last_on[q] = i
        pred_mask.append(m)
    full = (1 << len(gates)) - 1

    def run_ready(at: tuple[int, ...], head: int, done: int) -> int:
        inzone = set(at[head:head + zone])
        changed = True
        while changed:
            changed = False
            for i, g in enumerate(gates):
                if done >> i & 1 or pred_mask[i] & ~done:
                    continue
                if all(q in inzone for q in g.qubits):
                    done |= 1 << i
                    changed = True
        return done

    start_at = tuple(range(n))
    start = (start_at, 0, run_ready(start_at, 0, 0))
    dist = {start: 0}
    dq = deque([start])
    while dq:
        state = dq.popleft()
        at, head, done = state
        d = dist[state]
        if done == full:
            return d
        nexts = []
        for i in range(head, head + zone):
            for j in range(i + 1, head + zone):
                swapped = list(at)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                t = tuple(swapped)
                nexts.append(((t, head, run_ready(t, head, done)), 0))
        for h2 in range(n - zone + 1):
            if h2 != head:
                nexts.append(((at, h2, run_ready(at, h2, done)), 1))
        for nxt, w in nexts:
            nd = d + w
            if nd < dist.get(nxt, 1 << 30):
                dist[nxt] = nd
                if w == 0:
                    dq.appendleft(nxt)
                else:
                    dq.append(nxt)
    raise RuntimeError("oracle search exhausted without executing every gate")
