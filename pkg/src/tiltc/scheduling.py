"""Tape-level scheduling: block scheduler, baseline mapper and the move primitive.

Positions are tape slots ``0..n-1``; the execution zone is the window
``[head, head + zone)``.  A shuttle moves the head any distance, a swap
exchanges two ions inside the zone, and every shuttle is followed by a
cooling step.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Callable, Iterable, Union

from .blocking import Block
from .circuit import Circuit, Gate
from .dag import build_dependency_graph


@dataclass(frozen=True)
class TapeState:
    pos_of: tuple[int, ...]
    head: int
    zone: int

    def __post_init__(self) -> None:
        n = len(self.pos_of)
        if sorted(self.pos_of) != list(range(n)):
            raise ValueError("pos_of must be a permutation of tape positions")
        if self.zone < 1 or self.zone > n and n > 0:
            raise ValueError(f"zone {self.zone} does not fit a tape of {n} positions")
        if not 0 <= self.head <= max(n - self.zone, 0):
            raise ValueError(f"head {self.head} outside [0, {n - self.zone}]")

    @classmethod
    def initial(cls, n: int, zone: int) -> TapeState:
        return cls(tuple(range(n)), 0, zone)

    @property
    def n(self) -> int:
        return len(self.pos_of)

    @property
    def at(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for q, p in enumerate(self.pos_of):
            inv[p] = q
        return tuple(inv)

    def in_zone(self, pos: int) -> bool:
        return self.head <= pos < self.head + self.zone


@dataclass(frozen=True)
class GateOp:
    gate: int
    positions: tuple[int, ...]
    kind = "gate"


@dataclass(frozen=True)
class SwapOp:
    positions: tuple[int, int]
    kind = "swap"


@dataclass(frozen=True)
class Shuttle:
    delta: int
    carried: int = 0
    kind = "shuttle"


@dataclass(frozen=True)
class Cool:
    kind = "cool"


Event = Union[GateOp, SwapOp, Shuttle, Cool]


def event_to_json(ev: Event, seq: int) -> dict:
    if isinstance(ev, GateOp):
        args = {"gate": ev.gate, "positions": list(ev.positions)}
    elif isinstance(ev, SwapOp):
        args = {"positions": list(ev.positions)}
    elif isinstance(ev, Shuttle):
        args = {"delta": ev.delta, "carried": ev.carried}
    else:
        args = {}
    return {"seq": seq, "kind": ev.kind, "args": args}


def event_from_json(obj: dict) -> Event:
    kind, args = obj["kind"], obj.get("args", {})
    if kind == "gate":
        return GateOp(int(args["gate"]), tuple(int(p) for p in args["positions"]))
    if kind == "swap":
        a, b = args["positions"]
        return SwapOp((int(a), int(b)))
    if kind == "shuttle":
        return Shuttle(int(args["delta"]), int(args.get("carried", 0)))
    if kind == "cool":
        return Cool()
    raise ValueError(f"unknown event kind {kind!r}")


@dataclass(frozen=True)
class ScheduleMetrics:
    shuttles: int = 0
    swaps: int = 0
    distance: int = 0
    two_qubit_gates: int = 0


@dataclass(frozen=True)
class Schedule:
    n: int
    zone: int
    events: tuple[Event, ...]
    final: TapeState
    metrics: ScheduleMetrics
    algorithm: str = "boss"
    n_blocks: int = 0
    circuit_name: str = ""
    blocks: tuple[Block, ...] = ()

    def summary(self) -> dict:
        m = self.metrics
        return {
            "S": m.shuttles,
            "swaps": m.swaps,
            "dist": m.distance,
            "g": m.two_qubit_gates,
            "L": self.n_blocks,
            "Z": self.zone,
            "n": self.n,
        }

    def to_json(self) -> dict:
        out = {
            "format": "tiltc-schedule/1",
            "algorithm": self.algorithm,
            "circuit": self.circuit_name,
            "n": self.n,
            "zone": self.zone,
            "events": [event_to_json(ev, i) for i, ev in enumerate(self.events)],
            "final": {"pos_of": list(self.final.pos_of), "head": self.final.head},
            "summary": self.summary(),
        }
        if self.blocks:
            out["blocks"] = [b.to_json() for b in self.blocks]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Schedule:
        events = tuple(event_from_json(e) for e in sorted(obj["events"], key=lambda e: e["seq"]))
        s = obj["summary"]
        zone = int(obj["zone"])
        return cls(
            n=int(obj["n"]),
            zone=zone,
            events=events,
            final=TapeState(tuple(obj["final"]["pos_of"]), int(obj["final"]["head"]), zone),
            metrics=ScheduleMetrics(s["S"], s["swaps"], s["dist"], s["g"]),
            algorithm=obj.get("algorithm", "boss"),
            n_blocks=int(s.get("L", 0)),
            circuit_name=obj.get("circuit", ""),
            blocks=tuple(Block.from_json(b) for b in obj.get("blocks", ())),
        )


class _Tape:
    """Mutable working copy of a TapeState that records the events it performs."""

    def __init__(self, state: TapeState):
        self.n = state.n
        self.zone = state.zone
        self.head = state.head
        self.pos_of = list(state.pos_of)
        self.at = list(state.at)
        self.events: list[Event] = []
        self.shuttles = 0
        self.swaps = 0
        self.distance = 0
        self.two_qubit = 0

    def snapshot(self) -> TapeState:
        return TapeState(tuple(self.pos_of), self.head, self.zone)

    def covers(self, lo: int, hi: int | None = None) -> bool:
        hi = lo if hi is None else hi
        return self.head <= lo and hi < self.head + self.zone

    def apply(self, gate: Gate) -> None:
        positions = tuple(self.pos_of[q] for q in gate.qubits)
        assert all(self.head <= p < self.head + self.zone for p in positions), "gate outside zone"
        self.events.append(GateOp(gate.id, positions))
        if len(positions) == 2:
            self.two_qubit += 1

    def swap(self, p1: int, p2: int) -> None:
        qa, qb = self.at[p1], self.at[p2]
        self.at[p1], self.at[p2] = qb, qa
        self.pos_of[qa], self.pos_of[qb] = p2, p1
        self.events.append(SwapOp((p1, p2)))
        self.swaps += 1

    def move_head(self, new_head: int, carried: int = 0) -> None:
        if new_head == self.head:
            return
        assert 0 <= new_head <= self.n - self.zone, "head off tape"
        delta = new_head - self.head
        self.events.append(Shuttle(delta, carried))
        self.events.append(Cool())
        self.head = new_head
        self.shuttles += 1
        self.distance += abs(delta)

    def cover(self, lo: int, hi: int) -> None:
        """Shuttle the minimum distance so that ``[lo, hi]`` lies in the zone."""
        if self.covers(lo, hi):
            return
        first, last = max(hi - self.zone + 1, 0), min(lo, self.n - self.zone)
        self.move_head(min(max(self.head, first), last))

    def place(self, sources: list[int], targets: list[int]) -> None:
        """Move the ions at ``sources`` onto ``targets`` keeping their order.

        Both lists are ascending, equally long, and every target lies on
        the same side of its source.  Each ion moves with one swap.
        """
        pairs = list(zip(sources, targets))
        if any(t > s for s, t in pairs):
            pairs.reverse()
        for s, t in pairs:
            if s != t:
                self.swap(s, t)


def _sweep(
    tape: _Tape,
    cohort: list[int],
    targets: list[int],
    rightward: bool,
    cover: tuple[int, int] | None,
    fits: Callable[[], bool],
) -> None:
    """Carry ``cohort`` (logical qubits) onto ``targets`` in one direction.

    The window starts at the cohort's far end, picks cohort ions up as it
    passes them, parks the carried ions at the leading zone edge and
    shuttles ahead by ``zone - carried``.  When ``cover`` is given, the
    final advance lands on a head that also covers that interval.  The
    sweep stops early once ``fits()`` reports the whole block fits in
    one window.
    """
    n, zone = tape.n, tape.zone
    pos = tape.pos_of
    if not cohort or fits() or sorted(pos[q] for q in cohort) == targets:
        return
    if rightward:
        first = min(pos[q] for q in cohort)
        if not tape.covers(first):
            tape.move_head(min(first, n - zone))
    else:
        last = max(pos[q] for q in cohort)
        if not tape.covers(last):
            tape.move_head(max(last - zone + 1, 0))

    while True:
        h = tape.head
        carried = sorted(p for p in (pos[q] for q in cohort) if h <= p < h + zone)
        c = len(carried)
        if (targets[-1] < h + zone) if rightward else (targets[0] >= h):
            tape.place(sorted(pos[q] for q in cohort), targets)
            return
        if rightward:
            tape.place(carried, list(range(h + zone - c, h + zone)))
            lo, hi = h + 1, min(h + zone - c, n - zone)
            new = hi
            if cover is not None and targets[-1] < hi + zone:
                a = max(lo, targets[-1] - zone + 1, cover[1] - zone + 1)
                b = min(hi, cover[0])
                if a <= b:
                    new = b
        else:
            tape.place(carried, list(range(h, h + c)))
            lo, hi = max(h - (zone - c), 0), h - 1
            new = lo
            if cover is not None and targets[0] >= lo:
                a = max(lo, cover[1] - zone + 1)
                b = min(hi, targets[0], cover[0])
                if a <= b:
                    new = a
        if fits():
            return
        tape.move_head(new, carried=c)


def _gather(tape: _Tape, qubits: Iterable[int]) -> None:
    """Make ``qubits`` executable: converge both cohorts on the lower median, then cover."""
    zone = tape.zone
    qs = sorted(qubits, key=lambda q: tape.pos_of[q])
    if not qs:
        return
    positions = [tape.pos_of[q] for q in qs]
    if positions[-1] - positions[0] < zone:
        tape.cover(positions[0], positions[-1])
        return
    k = len(qs)
    mid = (k - 1) // 2  # lower median
    m = positions[mid]
    left, right = qs[:mid], qs[mid + 1:]
    a, b = len(left), len(right)
    assert a <= zone // 2 and b <= zone // 2
    left_targets = list(range(m - a, m))
    right_targets = list(range(m + 1, m + b + 1))
    span = (m - a, m + b)
    pos = tape.pos_of

    def extent() -> tuple[int, int]:
        ps = [pos[q] for q in qs]
        return min(ps), max(ps)

    def fits() -> bool:
        lo, hi = extent()
        return hi - lo < zone

    right_done = positions[mid + 1:] == right_targets
    _sweep(tape, left, left_targets, True, span if right_done else None, fits)
    _sweep(tape, right, right_targets, False, span, fits)
    tape.cover(*extent())


def _check_zone(n: int, zone: int) -> None:
    if zone < 2:
        raise ValueError(f"zone size must be at least 2, got {zone}")
    if n < zone:
        raise ValueError(f"zone size {zone} exceeds tape length {n}")


def move_selected(ts: TapeState, ions: Iterable[int], d: int) -> tuple[list[Event], TapeState]:
    """Displace the contiguous ions at tape positions ``ions`` by ``d`` slots.

    The ions must sit at the zone edge they move away from (the left edge
    for ``d > 0``).  Each step swaps them ``min(zone - k, remaining)``
    slots towards the far edge, then shuttles the head along, for
    ``ceil(|d| / (zone - k))`` shuttles in total.
    """
    sel = sorted(ions)
    k, zone, n = len(sel), ts.zone, ts.n
    if d == 0:
        return [], ts
    if k == 0:
        raise ValueError("no ions selected")
    if k >= zone:
        raise ValueError(f"cannot carry {k} ions through a zone of {zone}")
    if sel != list(range(sel[0], sel[0] + k)):
        raise ValueError("selected ions must be contiguous")
    edge = ts.head if d > 0 else ts.head + zone - k
    if sel[0] != edge:
        raise ValueError("selected ions must sit at the trailing zone edge")
    if not (0 <= sel[0] + d and sel[-1] + d < n and 0 <= ts.head + d <= n - zone):
        raise ValueError(f"moving by {d} pushes ions off the tape")
    tape = _Tape(ts)
    step = zone - k
    sign = 1 if d > 0 else -1
    remaining = abs(d)
    cur = sel
    while remaining:
        delta = min(step, remaining)
        nxt = [p + sign * delta for p in cur]
        tape.place(cur, nxt)
        tape.move_head(tape.head + sign * delta, carried=k)
        cur = nxt
        remaining -= delta
    return tape.events, tape.snapshot()


def gather_block(ts: TapeState, block: Block) -> tuple[list[Event], TapeState]:
    """Bring a block's qubits into one zone window around their median slot."""
    if len(block.qubits) > ts.zone:
        raise ValueError(f"block {block.id} has {len(block.qubits)} qubits, zone holds {ts.zone}")
    tape = _Tape(ts)
    _gather(tape, block.qubits)
    return tape.events, tape.snapshot()


def _finish(tape: _Tape, circuit: Circuit, algorithm: str, blocks: tuple[Block, ...] = ()) -> Schedule:
    metrics = ScheduleMetrics(tape.shuttles, tape.swaps, tape.distance, tape.two_qubit)
    return Schedule(
        n=tape.n,
        zone=tape.zone,
        events=tuple(tape.events),
        final=tape.snapshot(),
        metrics=metrics,
        algorithm=algorithm,
        n_blocks=len(blocks),
        circuit_name=circuit.name,
        blocks=blocks,
    )


def schedule_blocks(blocks: list[Block], circuit: Circuit, zone: int) -> Schedule:
    """Execute blocks in order, gathering each one into the zone first.

    Blocks already inside the zone run as-is; blocks spanning fewer than
    ``zone`` slots cost one window relocation; wider blocks have the ions
    left of their median carried rightwards and the ions right of it
    carried leftwards until the block fits in one window.
    """
    n = circuit.n_qubits
    _check_zone(n, zone)
    by_id = circuit.gate_index()
    tape = _Tape(TapeState.initial(n, zone))
    for b in blocks:
        if len(b.qubits) > zone:
            raise ValueError(f"block {b.id} has {len(b.qubits)} qubits, zone holds {zone}")
        _gather(tape, b.qubits)
        for gid in b.gates:
            tape.apply(by_id[gid])
    return _finish(tape, circuit, "boss", tuple(blocks))


def schedule_baseline(circuit: Circuit, zone: int) -> Schedule:
    """Gate-by-gate mapper used as a comparison point.

    Every executable frontier gate runs immediately.  Otherwise the
    earliest frontier gate ``g`` drives one step:

    * ``g`` fits in a window: move the head to cover it, as far along the
      direction of travel as the gate allows;
    * one operand is in the zone but not on the edge facing its partner:
      swap it onto that edge (the zone is fully connected);
    * otherwise shuttle so the in-zone operand, or failing that the
      operand nearest the head, lands on the trailing edge.
    """
    n = circuit.n_qubits
    _check_zone(n, zone)
    gates = circuit.gates
    dag = build_dependency_graph(circuit)
    tape = _Tape(TapeState.initial(n, zone))
    pos = tape.pos_of
    frontier = sorted(dag.frontier)
    idle_steps = 0
    limit = 4 * n * n + 64

    def ready(i: int) -> bool:
        return all(tape.head <= pos[q] < tape.head + zone for q in gates[i].qubits)

    while frontier:
        ran = True
        while ran:
            ran = False
            for i in [i for i in frontier if ready(i)]:
                tape.apply(gates[i])
                frontier.remove(i)
                for s in dag.consume(i):
                    bisect.insort(frontier, s)
                ran = True
                idle_steps = 0
        if not frontier:
            break
        idle_steps += 1
        if idle_steps > limit:
            raise RuntimeError("baseline mapper made no progress")

        g = gates[frontier[0]]
        h = tape.head
        ps = [pos[x] for x in g.qubits]
        lo, hi = min(ps), max(ps)
        if hi - lo < zone:
            # FindProperTapeMovement: cover the gate, reaching as far as
            # possible in the direction of travel
            first, last = max(hi - zone + 1, 0), min(lo, n - zone)
            tape.move_head(last if last > h else first)
            continue
        inside = [x for x in (lo, hi) if h <= x < h + zone]
        if inside:
            here = inside[0]
            edge = h + zone - 1 if here == lo else h
            if here != edge:
                # FindProperSwap: jump to the zone edge facing the partner
                tape.swap(here, edge)
                continue
            # operand sits on the zone edge: put it on the trailing edge
            target = min(here, n - zone) if here == lo else max(here - zone + 1, 0)
        else:
            options = [min(lo, n - zone), max(hi - zone + 1, 0)]
            target = min(options, key=lambda t: (abs(t - h), t))
        if target == h:
            raise RuntimeError("baseline mapper cannot advance the head")
        tape.move_head(target)

    return _finish(tape, circuit, "baseline")
