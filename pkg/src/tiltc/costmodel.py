"""Execution-time and success-rate estimates for a compiled schedule.

Times are in microseconds.  ``ion_pitch_um`` converts tape slots to
micrometres for the transport term; it is a modelling choice (default
5 um), not a measured constant.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

from . import _backend
from .scheduling import GateOp, Schedule, Shuttle, SwapOp
from .verifier import VerificationReport


class GateTimeModel(enum.Enum):
    """Two-qubit gate duration ``slope * d + intercept`` for ion distance ``d``."""

    DUAN_AM = ("duan", 100.0, -22.0)
    TROUT_AM = ("trout", 38.0, 10.0)
    PM = ("pm", 5.0, 160.0)

    def __init__(self, label: str, slope: float, intercept: float):
        self.label = label
        self.slope = slope
        self.intercept = intercept

    @classmethod
    def from_label(cls, label: str) -> GateTimeModel:
        for m in cls:
            if m.label == label.lower():
                return m
        raise ValueError(f"unknown gate-time model {label!r}; choose from duan, trout, pm")


@dataclass(frozen=True)
class TimingParams:
    t1_us: float = 10_050.0
    cool_per_shuttle_us: float = 40.0
    t3_readout_us: float = 150.0
    shuttle_speed_um_per_us: float = 1.0
    ion_pitch_um: float = 5.0

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class FidelityParams:
    eps_laser: float = 1 / 256_000
    eps_shuttle: float = 0.001

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if not 0 < value < 1:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")


@dataclass(frozen=True)
class ExecutionReport:
    t_exec_us: float
    transport_us: float
    gate_us: float
    t1_us: float
    cooling_us: float
    readout_us: float
    layers: int

    def to_json(self) -> dict:
        return asdict(self)


def gate_time(model: GateTimeModel, d: int) -> float:
    if d < 1:
        raise ValueError(f"ion distance must be at least 1, got {d}")
    return model.slope * d + model.intercept


def layer_inputs(schedule: Schedule) -> tuple[list[int], list[int], list[int], list[int], list[int]]:
    """Flatten two-position ops into kernel inputs.

    Returns ``(pa, pb, barrier, dists, idx)``: operand positions, a flag
    marking ops that follow a shuttle, ion distance, and event index.
    """
    pa, pb, barrier, dists, idx = [], [], [], [], []
    pending_barrier = 0
    for k, ev in enumerate(schedule.events):
        if isinstance(ev, Shuttle):
            pending_barrier = 1
        elif isinstance(ev, (GateOp, SwapOp)) and len(ev.positions) == 2:
            a, b = ev.positions
            pa.append(a)
            pb.append(b)
            barrier.append(pending_barrier)
            dists.append(abs(a - b))
            idx.append(k)
            pending_barrier = 0
    return pa, pb, barrier, dists, idx


def gate_layers(schedule: Schedule) -> tuple[list[int], list[int], list[int]]:
    """ASAP layering of two-qubit gates and swaps, with shuttles as barriers.

    Returns parallel lists: layer per op, ion distance per op, event index per op.
    """
    pa, pb, barrier, dists, idx = layer_inputs(schedule)
    return _backend.asap_layers(pa, pb, barrier, schedule.n), dists, idx


def execution_time(
    schedule: Schedule,
    model: GateTimeModel = GateTimeModel.TROUT_AM,
    params: TimingParams = TimingParams(),
    report: VerificationReport | None = None,
) -> ExecutionReport:
    """Transport + per-layer max gate time + initial cooling + per-shuttle cooling + readout.

    Pass the schedule's ``report`` to refuse schedules that failed
    verification; its recomputed metrics then replace the claimed ones.
    """
    m = schedule.metrics
    if report is not None:
        if not report.valid:
            raise ValueError(f"schedule failed verification ({len(report.violations)} violation(s))")
        m = report.metrics
    layers, dists, _ = gate_layers(schedule)
    longest: dict[int, float] = {}
    for layer, d in zip(layers, dists):
        t = gate_time(model, d)
        if t > longest.get(layer, -math.inf):
            longest[layer] = t
    gate_us = math.fsum(longest.values())
    transport = m.distance * params.ion_pitch_um / params.shuttle_speed_um_per_us
    cooling = params.cool_per_shuttle_us * m.shuttles
    total = transport + gate_us + params.t1_us + cooling + params.t3_readout_us
    return ExecutionReport(total, transport, gate_us, params.t1_us, cooling, params.t3_readout_us, len(longest))


def gate_fidelity(f: FidelityParams, n_ions: int) -> float:
    return 1.0 - f.eps_laser * n_ions**2


def success_rate_from_counts(
    g: int,
    shuttles: int,
    n_ions: int,
    f: FidelityParams = FidelityParams(),
    reset_shuttle_index: bool = False,
) -> float:
    """``F_gate**g * prod_{m=1..S} (1 - eps_shuttle * m)``, clamped at 0.

    With ``reset_shuttle_index`` every shuttle counts as the first one
    (cooling wipes the accumulated error).
    """
    if n_ions < 2:
        raise ValueError("the zone must hold at least 2 ions")
    fg = gate_fidelity(f, n_ions)
    if fg <= 0:
        return 0.0
    log_f = g * math.log(fg)
    for m in range(1, shuttles + 1):
        factor = 1.0 - f.eps_shuttle * (1 if reset_shuttle_index else m)
        if factor <= 0:
            return 0.0
        log_f += math.log(factor)
    return math.exp(log_f)


def success_rate(
    schedule: Schedule,
    f: FidelityParams = FidelityParams(),
    n_ions: int | None = None,
    reset_shuttle_index: bool = False,
) -> float:
    """Success rate of ``schedule``; inserted swaps count as two-qubit gates."""
    m = schedule.metrics
    n_ions = schedule.zone if n_ions is None else n_ions
    return success_rate_from_counts(m.two_qubit_gates + m.swaps, m.shuttles, n_ions, f, reset_shuttle_index)
