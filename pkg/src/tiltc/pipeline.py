"""Block -> schedule -> verify, with compile-time measurement."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .blocking import Block, tilt_blocking
from .circuit import Circuit
from .scheduling import Schedule, schedule_baseline, schedule_blocks
from .verifier import VerificationReport, verify

ALGORITHMS = ("boss", "baseline")


@dataclass(frozen=True)
class CompileResult:
    schedule: Schedule
    blocks: tuple[Block, ...]
    compile_ms: float
    report: VerificationReport


def compile_circuit(circuit: Circuit, zone: int, algorithm: str = "boss") -> CompileResult:
    """Compile and verify; ``compile_ms`` covers blocking and scheduling only."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")
    t0 = time.perf_counter()
    if algorithm == "boss":
        blocks = tuple(tilt_blocking(circuit, zone))
        schedule = schedule_blocks(list(blocks), circuit, zone)
    else:
        blocks = ()
        schedule = schedule_baseline(circuit, zone)
    elapsed = (time.perf_counter() - t0) * 1000.0
    return CompileResult(schedule, blocks, elapsed, verify(circuit, schedule, zone))
