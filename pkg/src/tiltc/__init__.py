"""Shuttle-aware compiler for trapped-ion linear-tape devices."""

from ._backend import BACKEND
from .benchmarks import BENCHMARKS, generate_benchmark
from .blocking import Block, BlockStats, FrontierStrategy, block_stats, tilt_blocking
from .circuit import Circuit, Gate, GateKind, QasmError, emit_qasm, parse_qasm
from .costmodel import (
    ExecutionReport,
    FidelityParams,
    GateTimeModel,
    TimingParams,
    execution_time,
    gate_time,
    success_rate,
)
from .dag import DependencyGraph, build_dependency_graph
from .pipeline import CompileResult, compile_circuit
from .scheduling import (
    Schedule,
    TapeState,
    gather_block,
    move_selected,
    schedule_baseline,
    schedule_blocks,
)
from .verifier import VerificationReport, optimal_shuttles_bruteforce, verify

__version__ = "0.1.0"
