"""Partition a circuit into dependency-ordered blocks that fit the execution zone."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import ModuleType

from . import _backend
from .circuit import Circuit
from .dag import build_dependency_graph


class FrontierStrategy(enum.Enum):
    FIFO = "fifo"


@dataclass(frozen=True)
class Block:
    id: int
    gates: tuple[int, ...]
    qubits: frozenset[int]

    def to_json(self) -> dict:
        return {"id": self.id, "gate_ids": list(self.gates), "qubits": sorted(self.qubits)}

    @classmethod
    def from_json(cls, obj: dict) -> Block:
        return cls(obj["id"], tuple(obj["gate_ids"]), frozenset(obj["qubits"]))


@dataclass(frozen=True)
class BlockStats:
    count: int
    mean_qubits: float
    vacancy_rate: float


def kernel_inputs(circuit: Circuit) -> tuple[list[int], list[int], list[int], list[int], list[int]]:
    """``(q0, q1, succ_start, succ, indeg)`` for ``block_gates``; ``q1`` is -1 for 1-qubit gates."""
    dag = build_dependency_graph(circuit)
    gates = circuit.gates
    q0 = [g.qubits[0] for g in gates]
    q1 = [g.qubits[1] if len(g.qubits) == 2 else -1 for g in gates]
    succ_start = [0]
    succ: list[int] = []
    for s in dag.succs:
        succ.extend(s)
        succ_start.append(len(succ))
    indeg = [len(p) for p in dag.preds]
    return q0, q1, succ_start, succ, indeg


def tilt_blocking(
    circuit: Circuit,
    zone: int,
    strategy: FrontierStrategy = FrontierStrategy.FIFO,
    kernels: ModuleType | None = None,
) -> list[Block]:
    """Group gates into blocks touching at most ``zone`` qubits each.

    Gates are pulled from the dependency frontier first-in first-out and
    merged into per-qubit groups while the merged qubit set stays within
    ``zone``; a gate that would overflow waits.  Whenever the frontier runs
    dry the group with the most qubits (ties: smallest member qubit) is
    emitted as the next block and the waiting gates are re-queued.
    Leftover groups are emitted the same way at the end.

    ``kernels`` overrides the backend module (for benchmarking and tests).
    """
    if zone < 2:
        raise ValueError(f"zone size must be at least 2 to host a two-qubit gate, got {zone}")
    if strategy is not FrontierStrategy.FIFO:
        raise NotImplementedError(f"frontier strategy {strategy} is not implemented")
    k = kernels or _backend.kernels
    gates = circuit.gates
    raw = k.block_gates(circuit.n_qubits, zone, *kernel_inputs(circuit))
    blocks = []
    for bid, members in enumerate(raw):
        qubits = frozenset(q for i in members for q in gates[i].qubits)
        blocks.append(Block(bid, tuple(gates[i].id for i in members), qubits))
    return blocks


def block_stats(blocks: list[Block], zone: int) -> BlockStats:
    if not blocks:
        return BlockStats(0, 0.0, 0.0)
    sizes = [len(b.qubits) for b in blocks]
    vacancy = sum((zone - s) / zone for s in sizes) / len(sizes)
    return BlockStats(len(blocks), sum(sizes) / len(sizes), vacancy)
