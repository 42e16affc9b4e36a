"""Gate dependency DAG with a FIFO frontier."""

from __future__ import annotations

from collections import deque

from .circuit import Circuit


class DependencyGraph:
    """Direct-predecessor DAG over a circuit's gates.

    Nodes are gate positions ``0..g-1`` in circuit order (``gate_ids`` maps
    them back to :attr:`Gate.id`).  An edge ``i -> j`` exists when gate ``i``
    is the most recent earlier gate on one of ``j``'s operands.

    The frontier bookkeeping (``pop``/``consume``/``push``) is mutable and
    meant for one pass; everything else is fixed at construction.
    """

    def __init__(self, circuit: Circuit):
        n = len(circuit.gates)
        self.gate_ids = [g.id for g in circuit.gates]
        self.preds: list[tuple[int, ...]] = [()] * n
        self.succs: list[list[int]] = [[] for _ in range(n)]
        last_on: list[int] = [-1] * circuit.n_qubits
        for i, g in enumerate(circuit.gates):
            ps = []
            for q in g.qubits:
                p = last_on[q]
                if p >= 0 and p not in ps:
                    ps.append(p)
                last_on[q] = i
            ps.sort()
            self.preds[i] = tuple(ps)
            for p in ps:
                self.succs[p].append(i)
        self.pending_pred_count = [len(p) for p in self.preds]
        self.frontier: deque[int] = deque(i for i in range(n) if not self.preds[i])
        self.consumed = [False] * n

    def __len__(self) -> int:
        return len(self.preds)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(p, s) for s, ps in enumerate(self.preds) for p in ps]

    def pop(self) -> int:
        return self.frontier.popleft()

    def push(self, node: int) -> None:
        """Put an unconsumed ready node back at the end of the frontier."""
        self.frontier.append(node)

    def consume(self, node: int) -> list[int]:
        """Mark ``node`` done; enqueue and return successors that became ready."""
        if self.consumed[node]:
            raise ValueError(f"node {node} consumed twice")
        self.consumed[node] = True
        ready = []
        for s in self.succs[node]:
            self.pending_pred_count[s] -= 1
            if self.pending_pred_count[s] == 0:
                ready.append(s)
                self.frontier.append(s)
        return ready

    def longest_path(self) -> int:
        """Number of nodes on the longest dependency chain."""
        depth = [0] * len(self.preds)
        for i, ps in enumerate(self.preds):
            depth[i] = 1 + max((depth[p] for p in ps), default=0)
        return max(depth, default=0)


def build_dependency_graph(circuit: Circuit) -> DependencyGraph:
    return DependencyGraph(circuit)
