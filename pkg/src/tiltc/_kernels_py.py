"""Pure-Python kernels. ``_kernels.pyx`` mirrors these exactly."""

from __future__ import annotations

from collections import deque


class _Group:
    __slots__ = ("qubits", "gates")

    def __init__(self, qubits: list[int], gates: list[int]):
        self.qubits = qubits
        self.gates = gates


def block_gates(
    n_qubits: int,
    zone: int,
    q0: list[int],
    q1: list[int],
    succ_start: list[int],
    succ: list[int],
    indeg: list[int],
) -> list[list[int]]:
    """Greedy FIFO blocking over a dependency DAG given in CSR form.

    ``q1[i] == -1`` marks a single-qubit gate.  Returns blocks as sorted
    lists of gate indices, in emission order.
    """
    g = len(q0)
    pending = list(indeg)
    frontier = deque(i for i in range(g) if pending[i] == 0)
    group_of: list[_Group | None] = [None] * n_qubits
    waiting: list[int] = []
    blocks: list[list[int]] = []

    def release(i: int) -> None:
        for k in range(succ_start[i], succ_start[i + 1]):
            s = succ[k]
            pending[s] -= 1
            if pending[s] == 0:
                frontier.append(s)

    def pick_largest() -> _Group | None:
        # ties go to the group with the smallest member qubit
        best, seen = None, set()
        for q in range(n_qubits):
            grp = group_of[q]
            if grp is None or id(grp) in seen:
                continue
            seen.add(id(grp))
            if best is None or len(grp.qubits) > len(best.qubits):
                best = grp
        return best

    def emit(grp: _Group) -> None:
        for q in grp.qubits:
            group_of[q] = None
        blocks.append(sorted(grp.gates))

    while frontier:
        i = frontier.popleft()
        a, b = q0[i], q1[i]
        if b < 0:
            grp = group_of[a]
            if grp is None:
                group_of[a] = _Group([a], [i])
            else:
                grp.gates.append(i)
            release(i)
        else:
            ga, gb = group_of[a], group_of[b]
            if ga is not None and ga is gb:
                ga.gates.append(i)
                release(i)
            else:
                size = (len(ga.qubits) if ga else 1) + (len(gb.qubits) if gb else 1)
                if size <= zone:
                    if ga is None:
                        ga = group_of[a] = _Group([a], [])
                    if gb is None:
                        gb = group_of[b] = _Group([b], [])
                    # union by size: relabel the smaller side
                    big, small = (ga, gb) if len(ga.qubits) >= len(gb.qubits) else (gb, ga)
                    for q in small.qubits:
                        group_of[q] = big
                    big.qubits.extend(small.qubits)
                    big.gates.extend(small.gates)
                    big.gates.append(i)
                    release(i)
                else:
                    waiting.append(i)
        if not frontier:
            grp = pick_largest()
            if grp is not None:
                emit(grp)
            frontier.extend(waiting)
            waiting.clear()

    while True:
        grp = pick_largest()
        if grp is None:
            break
        emit(grp)
    return blocks


def asap_layers(pa: list[int], pb: list[int], barrier: list[int], n_positions: int) -> list[int]:
    """Greedy ASAP layer index for each two-position operation.

    ``barrier[k]`` non-zero means a shuttle happened right before op ``k``;
    no later op may share a layer with anything before it.
    """
    last = [0] * n_positions
    floor = 0
    top = 0
    out = []
    for a, b, bar in zip(pa, pb, barrier):
        if bar:
            floor = top
        layer = max(last[a], last[b], floor) + 1
        last[a] = last[b] = layer
        if layer > top:
            top = layer
        out.append(layer)
    return out
