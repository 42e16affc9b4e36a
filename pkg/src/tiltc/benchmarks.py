"""Generators for the standard benchmark families.

Two-qubit structure is fixed by the family; the seed only affects
``rcs-like`` (pattern order, single-qubit gate choice) and ``qaoa-ring``
(vertex relabelling, when a seed is given).
"""

from __future__ import annotations

import math
import random

from .circuit import Circuit

BENCHMARKS = ("qft", "bv", "qaoa-ring", "alt", "rcs-like", "adder-ripple")


def qft(n: int) -> list[tuple]:
    ops: list[tuple] = []
    for i in range(n):
        ops.append(("h", (i,)))
        for j in range(i + 1, n):
            ops.append(("cp", (j, i), (math.pi / 2 ** (j - i),)))
    return ops


def bv(n: int) -> list[tuple]:
    # all-ones secret over data qubits 1..n-1; ancilla is qubit 0 so the
    # oracle's CX chain walks along the tape away from it
    anc = 0
    data = range(1, n)
    ops: list[tuple] = [("x", (anc,))]
    ops += [("h", (q,)) for q in range(n)]
    ops += [("cx", (q, anc)) for q in data]
    ops += [("h", (q,)) for q in data]
    return ops


def qaoa_ring(n: int, layers: int = 1, seed: int | None = None) -> list[tuple]:
    order = list(range(n))
    if seed is not None:
        random.Random(seed).shuffle(order)
    edges = [(order[i], order[(i + 1) % n]) for i in range(n)]
    if n == 2:
        edges = edges[:1] * 2
    ops: list[tuple] = [("h", (q,)) for q in range(n)]
    for p in range(layers):
        gamma, beta = 0.4 + 0.1 * p, 0.7 - 0.05 * p
        ops += [("rzz", e, (gamma,)) for e in edges]
        ops += [("rx", (q,), (2 * beta,)) for q in range(n)]
    return ops


def alt(n: int, layers: int = 40) -> list[tuple]:
    ops: list[tuple] = []
    for layer in range(layers):
        ops += [("ry", (q,), (0.1 * (layer + 1),)) for q in range(n)]
        ops += [("cz", (q, q + 1)) for q in range(layer % 2, n - 1, 2)]
    return ops


def rcs_like(n: int, cycles: int = 20, seed: int | None = 0) -> list[tuple]:
    """Random circuit on a near-square grid with Sycamore-style coupler patterns.

    Qubits are laid out row-major on a ``ceil(sqrt(n))``-wide grid.  Each
    block of four cycles uses the four coupler patterns (horizontal
    even/odd, vertical even/odd) once, in a seeded random order.
    """
    rng = random.Random(seed)
    cols = math.isqrt(n - 1) + 1 if n > 1 else 1
    coord = lambda r, c: r * cols + c  # noqa: E731

    def pattern(kind: int) -> list[tuple[int, int]]:
        pairs = []
        for q in range(n):
            r, c = divmod(q, cols)
            if kind < 2 and c % 2 == kind and c + 1 < cols and coord(r, c + 1) < n:
                pairs.append((q, coord(r, c + 1)))
            elif kind >= 2 and r % 2 == kind - 2 and coord(r + 1, c) < n:
                pairs.append((q, coord(r + 1, c)))
        return pairs

    patterns = [pattern(k) for k in range(4)]
    ops: list[tuple] = [("h", (q,)) for q in range(n)]
    order: list[int] = []
    for cyc in range(cycles):
        if cyc % 4 == 0:
            order = [0, 1, 2, 3]
            rng.shuffle(order)
        ops += [(rng.choice(("sx", "sy", "sw")), (q,)) for q in range(n)]
        ops += [("cz", p) for p in patterns[order[cyc % 4]]]
    return ops


def _ccx(a: int, b: int, c: int) -> list[tuple]:
    return [
        ("h", (c,)), ("cx", (b, c)), ("tdg", (c,)), ("cx", (a, c)), ("t", (c,)),
        ("cx", (b, c)), ("tdg", (c,)), ("cx", (a, c)), ("t", (b,)), ("t", (c,)),
        ("h", (c,)), ("cx", (a, b)), ("t", (a,)), ("tdg", (b,)), ("cx", (a, b)),
    ]


def adder_ripple(n: int) -> list[tuple]:
    """Cuccaro ripple-carry adder, Toffolis expanded to 6 CX each.

    Layout is ``c0, b0, a0, b1, a1, ..., z``; with an odd ``n`` the last
    qubit stays idle.
    """
    if n < 4:
        raise ValueError("adder-ripple needs at least 4 qubits")
    bits = (n - 2) // 2
    c0, z = 0, 2 * bits + 1
    b = [1 + 2 * i for i in range(bits)]
    a = [2 + 2 * i for i in range(bits)]

    def maj(x: int, y: int, w: int) -> list[tuple]:
        return [("cx", (w, y)), ("cx", (w, x))] + _ccx(x, y, w)

    def uma(x: int, y: int, w: int) -> list[tuple]:
        # 3-CNOT variant
        return [("x", (y,)), ("cx", (x, y))] + _ccx(x, y, w) + [("x", (y,)), ("cx", (w, x)), ("cx", (w, y))]

    carry = [c0] + a[:-1]
    ops: list[tuple] = []
    for i in range(bits):
        ops += maj(carry[i], b[i], a[i])
    ops.append(("cx", (a[-1], z)))
    for i in reversed(range(bits)):
        ops += uma(carry[i], b[i], a[i])
    return ops


def decompose_controlled_phase(ops: list[tuple]) -> list[tuple]:
    """Rewrite ``cp`` and ``rzz`` into two CX plus single-qubit phases."""
    out: list[tuple] = []
    for op in ops:
        name, qs = op[0], op[1]
        theta = op[2][0] if len(op) > 2 else 0.0
        if name == "cp":
            c, t = qs
            out += [
                ("p", (c,), (theta / 2,)), ("cx", (c, t)), ("p", (t,), (-theta / 2,)),
                ("cx", (c, t)), ("p", (t,), (theta / 2,)),
            ]
        elif name == "rzz":
            c, t = qs
            out += [("cx", (c, t)), ("rz", (t,), (theta,)), ("cx", (c, t))]
        else:
            out.append(op)
    return out


def generate_benchmark(
    name: str,
    n_qubits: int,
    seed: int | None = None,
    *,
    layers: int | None = None,
    decompose: bool = False,
) -> Circuit:
    """Build benchmark ``name`` on ``n_qubits`` qubits.

    ``layers`` sets QAOA rounds (default 1), ALT layers (default 40) or
    RCS cycles (default 20) and is ignored elsewhere.  ``decompose``
    expands each ``cp``/``rzz`` into two CX.
    """
    if n_qubits < 2:
        raise ValueError("benchmarks need at least 2 qubits")
    if name == "qft":
        ops = qft(n_qubits)
    elif name == "bv":
        ops = bv(n_qubits)
    elif name == "qaoa-ring":
        ops = qaoa_ring(n_qubits, layers or 1, seed)
    elif name == "alt":
        ops = alt(n_qubits, 40 if layers is None else layers)
    elif name == "rcs-like":
        ops = rcs_like(n_qubits, 20 if layers is None else layers, 0 if seed is None else seed)
    elif name == "adder-ripple":
        ops = adder_ripple(n_qubits)
    else:
        raise ValueError(f"unknown benchmark {name!r}; choose from {', '.join(BENCHMARKS)}")
    if decompose:
        ops = decompose_controlled_phase(ops)
    label = f"{name}{n_qubits}"
    return Circuit.from_ops(n_qubits, ops, label)


def parse_generator_spec(spec: str) -> tuple[str, int, int | None]:
    """Split ``"qft:64"`` or ``"alt:64:40"`` into ``(name, n, layers)``."""
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"generator spec must look like name:n[:layers], got {spec!r}")
    try:
        n = int(parts[1])
        layers = int(parts[2]) if len(parts) == 3 else None
    except ValueError:
        raise ValueError(f"non-integer size in generator spec {spec!r}") from None
    if parts[0] not in BENCHMARKS:
        raise ValueError(f"unknown benchmark {parts[0]!r}; choose from {', '.join(BENCHMARKS)}")
    return parts[0], n, layers
