from __future__ import annotations

import random

from hypothesis import strategies as st

from tiltc import Circuit


def random_circuit(n: int, n_gates: int, seed: int, p_single: float = 0.3) -> Circuit:
    rng = random.Random(seed)
    ops = []
    for _ in range(n_gates):
        if n < 2 or rng.random() < p_single:
            ops.append(("h", (rng.randrange(n),)))
        else:
            a, b = rng.sample(range(n), 2)
            ops.append(("cx", (a, b)))
    return Circuit.from_ops(n, ops, f"rand{seed}")


@st.composite
def circuits(draw, min_qubits: int = 2, max_qubits: int = 12, max_gates: int = 40) -> Circuit:
    n = draw(st.integers(min_qubits, max_qubits))
    ops = draw(
        st.lists(
            st.one_of(
                st.tuples(st.just("h"), st.tuples(st.integers(0, n - 1))),
                st.tuples(
                    st.just("cx"),
                    st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True).map(tuple),
                ),
            ),
            max_size=max_gates,
        )
    )
    return Circuit.from_ops(n, ops, "hyp")
