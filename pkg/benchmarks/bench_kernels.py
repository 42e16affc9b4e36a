"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--sizes 64 128 180] [--zone 16] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

from tiltc import _kernels_py, generate_benchmark, schedule_blocks, tilt_blocking
from tiltc.blocking import kernel_inputs
from tiltc.costmodel import layer_inputs

try:
    from tiltc import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_ms(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, (time.perf_counter() - t0) * 1000.0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", type=int, default=[64, 128, 180])
    ap.add_argument("--zone", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled kernels are not built; timing the Python fallback only")

    print(f"{'circuit':>8} {'stage':>7} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for n in args.sizes:
        c = generate_benchmark("qft", n)
        blocks = tilt_blocking(c, args.zone, kernels=_kernels_py)
        if _kernels_c is not None and tilt_blocking(c, args.zone, kernels=_kernels_c) != blocks:
            raise SystemExit(f"kernel mismatch on {c.name}")
        pa, pb, barrier, _, _ = layer_inputs(schedule_blocks(blocks, c, args.zone))
        block_args = kernel_inputs(c)
        cases = {
            "block": lambda k: k.block_gates(n, args.zone, *block_args),
            "e2e": lambda k: tilt_blocking(c, args.zone, kernels=k),
            "layers": lambda k: k.asap_layers(pa, pb, barrier, n),
        }
        for label, fn in cases.items():
            py = best_ms(lambda: fn(_kernels_py), args.repeat)
            if _kernels_c is None:
                print(f"{c.name:>8} {label:>7} {py:10.2f} {'-':>10} {'-':>8}")
                continue
            cy = best_ms(lambda: fn(_kernels_c), args.repeat)
            print(f"{c.name:>8} {label:>7} {py:10.2f} {cy:10.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
