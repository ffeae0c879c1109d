"""Benchmark the compiled kernels against the NumPy fallback.

Usage:
    python3 benchmarks/bench_backends.py [--repeats R]

Times the three hot kernels on a spread of problem sizes and prints one
row per (kernel, size) with both backends and the speedup.  The compiled
backend must be built (`pip install -e . --no-build-isolation`).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from phasetrain import _kernels_py

try:
    from phasetrain import _kernels
except ImportError:
    _kernels = None


def _time(fn, *args, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(rng):
    for n_qubits in (10, 12, 14, 16):
        k = 1 << n_qubits
        x = rng.uniform(-k / 2, k / 2, size=k)
        yield "closed_form_probs", f"N={n_qubits} ({k} pts)", ("closed_form_probs", (x, n_qubits))
        yield "product_form_probs", f"N={n_qubits} ({k} pts)", ("product_form_probs", (x, n_qubits))
    for n_qubits in (8, 10, 12):
        k = 1 << n_qubits
        phases = rng.uniform(0, 2 * np.pi, size=k)
        amps = np.exp(1j * phases) / np.sqrt(k)
        yield "measurement_probs", f"N={n_qubits} (K^2={k * k})", ("measurement_probs", (amps,))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per case (best is kept)")
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not built; only the NumPy backend is "
              "available. Build with `pip install -e . --no-build-isolation`.")
        return 1

    rng = np.random.default_rng(2024)
    print(f"{'kernel':<22} {'case':<18} {'cython':>12} {'numpy':>12} {'speedup':>9}")
    for name, case, (attr, call_args) in _cases(rng):
        t_cy = _time(getattr(_kernels, attr), *call_args, repeats=args.repeats)
        t_py = _time(getattr(_kernels_py, attr), *call_args, repeats=args.repeats)
        out_cy = getattr(_kernels, attr)(*call_args)
        out_py = getattr(_kernels_py, attr)(*call_args)
        worst = float(np.max(np.abs(np.asarray(out_cy) - np.asarray(out_py))))
        assert worst < 1e-10, f"backend mismatch {worst} on {name} {case}"
        print(f"{name:<22} {case:<18} {t_cy * 1e3:>10.3f}ms {t_py * 1e3:>10.3f}ms "
              f"{t_py / t_cy:>8.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
