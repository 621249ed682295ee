"""Compare the compiled kernels against the numpy fallback.

Run as a script: python benchmarks/bench_kernels.py
"""

import importlib
import time

import numpy as np


def _load(pure: bool):
    if pure:
        from covarmedium._kernels import _slow as mod
    else:
        try:
            from covarmedium._kernels import _fast as mod
        except ImportError:
            return None
    return importlib.reload(mod) if False else mod


def bench_mode_sum(mod, repeats=5):
    rng = np.random.default_rng(7)
    omegas = np.linspace(0.01, 5.0, 400)
    k = np.linspace(1e-3, 50.0, 2000)
    wk = np.full_like(k, 50.0 / 2000)
    win = np.exp(-((k / 25.0) ** 4))
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = mod.mode_sum_batch(omegas, 2.0, 0.45, k, wk, win)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_fd(mod, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = mod.fd_wave_snapshots(1.0, 0.005, 1200, 1200, 0.02, (1199,))
        best = min(best, time.perf_counter() - t0)
    return best, out[1199]


def main():
    fast = _load(pure=False)
    slow = _load(pure=True)
    print(f"{'kernel':<22}{'numpy':>12}{'cython':>12}{'speedup':>10}")
    for name, bench in (("mode_sum_batch", bench_mode_sum), ("fd_wave_snapshots", bench_fd)):
        t_slow, out_slow = bench(slow)
        if fast is None:
            print(f"{name:<22}{t_slow * 1e3:>10.2f}ms{'n/a':>12}{'n/a':>10}")
            continue
        t_fast, out_fast = bench(fast)
        err = float(np.max(np.abs(np.asarray(out_slow) - np.asarray(out_fast))))
        print(
            f"{name:<22}{t_slow * 1e3:>10.2f}ms{t_fast * 1e3:>10.2f}ms"
            f"{t_slow / t_fast:>9.1f}x   (max abs diff {err:.1e})"
        )


if __name__ == "__main__":
    main()
