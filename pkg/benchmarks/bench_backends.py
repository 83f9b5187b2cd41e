"""Compare the compiled Jacobi kernel against the pure-python fallback.

Run from the repository root after installing the package:

    python benchmarks/bench_backends.py

The script times the active backend in this process, then re-runs itself
with GAPSCOPE_PURE=1 in a subprocess and prints both columns.  Backend
choice happens at import, so the fallback cannot be timed in-process.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def _random_hermitian(n, rng):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (a + a.conj().T)


def _best_of(fn, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_cases():
    from gapscope import linalg, problems
    from gapscope.backend import BACKEND
    from gapscope.sweep import ThetaGrid, sweep

    rng = np.random.default_rng(7)
    out = {"backend": BACKEND, "cases": {}}
    for n in (16, 32, 64):
        mats = [_random_hermitian(n, rng) for _ in range(8)]
        reps = 5 if n < 64 else 3
        out["cases"][f"eigh n={n}"] = _best_of(
            lambda: [linalg.eigh(m) for m in mats], reps) / len(mats)

    pair = problems.hamming_plus_barrier(problems.BarrierSpec(5, 1, 2, 7.0))
    grid = ThetaGrid(delta=0.01)
    out["cases"]["sweep dim=32, 628 nodes"] = _best_of(
        lambda: sweep(pair, grid), 3)
    return out


def main():
    if "--json" in sys.argv:
        print(json.dumps(run_cases()))
        return 0

    here = run_cases()
    env = dict(os.environ, GAPSCOPE_PURE="1")
    child = subprocess.run([sys.executable, __file__, "--json"], env=env,
                           capture_output=True, text=True, check=True)
    pure = json.loads(child.stdout)

    width = max(len(k) for k in here["cases"])
    print(f"{'case':<{width}}  {here['backend']:>12}  {pure['backend']:>12}  speedup")
    for name, t in here["cases"].items():
        tp = pure["cases"][name]
        print(f"{name:<{width}}  {t * 1e3:>10.2f}ms  {tp * 1e3:>10.2f}ms  {tp / t:>6.1f}x")
    if here["backend"] == pure["backend"]:
        print("note: compiled extension not built, both columns use the fallback")
    return 0


if __name__ == "__main__":
    sys.exit(main())
