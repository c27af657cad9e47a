"""Time the numba kernels against the numpy fallback.

Run: python benchmarks/bench_numba.py
Each mode runs in its own interpreter because MF_DISABLE_NUMBA is read at import.
"""

import json
import os
import subprocess
import sys

CASE = r"""
import cmath, json, time
import numpy as np
from mfcalc._accel import use_numba
from mfcalc.core import GridSpec, SampledFunction
from mfcalc.kernels import apply_K1_direct, scaled_upper_incomplete_gamma

g = GridSpec(30.0, 2 ** 12, "log")
f = SampledFunction.from_callable(g, lambda t: t * np.exp(-t))
c = cmath.exp(-1.1j)
z = (np.linspace(-20, 20, 400)[:, None] + 1j * np.linspace(-20, 20, 400)[None, :]).ravel()
z = z[np.abs(z) > 1e-3]


def best(fn, reps=3):
    fn()  # warm-up and compilation
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


print(json.dumps({
    "numba": use_numba(),
    "apply_K1_direct": best(lambda: apply_K1_direct(c, f)),
    "incomplete_gamma": best(lambda: scaled_upper_incomplete_gamma(0.3 - 0.7j, z)),
}))
"""


def run(disable: bool) -> dict:
    env = dict(os.environ)
    env.pop("MF_DISABLE_NUMBA", None)
    if disable:
        env["MF_DISABLE_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", CASE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    fast, slow = run(False), run(True)
    print(f"{'kernel':<20}{'numba s':>12}{'numpy s':>12}{'speedup':>10}")
    for key in ("apply_K1_direct", "incomplete_gamma"):
        print(f"{key:<20}{fast[key]:>12.4f}{slow[key]:>12.4f}{slow[key] / fast[key]:>10.1f}")
    if not fast["numba"]:
        print("numba unavailable; both columns use numpy")


if __name__ == "__main__":
    main()
