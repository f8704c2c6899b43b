#!/usr/bin/env python3
"""Numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter because the switch is read at import
time (``SCATTERED_LAB_DISABLE_NUMBA=1``).  Every workload is called once to
warm up (JIT compilation, table construction) and then timed; the best of
``--repeat`` runs is reported.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = r"""
import json, sys, time
from scattered_lab._accel import backend
from scattered_lab.gf import field_for_q
from scattered_lab.families import default_lp_delta, make_lp, make_trinomial
from scattered_lab.linpoly import dickson_shift_ranks, eval_all
from scattered_lab.linset import is_scattered
from scattered_lab.equiv import gl_stabilizer

repeat = int(sys.argv[1])
F3, F5 = field_for_q(3, 6), field_for_q(5, 6)
tri, lp = make_trinomial(F5, 2), make_lp(F3, 1, default_lp_delta(F3))
work = {
    "eval_all q=5 (15625 points)": lambda: eval_all(tri),
    "dickson_shift_ranks q=5 (15625 6x6 ranks)": lambda: dickson_shift_ranks(tri),
    "is_scattered q=5 (dual path)": lambda: is_scattered(tri, dual=False),
    "gl_stabilizer LP q=3 (729^2 pairs)": lambda: gl_stabilizer(lp),
    "gl_stabilizer TRI q=5 (15625^2 pairs)": lambda: gl_stabilizer(tri),
}
out = {"backend": backend(), "times": {}}
for name, fn in work.items():
    fn()
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out["times"][name] = best
print(json.dumps(out))
"""


def run_backend(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    if disable:
        env["SCATTERED_LAB_DISABLE_NUMBA"] = "1"
    else:
        env.pop("SCATTERED_LAB_DISABLE_NUMBA", None)
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True,
                          text=True, check=True)
    res = json.loads(proc.stdout)
    res["wall_s"] = time.perf_counter() - t0
    return res


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="write raw timings here")
    args = ap.parse_args(argv)

    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    width = max(len(k) for k in fast["times"])
    print(f"{'workload':<{width}}  {fast['backend']:>10}  {slow['backend']:>10}  speedup")
    for name, t in fast["times"].items():
        s = slow["times"][name]
        print(f"{name:<{width}}  {t:10.4f}  {s:10.4f}  {s / t:7.1f}x")
    print(f"{'process wall time (incl. JIT)':<{width}}  {fast['wall_s']:10.2f}  {slow['wall_s']:10.2f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"numba": fast, "numpy": slow}, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
