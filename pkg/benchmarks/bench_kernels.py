"""Compare the numba kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each route runs in a fresh interpreter so the environment flag is read at
import time exactly as in normal use. Compilation is excluded by a warm-up
call (numba caches to disk after the first run anyway).
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import numpy as np
from diophgal.algebra import RingDescriptor
from diophgal.encoder import encode_disequation, encode_group_realization
from diophgal.groups import library_group
from diophgal.oracle import kernels
from diophgal.oracle.brute import compile_system

def timed(fn, repeat):
    fn()
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t)
    return best

repeat = {repeat}
out = {{"numba": kernels.numba_enabled()}}
polys5 = kernels.all_monic(5, 6)
polys2 = kernels.all_monic(2, 12)
out["irreducible F5 deg6 (15625 polys)"] = timed(lambda: kernels.batch_irreducible(polys5, 5), repeat)
out["irreducible F2 deg12 (4096 polys)"] = timed(lambda: kernels.batch_irreducible(polys2, 2), repeat)
sys3 = encode_disequation(encode_group_realization(RingDescriptor.parse("Fp p=3"), library_group("C2")))
comp = compile_system(sys3)
total = 3 ** len(sys3.registry)
out[f"brute force C2/F3 ({{total}} assignments)"] = timed(lambda: kernels.satisfying_flags(0, total, 3, comp), repeat)
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env["DIOPHGAL_DISABLE_NUMBA"] = "1" if disable else "0"
    res = subprocess.run([sys.executable, "-c", WORKLOAD.format(repeat=repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, args.repeat)
    print(f"{'workload':45s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for key in fast:
        if key == "numba":
            continue
        print(f"{key:45s} {fast[key]:10.4f} {slow[key]:10.4f} {slow[key] / fast[key]:8.1f}x")
    if not fast["numba"]:
        print("(numba unavailable: both columns use the numpy route)")


if __name__ == "__main__":
    main()
