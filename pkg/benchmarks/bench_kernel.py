#!/usr/bin/env python3
"""Compare the compiled and pure-Python simplex kernels.

Runs the same workload under both kernels in subprocesses (the selection
happens at import time) and prints the timings.  Workload: one operator
row of the extension-interval table on the quarter grid, plus a batch of
random hull membership tests.
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, random, time
from cohkit.lp import hull_membership, kernel_name
from cohkit.rationals import rat
from cohkit.tables import compute_interval_row

t0 = time.perf_counter()
row = compute_interval_row("and", "K", rat(1, 4), rat(1, 2**40))
t1 = time.perf_counter()

rng = random.Random(7)
hulls = 0
for _ in range(400):
    dim = rng.randint(2, 4)
    pts = [
        tuple(rat(rng.randint(0, 6), 6) for _ in range(dim))
        for _ in range(rng.randint(3, 9))
    ]
    p = tuple(rat(rng.randint(0, 12), 12) for _ in range(dim))
    hull_membership(pts, p)
    hulls += 1
t2 = time.perf_counter()
print(json.dumps({
    "kernel": kernel_name(),
    "intervals_s": t1 - t0,
    "hulls_s": t2 - t1,
    "hulls": hulls,
}))
"""


def run(kernel: str) -> dict:
    env = dict(os.environ, COHKIT_KERNEL=kernel)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.parse_args()
    results = []
    for kernel in ("py", "cy"):
        try:
            results.append(run(kernel))
        except subprocess.CalledProcessError as exc:
            print(f"kernel {kernel!r} failed: {exc.stderr.strip()}")
    for r in results:
        print(
            f"{r['kernel']:12s} intervals(and_K, step 1/4): {r['intervals_s']:.3f}s   "
            f"{r['hulls']} hull tests: {r['hulls_s']:.3f}s"
        )
    if len(results) == 2:
        speedup = results[0]["intervals_s"] / results[1]["intervals_s"]
        print(f"compiled kernel speedup on intervals: {speedup:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
