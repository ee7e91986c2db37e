"""Compare the compiled kernels with the pure-Python fallback.

Each backend runs in its own interpreter, since the backend is picked once
at import time (LOGTOWER_PURE=1 forces the fallback).

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r'''
import json, sys, time
sys.path.insert(0, sys.argv[1])
import logtower
from logtower.frontend import parse_iterlog
from logtower.multipoly import GenSym, sym
from logtower.poly import Poly, gcd
from logtower.subfield import iterlog_subfield
from conftest import EX1, EX2

repeat = int(sys.argv[2])
ys = [sym(GenSym(f"y{i}", "antiderivative", i, 1)) for i in range(4)]
f = (ys[0] + 2 * ys[1] - ys[2] + ys[3] + 1) ** 6
g = (ys[0] - ys[1] + 3 * ys[3] - 2) ** 5


def best(fn):
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


res = {
    "backend": logtower.BACKEND,
    "poly_mul": best(lambda: f * g),
    "poly_gcd": best(lambda: gcd(f * (ys[0] + ys[1]), g * (ys[0] + ys[1]))),
    "example1": best(lambda: iterlog_subfield(parse_iterlog(EX1))),
    "example2": best(lambda: iterlog_subfield(parse_iterlog(EX2))),
}
print(json.dumps(res))
'''


def run(pure: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("LOGTOWER_PURE", None)
    if pure:
        env["LOGTOWER_PURE"] = "1"
    tests = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests")
    proc = subprocess.run([sys.executable, "-c", WORKLOAD, tests, str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    print(f"{'task':<10} {fast['backend']:>10} {slow['backend']:>10} {'speedup':>8}")
    for key in ("poly_mul", "poly_gcd", "example1", "example2"):
        print(f"{key:<10} {fast[key] * 1e3:>8.2f}ms {slow[key] * 1e3:>8.2f}ms {slow[key] / fast[key]:>7.2f}x")


if __name__ == "__main__":
    main()
