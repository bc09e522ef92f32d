"""Time the compiled and pure-Python enumerator backends on the same workloads.

Each backend runs in its own interpreter because the choice is fixed at import
time by TNN_DISABLE_NUMBA. Compilation is warmed up before timing.

    python3 benchmarks/bench_backends.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOADS = [
    # (label, p, r, k, n, filter)
    ("F_3  k=3 n=7 tnn", 3, 1, 3, 7, "tnn"),
    ("F_5  k=2 n=6 tnn", 5, 1, 2, 6, "tnn"),
    ("F_7  k=2 n=5 tnn", 7, 1, 2, 5, "tnn"),
    ("F_9  k=2 n=5 tnn", 3, 2, 2, 5, "tnn"),
    ("F_13 k=2 n=4 tnn", 13, 1, 2, 4, "tnn"),
]

CHILD = """
import json, sys, time
import tnnfq
from tnnfq import count, make_field
work, repeat = json.loads(sys.argv[1]), int(sys.argv[2])
count(2, 4, make_field(3))
out = {"backend": tnnfq.BACKEND, "rows": []}
for label, p, r, k, n, filt in work:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        c = count(k, n, make_field(p, r), filt, workers=1)
        best = min(best, time.perf_counter() - t0)
    out["rows"].append([label, c, best])
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("TNN_DISABLE_NUMBA", None)
    if disable:
        env["TNN_DISABLE_NUMBA"] = "1"
    proc = subprocess.run([sys.executable, "-c", CHILD, json.dumps(WORKLOADS), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fast = run(False, args.repeat)
    slow = run(True, 1)
    if fast["backend"] != "numba":
        print("numba is not installed; only the Python backend is available")
    print(f"{'workload':<20}{'count':>10}{fast['backend']:>12}{'python':>12}{'speedup':>10}")
    for (label, c1, t1), (_, c2, t2) in zip(fast["rows"], slow["rows"]):
        assert c1 == c2, f"backends disagree on {label}: {c1} vs {c2}"
        print(f"{label:<20}{c1:>10}{t1:>11.3f}s{t2:>11.3f}s{t2 / t1:>9.1f}x")


if __name__ == "__main__":
    main()
