"""Compare the compiled and interpreted coset enumeration kernels.

    python3 benchmarks/bench_coset.py [--repeat N]

Each backend runs in its own interpreter because the choice is fixed at
import time by ``DDB_USE_NUMBA``.
"""

import argparse
import json
import os
import subprocess
import sys
import time

CASES = [
    ("BinT", "< s, t | s^3 = t^3 = (s t)^2 >"),
    ("BinO", "< s, t | s^4 = t^3 = (s t)^2 >"),
    ("BinI", "< s, t | s^5 = t^3 = (s t)^2 >"),
    ("Prism(7,5)", "< a, b | a b a^-1 b, a^10 b^-7 >"),
    ("PSL(2,7)", "< a, b | a^2, b^3, (a b)^7, [a, b]^4 >"),
    ("C23 x C29", "< a, b | a^23, b^29, [a, b] >"),
    ("C20^3", "< a, b, c | a^20, b^20, c^20, [a, b], [b, c], [a, c] >"),
]


def worker(repeat: int) -> None:
    from ddb._accel import backend_name
    from ddb.cosets import todd_coxeter
    from ddb.parser import parse_presentation

    t0 = time.perf_counter()
    todd_coxeter(parse_presentation("< a | a^2 >"))
    warmup = time.perf_counter() - t0
    rows = []
    for name, text in CASES:
        p = parse_presentation(text)
        best, index = float("inf"), None
        for _ in range(repeat):
            t0 = time.perf_counter()
            index = todd_coxeter(p).index
            best = min(best, time.perf_counter() - t0)
        rows.append({"case": name, "index": index, "seconds": best})
    print(json.dumps({"backend": backend_name(), "warmup": warmup, "rows": rows}))


def run(flag: str, repeat: int) -> dict:
    env = dict(os.environ, DDB_USE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, __file__, "--worker", "--repeat", str(repeat)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        worker(args.repeat)
        return
    fast, slow = run("1", args.repeat), run("0", args.repeat)
    print(f"{'case':<12} {'index':>7} {'numba s':>10} {'python s':>10} {'speedup':>8}")
    for f, s in zip(fast["rows"], slow["rows"]):
        assert f["index"] == s["index"], (f, s)
        print(f"{f['case']:<12} {f['index']:>7} {f['seconds']:>10.4f} {s['seconds']:>10.4f} "
              f"{s['seconds'] / f['seconds']:>7.1f}x")
    print(f"import + first call: numba {fast['warmup']:.2f}s, python {slow['warmup']:.2f}s")


if __name__ == "__main__":
    main()
