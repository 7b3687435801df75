"""Time the compiled chart kernel against the pure-Python fallback.

    python3 benchmarks/bench_chart.py [--sizes 10 20 40] [--repeat 3]

Both kernels must return the same chart; the script stops if they disagree.
"""
import argparse
import random
import sys
import time
from pathlib import Path

from jointspan import decode
from jointspan.chart import COMPILED

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from generators import random_scoreset  # noqa: E402


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 30, 40, 60])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--lam", type=float, default=0.5)
    args = ap.parse_args(argv)
    if not COMPILED:
        sys.exit("compiled kernel not available; build with pip install -e . --no-build-isolation")
    print(f"{'n':>4}  {'cython s':>10}  {'python s':>10}  {'speedup':>8}")
    for n in args.sizes:
        scores = random_scoreset(random.Random(n), n)
        fast, a = best_time(lambda: decode(scores, args.lam, backend="cython"), args.repeat)
        slow, b = best_time(lambda: decode(scores, args.lam, backend="python"), args.repeat)
        if a.total != b.total or a.binary != b.binary:
            sys.exit(f"backends disagree at n={n}")
        print(f"{n:>4}  {fast:>10.4f}  {slow:>10.4f}  {slow / fast:>7.1f}x")


if __name__ == "__main__":
    main()
