"""Compare the compiled and pure-Python box classifiers.

Run:  python benchmarks/bench_kernels.py [--boxes N] [--repeat R]

Both backends classify the same random sub-boxes of the gauge chart for
several fixtures; the script checks that codes and bounds agree bit for
bit and prints boxes/second for each backend.
"""
import argparse
import time

import numpy as np

from unknot_qe import fixtures, kernels
from unknot_qe.polysys import build_system
from unknot_qe.solver.chart import Chart, compile_system
from unknot_qe.wirtinger import build_presentation


def random_boxes(chart, count, rng):
    lo0, hi0 = chart.bounds()
    width = (hi0 - lo0) * rng.uniform(1e-3, 0.5, size=(count, chart.dim))
    lo = lo0 + (hi0 - lo0 - width) * rng.uniform(size=(count, chart.dim))
    return lo, lo + width


def best_time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--boxes", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    if len(backends) == 1:
        print("compiled backend unavailable; timing the fallback only")
    rng = np.random.default_rng(args.seed)
    header = f"{'fixture':<16}{'dim':>4}" + "".join(f"{b + ' box/s':>18}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name in ("unknot_2", "trefoil", "figure_eight", "6_1"):
        sys_ = build_system(build_presentation(fixtures.load_diagram(name)))
        chart = Chart(sys_.n)
        eq, ineq = compile_system(sys_, chart)
        lo, hi = random_boxes(chart, args.boxes, rng)
        rates, outs = [], []
        for b in backends:
            t, out = best_time(lambda: kernels.classify(lo, hi, eq, ineq, 1e-4, backend=b), args.repeat)
            rates.append(args.boxes / t)
            outs.append(out)
        if len(outs) == 2:
            for a, b in zip(*outs):
                if not np.array_equal(a, b):
                    raise SystemExit(f"backend mismatch on {name}")
        line = f"{name:<16}{chart.dim:>4}" + "".join(f"{r:>18,.0f}" for r in rates)
        if len(rates) == 2:
            line += f"{rates[1] / rates[0]:>9.1f}x"
        print(line)
    if len(backends) == 2:
        print("outputs identical across backends")


if __name__ == "__main__":
    main()
