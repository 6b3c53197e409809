"""Time the compiled and pure-Python Fujita grid kernels against each other.

    python benchmarks/bench_fujita.py [--bound 100] [--repeat 3] [--workers N]

Both backends run the same (m, alpha) cases; results are checked for
equality before any timing is reported.
"""
import argparse
import statistics
import sys
import time

from tiltstab import kernels

CASES = [(3, 1), (4, 1), (6, 2)]


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return result, min(times), statistics.median(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--bound", type=int, default=100)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    backends = ["python"] + (["cython"] if kernels.BACKEND == "cython" else [])
    if len(backends) == 1:
        print("compiled kernel not built; timing the Python kernel only", file=sys.stderr)

    print(f"bound={args.bound} workers={args.workers} repeat={args.repeat}")
    print(f"{'m':>3} {'alpha':>5} {'backend':>8} {'best s':>10} {'median s':>10} {'tuples':>12}")
    for m, alpha in CASES:
        reference = None
        timings = {}
        for backend in backends:
            result, best, median = best_time(
                lambda: kernels.fujita_scan(m, alpha, args.bound, workers=args.workers, backend=backend),
                args.repeat,
            )
            if reference is None:
                reference = result.rows
            elif result.rows != reference:
                raise SystemExit(f"backends disagree for m={m}, alpha={alpha}")
            timings[backend] = best
            print(f"{m:>3} {alpha:>5} {backend:>8} {best:>10.4f} {median:>10.4f} {result.checked:>12}")
        if len(timings) == 2 and timings["cython"] > 0:
            print(f"{'':>9} speedup x{timings['python'] / timings['cython']:.1f}")


if __name__ == "__main__":
    main()
