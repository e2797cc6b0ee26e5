"""Compare the compiled and pure occupancy-counting backends.

Usage: python benchmarks/bench_counting.py [--sizes 64,128,256]
       [--deltas 2,5,11] [--repeats 5]
"""

import argparse
import time

import numpy as np

from probdim import _countpure

try:
    from probdim import _countcore
except ImportError:
    _countcore = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="64,128,256")
    parser.add_argument("--deltas", default="2,5,11")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    deltas = [int(d) for d in args.deltas.split(",")]
    rng = np.random.default_rng(0)

    if _countcore is None:
        print("compiled backend not built; timing the pure backend only")

    header = f"{'case':24} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for size in sizes:
        px = rng.integers(0, 256, size=(size, size), dtype=np.uint8)
        for variant in ("grid", "gliding"):
            for delta in deltas:
                if delta > size // 2:
                    continue
                pure_fn = getattr(_countpure, f"{variant}_occupancy")
                t_pure = best_of(lambda: pure_fn(px, delta), args.repeats)
                label = f"{variant} {size}x{size} d={delta}"
                if _countcore is None:
                    print(f"{label:24} {t_pure * 1e3:9.2f}ms {'-':>10} {'-':>8}")
                    continue
                comp_fn = getattr(_countcore, f"{variant}_occupancy")
                assert np.array_equal(np.asarray(comp_fn(px, delta)),
                                      np.asarray(pure_fn(px, delta)))
                t_comp = best_of(lambda: comp_fn(px, delta), args.repeats)
                print(f"{label:24} {t_pure * 1e3:9.2f}ms {t_comp * 1e3:9.2f}ms "
                      f"{t_pure / t_comp:7.1f}x")


if __name__ == "__main__":
    main()
