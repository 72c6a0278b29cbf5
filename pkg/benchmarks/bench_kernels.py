"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row reports the best-of-``repeat`` mean time per call for both backends
and their ratio (fallback / compiled). The end-to-end row times
``frame_operator`` on a product system with each backend swapped in.
"""
import argparse
import timeit

import numpy as np

from gff import _backend, frame_operator, random_system, tensor_system


def cases(rng):
    def c(*shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    for n, r in [(8, 4), (32, 16), (64, 64)]:
        a = c(n, r)
        yield f"mgs {n}x{r}", "mgs", (a, 1e-10)
    for n in (4, 8, 16):
        a, b = c(n, n), c(n, n)
        yield f"kron {n}x{n} (x) {n}x{n}", "kron", (a, b)
    for m, d, n in [(8, 2, 8), (64, 4, 64), (256, 2, 32)]:
        rows = c(m * d, n)
        offsets = np.arange(0, m * d + 1, d, dtype=np.intp)
        weights = rng.uniform(0.5, 2.0, m)
        yield f"weighted_gram m={m} d={d} n={n}", "weighted_gram", (rows, rows, weights, offsets)


def best(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()

    backends = _backend.available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; only the fallback is available")
    names = sorted(backends)
    header = f"{'kernel':34s}" + "".join(f"{n:>14s}" for n in names)
    print(header + ("     ratio" if len(names) == 2 else ""))

    rng = np.random.default_rng(0)
    for label, attr, call_args in cases(rng):
        times = [best(getattr(backends[n], attr), call_args, args.repeat) for n in names]
        row = f"{label:34s}" + "".join(f"{t * 1e6:12.1f}us" for t in times)
        if len(times) == 2:
            row += f"  {times[1] / times[0]:8.2f}x"
        print(row)

    systems = [
        ("frame_operator 8-dim, 5 comps", random_system(3, 8, 5, 2)),
        ("frame_operator 64-dim, 36 comps",
         tensor_system(random_system(1, 8, 6, 3), random_system(2, 8, 6, 3)).product),
    ]
    saved = _backend.weighted_gram
    try:
        for label, sys_ in systems:
            times = []
            for n in names:
                _backend.weighted_gram = backends[n].weighted_gram
                times.append(best(lambda: frame_operator(sys_), (), args.repeat))
            row = f"{label:34s}" + "".join(f"{t * 1e6:12.1f}us" for t in times)
            if len(times) == 2:
                row += f"  {times[1] / times[0]:8.2f}x"
            print(row)
    finally:
        _backend.weighted_gram = saved

if __name__ == "__main__":
    main()
