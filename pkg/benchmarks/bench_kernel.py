"""Time the pure-Python and compiled character-sum kernels on the same input.

    python benchmarks/bench_kernel.py [--p 43] [--n 2] [--repeat 3]
"""
import argparse
import time

from k3i19 import kernel
from k3i19.pointcount import affine_character_sum


def best_of(repeat, fn):
    times, value = [], None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - start)
    return min(times), value


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--p", type=int, default=43)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = ["python"] + (["cython"] if kernel.compiled_char_sum is not None else [])
    results = {}
    for name in backends:
        elapsed, value = best_of(
            args.repeat, lambda: affine_character_sum(args.p, args.n, backend=name)
        )
        results[name] = (elapsed, value)
        print(f"{name:>7}: S = {value:>8d}  best of {args.repeat}: {elapsed:.4f} s")
    if len(results) == 2:
        (tp, sp), (tc, sc) = results["python"], results["cython"]
        assert sp == sc, "backends disagree"
        print(f"speed-up: {tp / tc:.1f}x (q^2 = {(args.p ** args.n) ** 2} pairs)")
    else:
        print("compiled kernel not built; only the Python backend was timed")


if __name__ == "__main__":
    main()
