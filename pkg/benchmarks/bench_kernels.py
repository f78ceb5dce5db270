"""Time the compiled and pure-Python division kernels on the co2 quotient.

    python3 benchmarks/bench_kernels.py [--sizes 100000 1000000] [--modulus 4]

The Python backend is skipped above --python-max (it runs one numpy dot
product per coefficient and gets slow past 10^5 or so).
"""

import argparse
import time

from concomp import (
    CoefficientRing,
    CompositionFamily,
    available_backends,
    family_numerator,
    pentagonal_denominator,
    series_divide_sparse,
    use_backend,
)


def run(backend, family, ring, N):
    num, den = family_numerator(family, N), pentagonal_denominator(N)
    with use_backend(backend):
        t0 = time.perf_counter()
        out = series_divide_sparse(num, den, ring, N)
        return time.perf_counter() - t0, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[10**4, 10**5, 10**6])
    ap.add_argument("--modulus", type=int, default=4)
    ap.add_argument("--family", default="co2")
    ap.add_argument("--python-max", type=int, default=2 * 10**5)
    args = ap.parse_args()

    family = CompositionFamily.parse(args.family)
    ring = CoefficientRing.mod(args.modulus)
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    print(f"{'N':>9} {'backend':>9} {'seconds':>9} {'speedup':>8}")
    for N in args.sizes:
        timings, results = {}, {}
        for backend in backends:
            if backend == "python" and N > args.python_max:
                continue
            timings[backend], results[backend] = run(backend, family, ring, N)
        if len(results) == 2 and results["compiled"] != results["python"]:
            raise SystemExit(f"backends disagree at N={N}")
        for backend, t in timings.items():
            speedup = ""
            if backend == "compiled" and "python" in timings:
                speedup = f"{timings['python'] / t:.1f}x"
            print(f"{N:>9} {backend:>9} {t:>9.3f} {speedup:>8}")


if __name__ == "__main__":
    main()
