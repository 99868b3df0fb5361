"""Compare the compiled and pure-Python reduction kernels on fixed workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import statistics
import time

from cylcalc import _backend
from cylcalc.counterexamples import build_truncation, chevalley_failure
from cylcalc.groebner import clear_cache, groebner_basis, ideal
from cylcalc.polycore import parse_poly_list


def cyclic(n):
    # cyclic-n in t0..t(n-1), a standard Groebner benchmark
    xs = [f"t{i}" for i in range(n)]
    polys = []
    for d in range(1, n):
        terms = ["*".join(xs[(i + k) % n] for k in range(d)) for i in range(n)]
        polys.append(" + ".join(terms))
    polys.append("*".join(xs) + " - 1")
    return ideal(*parse_poly_list("; ".join(polys)))


WORKLOADS = {
    "cyclic-4": lambda: groebner_basis(cyclic(4)),
    "cyclic-5": lambda: groebner_basis(cyclic(5)),
    "truncation p_12": lambda: groebner_basis(build_truncation(12).ideal(12)),
    "eliminate p_6 to t1": lambda: chevalley_failure(6),
    "katsura-4": lambda: groebner_basis(ideal(*parse_poly_list(
        "t0 + 2*t1 + 2*t2 + 2*t3 - 1; t0^2 + 2*t1^2 + 2*t2^2 + 2*t3^2 - t0;"
        "2*t0*t1 + 2*t1*t2 + 2*t2*t3 - t1; t1^2 + 2*t0*t2 + 2*t1*t3 - t2"))),
}


def timeit(fn, repeat):
    samples = []
    for _ in range(repeat):
        clear_cache()
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    backends = _backend.available()
    prev = _backend.current()
    rows = []
    try:
        for name, fn in WORKLOADS.items():
            times = {}
            for b in backends:
                _backend.use(b)
                times[b] = timeit(fn, args.repeat)
            rows.append((name, times))
    finally:
        _backend.use(prev)
    print(f"{'workload':24s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, times in rows:
        line = f"{name:24s}" + "".join(f"{times[b]:11.4f}s" for b in backends)
        if "cython" in times:
            line += f"   {times['python'] / times['cython']:8.2f}x"
        print(line)


if __name__ == "__main__":
    main()
