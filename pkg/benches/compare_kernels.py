"""Timing comparison of the pure-Python and compiled scalar kernels.

Micro-benchmarks hit the kernel functions directly on both backends;
the end-to-end row reruns a polynomial-heavy verification suite in a
subprocess with SUPERFLAG_PURE toggled, since the backend is chosen
once at import time.

Usage: python benches/compare_kernels.py [--number N] [--repeat R] [--skip-e2e]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from superflag.kernels import _pure

try:
    from superflag.kernels import _speedups
except ImportError:
    _speedups = None


def make_scalars(rng, count):
    out = []
    for _ in range(count):
        t = _pure.q_normalize(
            rng.randint(-50, 50), rng.randint(-50, 50),
            rng.randint(-50, 50), rng.randint(-50, 50),
            rng.randint(1, 30))
        out.append(t)
    return out


def make_odd_keys(rng, count, pool=40, width=6):
    return [tuple(sorted(rng.sample(range(pool), rng.randint(0, width))))
            for _ in range(count)]


def make_even_keys(rng, count, pool=12, width=4):
    out = []
    for _ in range(count):
        names = sorted(rng.sample("abcdefghijkl"[:pool],
                                  rng.randint(0, width)))
        out.append(tuple((n, rng.randint(1, 3)) for n in names))
    return out


def bench(fn, args_list, number, repeat):
    def run():
        for args in args_list:
            fn(*args)
    return min(timeit.repeat(run, number=number, repeat=repeat))


def micro_rows(number, repeat):
    rng = random.Random(13)
    scalars = make_scalars(rng, 200)
    pairs = [(scalars[i], scalars[(i * 7 + 3) % len(scalars)])
             for i in range(len(scalars))]
    nonzero = [(s,) for s in scalars if s != _pure.Q_ZERO]
    odd = make_odd_keys(rng, 200)
    odd_pairs = [(odd[i], odd[(i * 11 + 5) % len(odd)])
                 for i in range(len(odd))]
    even = make_even_keys(rng, 200)
    even_pairs = [(even[i], even[(i * 5 + 1) % len(even)])
                  for i in range(len(even))]
    workloads = [
        ("q_add", pairs),
        ("q_mul", pairs),
        ("q_inv", nonzero),
        ("merge_odd", odd_pairs),
        ("mul_even", even_pairs),
    ]
    rows = []
    for name, args_list in workloads:
        pure_t = bench(getattr(_pure, name), args_list, number, repeat)
        fast_t = (bench(getattr(_speedups, name), args_list, number, repeat)
                  if _speedups else None)
        rows.append((name, pure_t, fast_t))
    return rows


E2E_SNIPPET = (
    "import time; t0 = time.perf_counter(); "
    "from superflag.suites import suite_isomorphism, suite_osp_defining; "
    "r1 = suite_osp_defining(2, 2); r2 = suite_isomorphism(2, 2); "
    "assert r1.ok and r2.ok; "
    "print(time.perf_counter() - t0)"
)


def e2e_seconds(pure):
    env = dict(os.environ)
    env["SUPERFLAG_PURE"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", E2E_SNIPPET],
                         env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--number", type=int, default=200,
                        help="inner loop count per timing sample")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timing samples; the minimum is reported")
    parser.add_argument("--skip-e2e", action="store_true",
                        help="skip the subprocess end-to-end comparison")
    args = parser.parse_args(argv)

    if _speedups is None:
        print("compiled backend not importable; timing pure backend only",
              file=sys.stderr)

    rows = micro_rows(args.number, args.repeat)
    if not args.skip_e2e:
        rows.append(("verify suites (2,2)", e2e_seconds(pure=True),
                     None if _speedups is None else e2e_seconds(pure=False)))

    width = max(len(r[0]) for r in rows)
    print(f"{'workload':<{width}}  {'pure':>10}  {'compiled':>10}  {'speedup':>8}")
    for name, pure_t, fast_t in rows:
        if fast_t is None:
            print(f"{name:<{width}}  {pure_t:>9.4f}s  {'-':>10}  {'-':>8}")
        else:
            print(f"{name:<{width}}  {pure_t:>9.4f}s  {fast_t:>9.4f}s"
                  f"  {pure_t / fast_t:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
