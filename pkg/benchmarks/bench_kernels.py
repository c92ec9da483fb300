"""Compiled vs pure-Python kernels on the two hot loops.

    python3 benchmarks/bench_kernels.py [--limit 100000] [--repeat 3]

Each backend factors every odd semiprime below ``--limit`` with the eps
search and runs Gamma scans below ``--gamma-limit``; the best of
``--repeat`` wall times is reported, and the outputs are compared.
"""
from __future__ import annotations

import argparse
import time

from hyperfact import epsilon, kernels
from hyperfact.exact_arith import odd_semiprimes


def _best(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=20_000)
    ap.add_argument("--gamma-limit", type=int, default=1_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    eps_ns = odd_semiprimes(15, args.limit)
    gam_ns = odd_semiprimes(15, args.gamma_limit)
    results = {}
    for name in kernels.backends():
        with kernels.use(name):
            t_eps, eps_out = _best(lambda: [epsilon.epsilon_factor(n) for n in eps_ns], args.repeat)
            t_gam, gam_out = _best(lambda: [kernels.gamma_hits(n, 1, n) for n in gam_ns], args.repeat)
        results[name] = (t_eps, t_gam, eps_out, gam_out)

    print(f"eps search: {len(eps_ns)} semiprimes < {args.limit}; "
          f"gamma scan: {len(gam_ns)} semiprimes < {args.gamma_limit}")
    print(f"{'backend':10} {'eps (s)':>10} {'gamma (s)':>10}")
    for name, (t_eps, t_gam, _, _) in results.items():
        print(f"{name:10} {t_eps:10.4f} {t_gam:10.4f}")
    if "compiled" in results:
        py, c = results["python"], results["compiled"]
        print(f"speedup    {py[0] / c[0]:9.1f}x {py[1] / c[1]:9.1f}x")
        assert py[2] == c[2] and py[3] == c[3], "backends disagree"
        print("outputs identical")
    else:
        print("compiled backend not built; python only")


if __name__ == "__main__":
    main()
