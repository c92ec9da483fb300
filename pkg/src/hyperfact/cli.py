"""``hyperfact`` command line.

Exit codes: 0 success, 1 domain rejection or failed check, 2 usage, 3 I/O.
"""
from __future__ import annotations

import csv
import io
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

import click

from hyperfact import baseline, curves, epsilon, hyperbola, kernels, pipeline, verify
from hyperfact.exact_arith import odd_semiprimes

EXIT_DOMAIN, EXIT_USAGE, EXIT_IO = 1, 2, 3


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("HYPERFACT_WORKERS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items, workers: int) -> list:
    """``[fn(x) for x in items]``, optionally across processes; order preserved."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _q(v) -> str:
    return str(v) if not isinstance(v, Fraction) else (str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}")


def _emit(text: str, out_path: str | None) -> None:
    if out_path in (None, "-"):
        click.echo(text, nl=False)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc}", err=True)
        sys.exit(EXIT_IO)


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


class Config:
    def __init__(self, fmt: str, workers: int, seed: int):
        self.fmt, self.workers, self.seed = fmt, workers, seed


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]), default="text", show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker processes [env HYPERFACT_WORKERS, default 1].")
@click.option("--seed", type=click.IntRange(min=0), default=0, show_default=True, help="Seed for random sampling.")
@click.pass_context
def main(ctx, fmt, workers, seed):
    """Hyperbola-based factoring and verification toolkit."""
    ctx.obj = Config(fmt, workers or default_workers(), seed)


# --- factor ------------------------------------------------------------------

@main.command("factor")
@click.argument("n", type=click.IntRange(min=1))
@click.option("--method", type=click.Choice(pipeline.STRATEGIES), default="epsilon", show_default=True)
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Max eps candidates (default n // 2).")
@click.pass_obj
def factor_cmd(cfg: Config, n, method, budget):
    """Factor an odd composite N."""
    try:
        res = pipeline.factor(n, method, budget)
    except pipeline.DomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    if res is None:
        click.echo(f"error: no factorization found for {n}", err=True)
        sys.exit(EXIT_DOMAIN)
    if isinstance(res.certificate, epsilon.EpsilonProfile):
        eps = res.certificate.epsilon
        cert = asdict(res.certificate)
    else:
        eps = res.details.get("epsilon")
        cert = res.certificate.as_dict()
    if cfg.fmt == "json":
        click.echo(_json({"n": n, "p": res.p, "q": res.q, "method": res.method, "epsilon": eps,
                          "certificate": cert, "details": res.details}), nl=False)
    elif cfg.fmt == "csv":
        click.echo(_csv(["n", "p", "q", "method", "epsilon"], [[n, res.p, res.q, res.method, eps]]), nl=False)
    else:
        click.echo(f"{n} = {res.p} × {res.q} (epsilon={eps})")
        if isinstance(res.certificate, curves.ChainTrace):
            click.echo(str(res.certificate))


# --- enumerate ---------------------------------------------------------------

@main.command("enumerate")
@click.argument("n", type=click.IntRange(min=2))
@click.pass_obj
def enumerate_cmd(cfg: Config, n):
    """List every integral point of y^2 = x^2 - 4Nx."""
    params = hyperbola.HyperbolaParams(n)
    pts = sorted(hyperbola.enumerate_integral_points(params))
    region = hyperbola.region_points(params, set(pts))
    try:
        formula = (hyperbola.cardinality_total(params), hyperbola.cardinality_region(params))
    except NotImplementedError:
        formula = (None, None)
    if cfg.fmt == "json":
        click.echo(_json({"n": n, "count": len(pts), "region_count": len(region),
                          "formula_count": formula[0], "formula_region_count": formula[1],
                          "points": [[_q(p.x), _q(p.y)] for p in pts]}), nl=False)
    elif cfg.fmt == "csv":
        click.echo(_csv(["x", "y", "in_region"], [[_q(p.x), _q(p.y), int(p in region)] for p in pts]), nl=False)
    else:
        click.echo(f"n = {n}: {len(pts)} integral points, {len(region)} with x >= 4n, y >= 0")
        if formula[0] is not None:
            click.echo(f"closed form: {formula[0]} total, {formula[1]} in region")
        for p in pts:
            click.echo(f"  ({_q(p.x)}, {_q(p.y)}){'  *' if p in region else ''}")


# --- verify ------------------------------------------------------------------

def _semiprime_job(args):
    n, seed, faults = args
    return (verify.check_semiprime(n, faults) + verify.check_curve_constants(n, faults)
            + verify.check_chain_roundtrip(n, 2, seed, faults))


def _prime_power_job(args):
    n, faults = args
    return verify.check_prime_power(n, faults)


def _curve_job(args):
    n, faults = args
    return verify.check_curve_constants(n, faults)


def _roundtrip_job(args):
    n, samples, seed, faults = args
    return verify.check_chain_roundtrip(n, samples, seed, faults)


@main.command("verify")
@click.option("--semiprimes-to", type=click.IntRange(min=0), default=0, help="Check every odd semiprime below this.")
@click.option("--prime-powers-to", type=click.IntRange(min=0), default=0, help="Check every prime power below this.")
@click.option("--curves-to", type=click.IntRange(min=0), default=0, help="Discriminant/coefficient checks for 2 <= n <= this.")
@click.option("--roundtrip-samples", type=click.IntRange(min=0), default=0, help="Random chain roundtrips per n in --roundtrip-n.")
@click.option("--roundtrip-n", multiple=True, type=click.IntRange(min=2), default=(15, 21, 35, 77, 5959), show_default=True)
@click.option("--inject-fault", multiple=True, type=click.Choice(sorted(verify.CHECKS)), hidden=True)
@click.pass_obj
def verify_cmd(cfg: Config, semiprimes_to, prime_powers_to, curves_to, roundtrip_samples, roundtrip_n, inject_fault):
    """Run the invariant suites over a range; exit 0 iff all hold."""
    if not (semiprimes_to or prime_powers_to or curves_to or roundtrip_samples):
        raise click.UsageError("nothing to verify; pass at least one range option")
    faults = frozenset(inject_fault)
    failures: list[verify.Failure] = []
    counts: dict[str, int] = {}
    if semiprimes_to:
        ns = verify.semiprimes(semiprimes_to)
        counts["semiprimes"] = len(ns)
        for r in parallel_map(_semiprime_job, [(n, cfg.seed, faults) for n in ns], cfg.workers):
            failures.extend(r)
    if prime_powers_to:
        ns = verify.prime_powers(prime_powers_to)
        counts["prime_powers"] = len(ns)
        for r in parallel_map(_prime_power_job, [(n, faults) for n in ns], cfg.workers):
            failures.extend(r)
    if curves_to:
        ns = list(range(2, curves_to + 1))
        counts["curves"] = len(ns)
        for r in parallel_map(_curve_job, [(n, faults) for n in ns], cfg.workers):
            failures.extend(r)
    if roundtrip_samples:
        counts["roundtrips"] = roundtrip_samples * len(roundtrip_n)
        jobs = [(n, roundtrip_samples, cfg.seed, faults) for n in roundtrip_n]
        for r in parallel_map(_roundtrip_job, jobs, cfg.workers):
            failures.extend(r)
    if cfg.fmt == "json":
        click.echo(_json({"counts": counts, "passed": not failures,
                          "failures": [{"check": f.check.name, "module": f.check.module, "claim": f.check.claim,
                                        "n": f.n, "detail": f.detail} for f in failures]}), nl=False)
    elif cfg.fmt == "csv":
        click.echo(_csv(["check", "module", "n", "detail", "claim"],
                        [[f.check.name, f.check.module, f.n, f.detail, f.check.claim] for f in failures]), nl=False)
    else:
        for k, v in counts.items():
            click.echo(f"checked {v} {k}")
        for f in failures:
            click.echo(str(f))
        click.echo("all checks passed" if not failures else f"{len(failures)} failure(s)")
    sys.exit(0 if not failures else EXIT_DOMAIN)


# --- scan-gamma --------------------------------------------------------------

def _gamma_job(n: int):
    hit = epsilon.epsilon_factor(n)
    eps1 = hit[2] if hit else None
    return epsilon.gamma_scan(n, n, eps1)


@main.command("scan-gamma")
@click.option("--from", "lo", type=click.IntRange(min=1), default=15, show_default=True)
@click.option("--to", "hi", type=click.IntRange(min=1), required=True, help="Inclusive upper bound on n.")
@click.option("--counterexamples", "cx_path", type=click.Path(dir_okay=False), default=None,
              help="Write n with #Gamma != 3 here (CSV).")
@click.pass_obj
def scan_gamma_cmd(cfg: Config, lo, hi, cx_path):
    """Scan Gamma(i) over 1..n for every odd semiprime n in [FROM, TO]."""
    ns = odd_semiprimes(lo, hi + 1)
    results = parallel_map(_gamma_job, ns, cfg.workers)
    header = ["n", "members", "f1_fired", "f2_fired", "epsilon1", "epsilon2", "conjecture_holds", "sub_claims_hold"]
    rows = []
    bad_sub = 0
    counterexamples = []
    for r in results:
        sub = all(r.sub_claims().values())
        bad_sub += not sub
        if len(r.members) != 3:
            counterexamples.append(r)
        rows.append([r.n, " ".join(map(str, r.members)),
                     " ".join(str(int(r.provenance[i][0])) for i in r.members),
                     " ".join(str(int(r.provenance[i][1])) for i in r.members),
                     r.epsilon1, r.epsilon2, r.conjecture_holds, sub])
    if cx_path:
        _emit(_csv(["n", "members"], [[r.n, " ".join(map(str, r.members))] for r in counterexamples]), cx_path)
    if cfg.fmt == "json":
        click.echo(_json([dict(zip(header, row)) for row in rows]), nl=False)
    elif cfg.fmt == "csv":
        click.echo(_csv(header, rows), nl=False)
    else:
        for row in rows:
            click.echo(f"n={row[0]}: Gamma = {{{row[1]}}} holds={row[6]}")
        click.echo(f"{len(rows)} semiprimes scanned, {len(counterexamples)} with #Gamma != 3, "
                   f"{bad_sub} failing sub-claims")
    sys.exit(0 if bad_sub == 0 else EXIT_DOMAIN)


# --- chain -------------------------------------------------------------------

def _parse_q(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise click.BadParameter(f"not an exact rational: {s!r}") from exc


@main.command("chain")
@click.argument("n", type=click.IntRange(min=2))
@click.option("--x", "x", default=None, help="Start from this R_n point instead of the true Hyper pair.")
@click.option("--y", "y", default=None)
@click.pass_obj
def chain_cmd(cfg: Config, n, x, y):
    """Walk a point R_n -> J_Q -> E_w -> E_k and back, printing every stage."""
    if (x is None) != (y is None):
        raise click.UsageError("--x and --y go together")
    if x is None:
        try:
            pipeline._screen(n)
        except pipeline.DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_DOMAIN)
        hit = epsilon.epsilon_factor(n)
        if hit is None:
            click.echo(f"error: no eps found for {n}", err=True)
            sys.exit(EXIT_DOMAIN)
        X, Y = epsilon.hyper_roots_from_epsilon(n, hit[2])
    else:
        X, Y = _parse_q(x), _parse_q(y)
    if curves.rn_eval(n, Fraction(X), Fraction(Y)) != 0:
        click.echo(f"error: ({_q(X)}, {_q(Y)}) is not on R_{n}", err=True)
        sys.exit(EXIT_DOMAIN)
    try:
        fwd = curves.forward_chain(n, X, Y)
    except curves.ChainDomainError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_DOMAIN)
    end = fwd.last
    res = pipeline.backward_pipeline(n, end) if end is curves.INFINITY else pipeline.backward_pipeline(n, *end)
    back = res.certificate if isinstance(res, pipeline.FactorResult) else res.trace
    outcome = ({"factors": [res.p, res.q], **res.details} if isinstance(res, pipeline.FactorResult)
               else {"rejected": res.reason})
    if cfg.fmt == "json":
        click.echo(_json({"n": n, "forward": fwd.as_dict(), "backward": back.as_dict() if back else None,
                          "outcome": outcome}), nl=False)
    elif cfg.fmt == "csv":
        rows = [["forward", s, *(["inf", "inf"] if p is curves.INFINITY else [_q(p[0]), _q(p[1])])]
                for s, p in fwd.entries]
        if back:
            rows += [["backward", s, *(["inf", "inf"] if p is curves.INFINITY else [_q(p[0]), _q(p[1])])]
                     for s, p in back.entries]
        click.echo(_csv(["direction", "stage", "u", "v"], rows), nl=False)
    else:
        click.echo("forward:")
        click.echo(str(fwd))
        if back:
            click.echo("backward:")
            click.echo(str(back))
        if isinstance(res, pipeline.FactorResult):
            click.echo(f"{n} = {res.p} × {res.q}  (gcd(x_P2, n) = {res.details['gcd_x_p2']}, "
                       f"gcd(x_P3, n) = {res.details['gcd_x_p3']})")
        else:
            click.echo(f"rejected: {res.reason}")


# --- dataset -----------------------------------------------------------------

@dataclass(frozen=True)
class DatasetRow:
    n: int
    p: int
    q: int
    epsilon: int
    k: int
    sum_pq: int
    phi: int
    hyper_x: int
    hyper_y: int
    f1_at_eps: int
    conjecture_holds: bool


DATASET_COLUMNS = [f.name for f in fields(DatasetRow)]


def dataset_row(n: int) -> DatasetRow:
    p, q, eps = epsilon.epsilon_factor(n)
    prof = epsilon.epsilon_profile(n, eps)
    scan = epsilon.gamma_scan(n, n, eps)
    return DatasetRow(n=n, p=min(p, q), q=max(p, q), epsilon=eps, k=prof.k, sum_pq=prof.sum_pq, phi=prof.phi,
                      hyper_x=prof.hyper_x, hyper_y=prof.hyper_y, f1_at_eps=epsilon.f1(n, eps),
                      conjecture_holds=scan.conjecture_holds)


@main.command("dataset")
@click.option("--from", "lo", type=click.IntRange(min=1), default=15, show_default=True)
@click.option("--to", "hi", type=click.IntRange(min=0), required=True, help="Inclusive upper bound on n.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False, allow_dash=True), default="-", show_default=True)
@click.pass_obj
def dataset_cmd(cfg: Config, lo, hi, out_path):
    """One row of eps features per odd semiprime in [FROM, TO]."""
    rows = parallel_map(dataset_row, odd_semiprimes(lo, hi + 1), cfg.workers)
    if cfg.fmt == "json":
        text = _json([asdict(r) for r in rows])
    else:
        text = _csv(DATASET_COLUMNS, [[getattr(r, c) for c in DATASET_COLUMNS] for r in rows])
    _emit(text, out_path)


# --- bench -------------------------------------------------------------------

def _time_ns(fn, ns) -> int:
    t0 = time.perf_counter_ns()
    for n in ns:
        fn(n)
    return time.perf_counter_ns() - t0


@main.command("bench")
@click.option("--to", "hi", type=click.IntRange(min=16), default=10**5, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True)
@click.pass_obj
def bench_cmd(cfg: Config, hi, samples):
    """Time trial division, Fermat and eps search on sampled semiprimes, per kernel backend."""
    pool = odd_semiprimes(15, hi)
    rng = random.Random(cfg.seed)
    ns = sorted(rng.sample(pool, min(samples, len(pool))))
    rows = []
    for backend in kernels.backends():
        with kernels.use(backend):
            for name, fn in (("trial", baseline.trial_division), ("fermat", baseline.fermat),
                             ("epsilon", epsilon.epsilon_factor)):
                rows.append([backend, name, len(ns), _time_ns(fn, ns) // 1000])
    iters = {"trial": 0, "fermat": 0, "epsilon": 0}
    for n in ns:
        iters["trial"] += baseline.trial_division_report(n).iterations
        iters["fermat"] += baseline.fermat_report(n).iterations
        iters["epsilon"] += epsilon.epsilon_factor(n)[2]
    header = ["backend", "method", "count", "elapsed_us"]
    if cfg.fmt == "json":
        click.echo(_json({"default_backend": kernels.BACKEND, "iterations": iters,
                          "timings": [dict(zip(header, r)) for r in rows]}), nl=False)
    elif cfg.fmt == "csv":
        click.echo(_csv(header, rows), nl=False)
    else:
        click.echo(f"{len(ns)} odd semiprimes below {hi} (seed {cfg.seed}); default backend: {kernels.BACKEND}")
        for r in rows:
            click.echo(f"  {r[0]:9} {r[1]:8} {r[3]:>12} us")
        click.echo("candidates tried: " + ", ".join(f"{k}={v}" for k, v in iters.items()))


if __name__ == "__main__":
    main()
