"""Command-line front end: ``regspec <subcommand> ...``.

Each run writes ``<out>/<subcommand>.json`` (and optionally a CSV
projection) plus ``<out>/manifest.json`` recording parameters, toolkit
version, wall-clock time and the SHA-256 digests of the result files.

Exit codes: 0 success, 2 argument or input error, 3 budget refusal.
"""

import argparse
import csv
import hashlib
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from . import experiments as X
from .census import census
from .graph import Cycle, GraphError, RegularGraph
from .nbwalks import cnbw_counts, cnbw_divisor_sum
from .sampler import (
    CHAIN,
    PAIRING,
    BudgetExceeded,
    RejectionStall,
    SampleStats,
    SamplerConfig,
    sample_regular,
)
from .spectral import (
    GAMMA,
    PHI,
    centering_m_f,
    coefficient_decay,
    eigen_functional,
    gamma_trace_deviations,
    limit_variance_growing_d,
    named_expansion,
    r_n,
    sample_limit_fixed_d,
    scaled_spectrum,
)
from .switchings import InvalidMove, backward_switchings, count_backward, count_forward, forward_switchings

EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def dumps(results):
    """Canonical bytes for a results dictionary."""
    return (json.dumps(_jsonable(results), sort_keys=True, indent=2) + "\n").encode()


def _flatten(prefix, x, rows):
    if isinstance(x, dict):
        for k in sorted(x, key=str):
            _flatten(f"{prefix}.{k}" if prefix else str(k), x[k], rows)
    elif isinstance(x, list) and all(not isinstance(v, (dict, list)) for v in x):
        for i, v in enumerate(x):
            rows.append((f"{prefix}[{i}]", v))
    elif isinstance(x, list):
        for i, v in enumerate(x):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, x))


def _load(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"input file not found: {path}")
    try:
        return RegularGraph.load(p)
    except (GraphError, ValueError) as exc:
        raise UsageError(f"cannot parse {path}: {exc}") from exc


# -- subcommands -------------------------------------------------------------


def cmd_sample(a, out):
    cfg = SamplerConfig(n=a.n, d=a.d, seed=a.seed, method=a.method, burn_in=a.burn_in)
    stats = SampleStats()
    graphs = sample_regular(cfg, a.count, a.threads, stats)
    files = []
    for i, g in enumerate(graphs):
        name = f"sample_{i:05d}.txt"
        (out / name).write_text(g.to_text())
        files.append(name)
    res = {
        "params": {"n": a.n, "d": a.d, "count": a.count, "seed": a.seed, "method": cfg.method},
        "files": files,
    }
    if cfg.method == PAIRING:
        res["acceptance"] = {"attempts": stats.attempts, "rate": stats.acceptance_rate}
    else:
        res["burn_in"] = cfg.chain_steps
    return res, files


def cmd_census(a, out):
    g = _load(a.input)
    c = census(g, a.r)
    return {"C": {str(k): v for k, v in c.counts.items()}}, []


def cmd_prob(a, out):
    params = {"k": a.k}
    if a.structure != "cycle":
        params.update(j=a.j)
    if a.structure == "two-cycles":
        params.update(f=a.f)
    if a.structure == "joined":
        params.update(l=a.l)
    return X.subgraph_probability(a.structure, a.n, a.d, a.samples, a.seed, a.constant, a.threads, **params), []


def cmd_switch(a, out):
    g = _load(a.input)
    try:
        alpha = Cycle(tuple(int(t) for t in a.alpha.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad --alpha {a.alpha!r}: {exc}") from exc
    res = {"alpha": list(alpha.vertices), "r": a.r, "mode": a.mode}
    rng = np.random.default_rng(a.seed)
    if not (a.count_forward or a.count_backward or a.list):
        a.count_forward = True
    if a.count_forward:
        est = count_forward(g, alpha, a.r, a.mode, a.proposals, rng)
        res["forward"] = {"value": est.value, "stderr": est.stderr, "upper_bound": est.upper_bound}
    if a.count_backward:
        est = count_backward(g, alpha, a.r, a.mode, a.proposals, rng)
        res["backward"] = {"value": est.value, "stderr": est.stderr, "upper_bound": est.upper_bound}
    if a.list:
        on_graph = all(g.has_edge(x, y) for x, y in alpha.edges)
        moves = forward_switchings(g, alpha, a.r) if on_graph else backward_switchings(g, alpha, a.r)
        res["moves"] = [{"u": list(s.u), "w": list(s.w)} for s in moves]
        res["direction"] = "forward" if on_graph else "backward"
    return res, []


def cmd_stein(a, out):
    return X.stein_experiment(a.n, a.d, a.r, a.samples, a.seed, a.proposals, a.threads), []


def cmd_cnbw(a, out):
    g = _load(a.input)
    walks = cnbw_counts(g, a.kmax)
    res = {"kmax": a.kmax, "CNBW": {str(k): v for k, v in walks.items()}}
    if a.check_divisor_sum:
        via = cnbw_divisor_sum(census(g, max(a.kmax, 3)), a.kmax)
        res["divisor_sum"] = {str(k): v for k, v in via.items()}
        res["agree"] = via == walks
    return res, []


def cmd_spectra(a, out):
    g = _load(a.input)
    spec = scaled_spectrum(g)
    exp = named_expansion(a.f, a.basis, g.d, a.m)
    kmax = min(a.kmax, 10)
    dev = gamma_trace_deviations(spec, cnbw_counts(g, kmax), kmax)
    res = {
        "n": g.n,
        "d": g.d,
        "eigenvalues": spec.values,
        "f": a.f,
        "basis": a.basis,
        "coefficients": exp.coeffs,
        "coefficient_decay": coefficient_decay(exp),
        "functional": eigen_functional(spec, exp),
        "gamma_identity_max_deviation": max(dev.values()),
    }
    return res, []


def cmd_limit(a, out):
    if a.mode == "fixed-d":
        exp = named_expansion(a.f, GAMMA, a.d, a.m)
        draws, tail = sample_limit_fixed_d(exp, a.d, a.kmax, a.count, a.seed)
        qs = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99]
        res = {
            "params": {"mode": a.mode, "d": a.d, "f": a.f, "m": a.m, "kmax": a.kmax, "count": a.count, "seed": a.seed},
            "mean": float(draws.mean()),
            "variance": float(draws.var()),
            "quantiles": {str(q): float(v) for q, v in zip(qs, np.quantile(draws, qs))},
            "tail_bound": tail,
        }
        return res, []
    exp = named_expansion(a.f, PHI, a.d, a.m)
    rn = r_n(a.n, a.d, a.beta)
    res = {
        "params": {"mode": a.mode, "n": a.n, "d": a.d, "f": a.f, "m": a.m, "beta": a.beta},
        "r_n": rn,
        "variance": limit_variance_growing_d(exp),
        "centering": centering_m_f(a.n, a.d, exp, rn),
    }
    return res, []


def cmd_verify_poisson(a, out):
    return X.verify_poisson(a.n, a.d, a.r, a.samples, a.seed, a.threads, a.constant), []


def cmd_verify_clt(a, out):
    return X.verify_clt(a.n, a.d, a.kmax, a.samples, a.seed, a.threads, a.method, a.burn_in, a.beta), []


def cmd_metagraph_check(a, out):
    return X.metagraph_check(a.n, a.d, a.r), []


# -- parser ------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="regspec", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"regspec {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(fn=fn)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int, default=None, help="worker threads (default: $REGSPEC_THREADS or 1)")
        sp.add_argument("--out", default="regspec-out", help="directory for results and manifest")
        sp.add_argument("--json", action="store_true", help="print the results JSON to stdout")
        sp.add_argument("--csv", action="store_true", help="also write a flat CSV projection")
        return sp

    sp = add("sample", cmd_sample, "draw random regular graphs")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--method", choices=[PAIRING, CHAIN], default=None)
    sp.add_argument("--burn-in", type=int, default=0)

    sp = add("census", cmd_census, "count short cycles of a graph file")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--r", type=int, required=True)

    sp = add("prob", cmd_prob, "Monte Carlo probability of a small subgraph")
    sp.add_argument("--structure", choices=["cycle", "two-cycles", "joined"], default="cycle")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--j", type=int, default=3)
    sp.add_argument("--f", type=int, default=0, help="shared edges (two-cycles)")
    sp.add_argument("--l", type=int, default=1, help="path length (joined)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--constant", type=float, default=1.0)

    sp = add("switch", cmd_switch, "count or list switchings on a cycle")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--alpha", required=True, help="comma separated cycle vertices")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--count-forward", action="store_true")
    sp.add_argument("--count-backward", action="store_true")
    sp.add_argument("--list", action="store_true")
    sp.add_argument("--mode", choices=["exact", "monte-carlo"], default="exact")
    sp.add_argument("--proposals", type=int, default=1000)

    sp = add("stein", cmd_stein, "empirical Stein certificate")
    for flag, default in (("--n", 200), ("--d", 3), ("--r", 4), ("--samples", 500), ("--proposals", 200)):
        sp.add_argument(flag, type=int, default=default)

    sp = add("cnbw", cmd_cnbw, "cyclically non-backtracking walk counts of a graph file")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--kmax", type=int, default=8)
    sp.add_argument("--check-divisor-sum", action="store_true")

    sp = add("spectra", cmd_spectra, "scaled spectrum and an eigenvalue functional")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--f", default="exp")
    sp.add_argument("--basis", choices=[GAMMA, PHI], default=GAMMA)
    sp.add_argument("--m", type=int, default=12)
    sp.add_argument("--kmax", type=int, default=10)

    sp = add("limit", cmd_limit, "limiting laws of eigenvalue functionals")
    sp.add_argument("--mode", choices=["fixed-d", "growing-d"], default="fixed-d")
    sp.add_argument("--n", type=int, default=1000)
    sp.add_argument("--d", type=int, default=3)
    sp.add_argument("--f", default="gamma3")
    sp.add_argument("--m", type=int, default=12)
    sp.add_argument("--kmax", type=int, default=20)
    sp.add_argument("--count", type=int, default=100000)
    sp.add_argument("--beta", type=float, default=0.3)

    sp = add("verify-poisson", cmd_verify_poisson, "cycle counts against independent Poisson laws")
    for flag, default in (("--n", 1000), ("--d", 3), ("--r", 5), ("--samples", 2000)):
        sp.add_argument(flag, type=int, default=default)
    sp.add_argument("--constant", type=float, default=10.0)

    sp = add("verify-clt", cmd_verify_clt, "standardized walk counts against normal laws")
    for flag, default in (("--n", 2000), ("--d", 4), ("--kmax", 4), ("--samples", 10000), ("--burn-in", 0)):
        sp.add_argument(flag, type=int, default=default)
    sp.add_argument("--method", choices=[PAIRING, CHAIN], default=None)
    sp.add_argument("--beta", type=float, default=0.3)

    sp = add("metagraph-check", cmd_metagraph_check, "exact reversibility of the switching walk")
    for flag, default in (("--n", 6), ("--d", 3), ("--r", 5)):
        sp.add_argument(flag, type=int, default=default)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    out = Path(a.out)
    started = time.perf_counter()
    try:
        out.mkdir(parents=True, exist_ok=True)
        results, extra = a.fn(a, out)
    except UsageError as exc:
        print(f"regspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, RejectionStall) as exc:
        print(f"regspec: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, InvalidMove, ValueError) as exc:
        print(f"regspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - started

    name = a.command
    blob = dumps(results)
    written = {f"{name}.json": blob}
    if a.csv:
        rows = []
        _flatten("", _jsonable(results), rows)
        path = out / f"{name}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["key", "value"])
            w.writerows(rows)
        written[f"{name}.csv"] = path.read_bytes()
    (out / f"{name}.json").write_bytes(blob)
    for fname in extra:
        written[fname] = (out / fname).read_bytes()
    params = {k: v for k, v in vars(a).items() if k not in ("fn", "json", "csv", "out")}
    manifest = {
        "command": name,
        "params": params,
        "seed": a.seed,
        "version": __version__,
        "wall_clock_seconds": elapsed,
        "outputs": {k: hashlib.sha256(v).hexdigest() for k, v in sorted(written.items())},
    }
    (out / "manifest.json").write_bytes(dumps(manifest))
    if a.json:
        sys.stdout.write(blob.decode())
    else:
        print(f"{name}: wrote {out / (name + '.json')} ({elapsed:.2f}s)")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
