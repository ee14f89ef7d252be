"""Command-line front end: run experiments, emit CSV/JSON with a run manifest.

Output contracts (consumed by the plotting scripts and stable across runs):

* histogram / prob-all-real rows: n,K,k,count,p_hat,stderr
* expected-sweep rows:            n,K,E,stderr
  with --fit-gamma, a second table follows after one blank line:
                                  n,gamma,intercept,rms_residual,K_min,K_max,points_used
* eigencloud rows:                trial,re,im
* analytic rows:                  name,params,value,err_est
* cooptimal rows:                 mode,theta,trials,f_hat,stderr

Floats are printed with 17 significant digits and '\\n' line endings, so a
rerun with the same manifest reproduces the data file byte for byte.  The
JSON format mirrors the CSV rows and embeds the deterministic part of the
manifest; wall-clock duration and the thread count live only in the sidecar
``<out>.manifest.json`` (or on stderr when writing to stdout), keeping the
data bytes independent of --threads.

Exit codes: 0 success, 2 usage error, 3 numerical failure (quadrature
tolerance not reached, series not converged, or solver-failure tally above
1e-4 of trials).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, analytic, entanglement, montecarlo

_FAILURE_TALLY_LIMIT = 1e-4

USAGE_EXIT = 2
NUMERICAL_EXIT = 3


class NumericalFailure(RuntimeError):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _parse_int_list(text: str) -> list[int]:
    """Comma lists and inclusive ranges: '1,2,5' or '1-8' or '1-4,10'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    if not out:
        raise argparse.ArgumentTypeError("empty integer list")
    return out


def _normalize_mode(text: str):
    try:
        return {"auto": None, "on": True, "off": False}[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"expected auto, on or off, got {text!r}") from None


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise argparse.ArgumentTypeError(f"{name} must be >= 1, got {value}")
    return value


class _Emitter:
    """Collects header + rows, then writes CSV or JSON deterministically."""

    def __init__(self, columns: list[str]):
        self.columns = columns
        self.rows: list[list] = []
        self.extra_tables: list[tuple[list[str], list[list]]] = []

    def add(self, *row):
        if len(row) != len(self.columns):
            raise ValueError("row width does not match header")
        self.rows.append(list(row))

    def add_table(self, columns: list[str], rows: list[list]):
        self.extra_tables.append((columns, rows))

    def csv(self) -> str:
        lines = [",".join(self.columns)]
        lines += [",".join(_fmt(v) for v in row) for row in self.rows]
        for cols, rows in self.extra_tables:
            lines.append("")
            lines.append(",".join(cols))
            lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"

    def json(self, manifest: dict) -> str:
        doc = {
            "manifest": manifest,
            "rows": [dict(zip(self.columns, row)) for row in self.rows],
        }
        for cols, rows in self.extra_tables:
            doc["gamma_fits"] = [dict(zip(cols, row)) for row in rows]
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _write_output(emitter: _Emitter, args, manifest_core: dict, duration: float):
    payload = (emitter.csv() if args.format == "csv"
               else emitter.json(manifest_core))
    sidecar = dict(manifest_core, threads=args.threads, duration_s=duration)
    if args.out == "-":
        sys.stdout.write(payload)
        sys.stderr.write("manifest: " + json.dumps(sidecar, sort_keys=True) + "\n")
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(payload)
        with open(args.out + ".manifest.json", "w") as fh:
            json.dump(sidecar, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _manifest(subcommand: str, args, config: dict, failures: int) -> dict:
    return {
        "subcommand": subcommand,
        "config": config,
        "master_seed": args.seed,
        "version": __version__,
        "failures": failures,
    }


def _check_tally(failures: int, total_trials: int):
    if failures > _FAILURE_TALLY_LIMIT * total_trials:
        raise NumericalFailure(
            f"solver-failure tally {failures} exceeds {_FAILURE_TALLY_LIMIT:%} of {total_trials} trials")


def _cmd_prob_all_real(args) -> int:
    emitter = _Emitter(["n", "K", "k", "count", "p_hat", "stderr"])
    failures = 0
    cell = 0
    for n in args.n:
        for k_products in args.k_products:
            cfg = montecarlo.ExperimentConfig(n, k_products, args.trials, args.seed,
                                              args.normalize_factors)
            hist = montecarlo.run_histogram(cfg, workers=args.threads,
                                            stream_offset=cell * args.trials)
            failures += hist.failures
            emitter.add(n, k_products, n, hist.counts[n], hist.p_hat[n], hist.stderr[n])
            cell += 1
    config = {"n": args.n, "K": args.k_products, "trials": args.trials,
              "normalize_factors": args.normalize_factors}
    _finish(args, "prob-all-real", emitter, config, failures)
    _check_tally(failures, args.trials * cell)
    return 0


def _cmd_histogram(args) -> int:
    emitter = _Emitter(["n", "K", "k", "count", "p_hat", "stderr"])
    failures = 0
    for i, k_products in enumerate(args.k_products):
        cfg = montecarlo.ExperimentConfig(args.n, k_products, args.trials, args.seed,
                                          args.normalize_factors)
        hist = montecarlo.run_histogram(cfg, workers=args.threads,
                                        stream_offset=i * args.trials)
        failures += hist.failures
        for k in cfg.valid_counts():
            emitter.add(args.n, k_products, k, hist.counts[k], hist.p_hat[k], hist.stderr[k])
    config = {"n": args.n, "K": args.k_products, "trials": args.trials,
              "normalize_factors": args.normalize_factors}
    _finish(args, "histogram", emitter, config, failures)
    _check_tally(failures, args.trials * len(args.k_products))
    return 0


def _cmd_expected_sweep(args) -> int:
    emitter = _Emitter(["n", "K", "E", "stderr"])
    fit_rows = []
    failures = 0
    for i, n in enumerate(args.n_list):
        # disjoint stream ranges per (n, K) cell, laid out per n-row
        base = i * len(args.k_list) * args.trials
        es, ses = [], []
        for j, k_products in enumerate(args.k_list):
            cfg = montecarlo.ExperimentConfig(n, k_products, args.trials, args.seed,
                                              args.normalize_factors)
            hist = montecarlo.run_histogram(cfg, workers=args.threads,
                                            stream_offset=base + j * args.trials)
            failures += hist.failures
            e, se = montecarlo.expected_real(hist)
            es.append(e)
            ses.append(se)
            emitter.add(n, k_products, e, se)
        if args.fit_gamma:
            curve = montecarlo.ExpectedRealCurve(n, list(args.k_list), es, ses,
                                                 args.trials, args.seed)
            fit = montecarlo.fit_gamma(curve)
            fit_rows.append([fit.n, fit.gamma, fit.intercept, fit.rms_residual,
                             fit.K_range[0], fit.K_range[1], fit.points_used])
    if fit_rows:
        emitter.add_table(["n", "gamma", "intercept", "rms_residual",
                           "K_min", "K_max", "points_used"], fit_rows)
    config = {"n": args.n_list, "K": args.k_list, "trials": args.trials,
              "normalize_factors": args.normalize_factors, "fit_gamma": args.fit_gamma}
    _finish(args, "expected-sweep", emitter, config, failures)
    _check_tally(failures, args.trials * len(args.n_list) * len(args.k_list))
    return 0


def _cmd_eigencloud(args) -> int:
    cfg = montecarlo.ExperimentConfig(args.n, args.k_products, args.trials, args.seed,
                                      args.normalize_factors)
    cloud = montecarlo.eigencloud(cfg, workers=args.threads)
    emitter = _Emitter(["trial", "re", "im"])
    for trial, re, im in cloud.points():
        emitter.add(int(trial), float(re), float(im))
    config = {"n": args.n, "K": args.k_products, "trials": args.trials,
              "normalize_factors": args.normalize_factors}
    _finish(args, "eigencloud", emitter, config, cloud.failures)
    _check_tally(cloud.failures, args.trials)
    return 0


def _cmd_analytic(args) -> int:
    spec = analytic.QuadratureSpec()
    emitter = _Emitter(["name", "params", "value", "err_est"])
    name = args.name
    try:
        if name == "p-theta":
            if args.theta is None:
                raise ValueError("analytic p-theta requires --theta")
            value = analytic.p_theta_quadrature(args.theta, spec)
            emitter.add(name, f"theta={_fmt(args.theta)}", value, spec.abs_tol)
        elif name == "p2-22":
            emitter.add(name, "", analytic.p2_22_integral(spec), spec.abs_tol)
        elif name == "mean-f":
            emitter.add(name, "", analytic.mean_f(spec), 1e-6)
        elif name == "p-nn":
            if args.n is None:
                raise ValueError("analytic p-nn requires --n")
            emitter.add(name, f"n={args.n}", analytic.p_nn_single(args.n), 0.0)
        elif name == "dp-dbeta":
            if args.beta is None:
                raise ValueError("analytic dp-dbeta requires --beta")
            emitter.add(name, f"beta={_fmt(args.beta)}", analytic.dp_dbeta(args.beta, spec),
                        spec.abs_tol)
        else:  # pfq (argparse restricts the choices)
            if args.top is None or args.bottom is None:
                raise ValueError("analytic pfq requires --top and --bottom")
            top = [float(v) for v in args.top.split(",")]
            bottom = [float(v) for v in args.bottom.split(",")]
            res = analytic.hypergeom_pFq(top, bottom, args.z, tol=args.tol,
                                         max_terms=args.max_terms)
            if not res.converged:
                raise NumericalFailure(
                    f"series not converged after {res.terms_used} terms "
                    f"(err_est={res.err_est:.3e})")
            # no commas inside a CSV field: join parameters with spaces
            params = (f"top={args.top.replace(',', ' ')};"
                      f"bottom={args.bottom.replace(',', ' ')};z={_fmt(args.z)}")
            emitter.add(name, params, res.value, res.err_est)
    except analytic.QuadratureError as exc:
        raise NumericalFailure(str(exc)) from None
    config = {"name": name, "theta": args.theta, "n": args.n, "beta": args.beta,
              "top": args.top, "bottom": args.bottom, "z": args.z}
    _finish(args, "analytic", emitter, config, 0)
    return 0


def _cmd_cooptimal(args) -> int:
    emitter = _Emitter(["mode", "theta", "trials", "f_hat", "stderr"])
    if args.mode == "theta":
        if args.theta is None:
            raise ValueError("cooptimal theta mode requires --theta")
        f, se = entanglement.fraction_cooptimal_theta(args.theta, args.trials, args.seed)
        emitter.add("theta", args.theta, args.trials, f, se)
    else:
        f, se = entanglement.fraction_cooptimal_pairs(args.trials, args.seed)
        emitter.add("pairs", "", args.trials, f, se)
    config = {"mode": args.mode, "theta": args.theta, "trials": args.trials}
    _finish(args, "cooptimal", emitter, config, 0)
    return 0


def _finish(args, subcommand: str, emitter: _Emitter, config: dict, failures: int):
    manifest = _manifest(subcommand, args, config, failures)
    _write_output(emitter, args, manifest, time.monotonic() - args._t0)


def _add_common(parser: argparse.ArgumentParser, mc: bool):
    parser.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker processes (default: all cores); never affects emitted data")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", default="-", help="output path, or - for stdout")
    if mc:
        parser.add_argument("--normalize-factors", type=_normalize_mode, default=None,
                            choices=(None, True, False), metavar="{auto,on,off}",
                            help="divide each factor by its Frobenius norm (auto: on for K > 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginprod",
        description="Real-eigenvalue statistics of products of real Ginibre matrices")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("prob-all-real",
                       help="P(all eigenvalues of a K-fold product are real)")
    p.add_argument("--n", type=_parse_int_list, required=True,
                   help="matrix dimension(s), e.g. 2 or 2,3,4")
    p.add_argument("--k-products", type=_parse_int_list, required=True,
                   help="number of factors, e.g. 2 or 1-10")
    p.add_argument("--trials", type=int, required=True)
    _add_common(p, mc=True)
    p.set_defaults(func=_cmd_prob_all_real)

    p = sub.add_parser("histogram", help="full real-count histogram per K")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-products", type=_parse_int_list, required=True)
    p.add_argument("--trials", type=int, required=True)
    _add_common(p, mc=True)
    p.set_defaults(func=_cmd_histogram)

    p = sub.add_parser("expected-sweep",
                       help="expected number of real eigenvalues over (n, K) grids")
    p.add_argument("--n-list", type=_parse_int_list, required=True)
    p.add_argument("--k-list", type=_parse_int_list, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--fit-gamma", action="store_true",
                   help="append exponential-rate fits of n - E per n")
    _add_common(p, mc=True)
    p.set_defaults(func=_cmd_expected_sweep)

    p = sub.add_parser("eigencloud",
                       help="Frobenius-normalized eigenvalues of sampled products")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-products", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    _add_common(p, mc=True)
    p.set_defaults(func=_cmd_eigencloud)

    p = sub.add_parser("analytic", help="closed-form and quadrature reference values")
    p.add_argument("name", choices=("p-theta", "p2-22", "mean-f", "p-nn", "dp-dbeta", "pfq"))
    p.add_argument("--theta", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--top", help="comma-separated top parameters for pfq")
    p.add_argument("--bottom", help="comma-separated bottom parameters for pfq")
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-terms", type=int, default=500)
    _add_common(p, mc=False)
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("cooptimal", help="Monte Carlo co-optimal state fractions")
    p.add_argument("mode", choices=("theta", "pairs"))
    p.add_argument("--theta", type=float)
    p.add_argument("--trials", type=int, required=True)
    _add_common(p, mc=False)
    p.set_defaults(func=_cmd_cooptimal)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    args._t0 = time.monotonic()
    try:
        return args.func(args)
    except NumericalFailure as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return NUMERICAL_EXIT
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
