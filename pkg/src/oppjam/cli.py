"""Command-line front end.

Subcommands: analyze (closed-form operating point at a fixed threshold),
optimize (threshold search), simulate (Monte Carlo cross-check), sweep
(one-parameter study), compare (threshold scheme vs density-matched random
activation). Configuration comes from an optional flat key=value file
overridden by command-line flags; results are written as CSV with values
rendered at 12 significant digits so identical runs produce identical
bytes. Exit codes: 0 ok, 2 configuration error, 3 numerical failure or
failed --check, 4 I/O error.
"""

import argparse
import math
import sys
from dataclasses import dataclass, fields
from typing import Optional

from .analytic import (
    connection_outage,
    random_baseline_throughput,
    secrecy_outage,
    selected_intensity,
    selection_probability,
    throughput,
)
from .errors import ConfigError, NumericalError
from .model import SystemParams
from .montecarlo import SimConfig, estimate_outages
from .optimize import optimize_delta

# search interval used by the optimizing commands; the lower end sits well
# below the op-level default because noise-limited scenarios can push the
# optimum threshold under 1e-4
_CLI_SEARCH = (1e-6, 20.0)
_SWEEP_VARS = ("delta", "lambda_j", "lambda_e", "p_j_dbm")

_KEY_TYPES = {
    "p_s_dbm": float,
    "p_j_dbm": float,
    "n0_dbm": float,
    "d_m": float,
    "alpha": float,
    "lambda_j": float,
    "lambda_e": float,
    "sigma": float,
    "epsilon": float,
    "delta": float,
    "sim_radius_m": float,
    "sim_trials": int,
    "sim_seed": int,
    "sweep_var": str,
    "sweep_start": float,
    "sweep_stop": float,
    "sweep_count": int,
    "sweep_scale": str,
    "out_path": str,
}

_DEFAULTS = {
    "p_s_dbm": 20.0,
    "p_j_dbm": 30.0,
    "n0_dbm": -90.0,
    "d_m": 1.0,
    "alpha": 3.0,
    "lambda_j": 0.1,
    "lambda_e": 0.01,
    "sigma": 0.1,
    "epsilon": 0.01,
    "delta": None,
    "sim_radius_m": 50.0,
    "sim_trials": 2000,
    "sim_seed": 1,
    "sweep_var": None,
    "sweep_start": None,
    "sweep_stop": None,
    "sweep_count": None,
    "sweep_scale": "linear",
    "out_path": None,
}


@dataclass(frozen=True)
class RunConfig:
    """Merged configuration of one CLI invocation."""

    p_s_dbm: float
    p_j_dbm: float
    n0_dbm: float
    d_m: float
    alpha: float
    lambda_j: float
    lambda_e: float
    sigma: float
    epsilon: float
    delta: Optional[float]
    sim_radius_m: float
    sim_trials: int
    sim_seed: int
    sim_eve_radius_m: Optional[float]
    sweep_var: Optional[str]
    sweep_start: Optional[float]
    sweep_stop: Optional[float]
    sweep_count: Optional[int]
    sweep_scale: str
    out_path: Optional[str]
    check: bool
    jobs: int

    def params(self) -> SystemParams:
        return SystemParams.from_dbm(
            self.p_s_dbm,
            self.p_j_dbm,
            self.n0_dbm,
            d=self.d_m,
            alpha=self.alpha,
            lambda_j=self.lambda_j,
            lambda_e=self.lambda_e,
            sigma=self.sigma,
            epsilon=self.epsilon,
        )

    def sim_config(self) -> SimConfig:
        return SimConfig(
            radius=self.sim_radius_m,
            trials=self.sim_trials,
            seed=self.sim_seed,
            eve_radius=self.sim_eve_radius_m,
        )


def parse_config_file(path: str) -> dict:
    """Read a flat key=value file; '#' starts a comment, unknown keys fail."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _KEY_TYPES:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            caster = _KEY_TYPES[key]
            try:
                out[key] = caster(value)
            except ValueError as exc:
                raise ConfigError(
                    f"{path}:{lineno}: cannot parse {value!r} as {caster.__name__} for {key!r}"
                ) from exc
    return out


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key=value config file")
    common.add_argument("--p-s-dbm", dest="p_s_dbm", type=float)
    common.add_argument("--p-j-dbm", dest="p_j_dbm", type=float)
    common.add_argument("--n0-dbm", dest="n0_dbm", type=float)
    common.add_argument("--d-m", dest="d_m", type=float)
    common.add_argument("--alpha", type=float)
    common.add_argument("--lambda-j", dest="lambda_j", type=float)
    common.add_argument("--lambda-e", dest="lambda_e", type=float)
    common.add_argument("--sigma", type=float)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--delta", type=float, help="activation threshold")
    common.add_argument("--sim-radius-m", dest="sim_radius_m", type=float)
    common.add_argument("--sim-eve-radius-m", dest="sim_eve_radius_m", type=float,
                        help="separate eavesdropper window (defaults to the jammer window)")
    common.add_argument("--sim-trials", "--trials", dest="sim_trials", type=int)
    common.add_argument("--sim-seed", "--seed", dest="sim_seed", type=int)
    common.add_argument("--sweep-var", dest="sweep_var", choices=_SWEEP_VARS)
    common.add_argument("--sweep-start", dest="sweep_start", type=float)
    common.add_argument("--sweep-stop", dest="sweep_stop", type=float)
    common.add_argument("--sweep-count", dest="sweep_count", type=int)
    common.add_argument("--sweep-scale", dest="sweep_scale", choices=("linear", "log"))
    common.add_argument("--out-path", "--out", dest="out_path")
    common.add_argument("--check", action="store_true",
                        help="verify invariants / trend assertions, exit 3 on failure")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for simulate")

    parser = argparse.ArgumentParser(prog="oppjam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common],
                   help="closed-form operating point at a fixed threshold")
    sub.add_parser("optimize", parents=[common], help="maximize throughput over the threshold")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo outage cross-check")
    sub.add_parser("sweep", parents=[common], help="one-parameter study")
    sub.add_parser("compare", parents=[common], help="threshold scheme vs random activation")
    return parser


def _merge_config(args: argparse.Namespace) -> RunConfig:
    merged = dict(_DEFAULTS)
    merged["sim_eve_radius_m"] = None
    if args.config is not None:
        merged.update(parse_config_file(args.config))
    for f in fields(RunConfig):
        if f.name in ("check", "jobs"):
            continue
        v = getattr(args, f.name, None)
        if v is not None:
            merged[f.name] = v
    if merged["sweep_var"] is not None and merged["sweep_var"] not in _SWEEP_VARS:
        raise ConfigError(f"sweep_var must be one of {_SWEEP_VARS}, got {merged['sweep_var']!r}")
    if merged["sweep_scale"] not in ("linear", "log"):
        raise ConfigError(f"sweep_scale must be 'linear' or 'log', got {merged['sweep_scale']!r}")
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    return RunConfig(check=args.check, jobs=args.jobs, **merged)


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        raise NumericalError("refusing to emit NaN")
    return f"{v:.12g}"


def _emit(columns, rows, cfg: RunConfig, summary: str) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in columns))
    text = "\n".join(lines) + "\n"
    if cfg.out_path is None:
        sys.stdout.write(text)
    else:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    dest = cfg.out_path if cfg.out_path is not None else "stdout"
    print(f"{summary} -> {dest}", file=sys.stderr)


def _analyze_row(params: SystemParams, delta: float) -> dict:
    dp = throughput(params, delta)
    # closed forms and thresholds must agree to round-off before anything
    # is emitted; a violation indicates a broken solver, not bad input
    p_co = connection_outage(params, delta, dp.beta_b)
    p_so = secrecy_outage(params, delta, dp.beta_e)
    if abs(p_co - params.sigma) > 1e-9 or abs(p_so - params.epsilon) > 1e-9:
        raise NumericalError(
            f"fixed-point check failed at delta={delta}: p_co={p_co}, p_so={p_so}"
        )
    for name, v in (("beta_b", dp.beta_b), ("beta_e", dp.beta_e), ("mu", dp.mu)):
        if not math.isfinite(v):
            raise NumericalError(f"non-finite {name} at delta={delta}")
    return {
        "delta": delta,
        "prob_select": selection_probability(delta),
        "lambda_j_sel": selected_intensity(delta, params.lambda_j),
        "beta_b": dp.beta_b,
        "beta_e": dp.beta_e,
        "r_t": dp.r_t,
        "r_e": dp.r_e,
        "mu": dp.mu,
    }


_ANALYZE_COLS = ["delta", "prob_select", "lambda_j_sel", "beta_b", "beta_e", "r_t", "r_e", "mu"]


def cmd_analyze(cfg: RunConfig) -> None:
    if cfg.delta is None:
        raise ConfigError("analyze requires delta (set --delta or the config key)")
    row = _analyze_row(cfg.params(), cfg.delta)
    _emit(_ANALYZE_COLS, [row], cfg, f"analyze: delta={_fmt(cfg.delta)} mu={_fmt(row['mu'])}")


def cmd_optimize(cfg: RunConfig) -> None:
    params = cfg.params()
    lo, hi = _CLI_SEARCH
    res = optimize_delta(params, search_lo=lo, search_hi=hi)
    if cfg.check:
        _check_grid_dominance(params, res.design.mu, lo, hi)
    row = {
        "delta_star": res.delta_star,
        "mu": res.design.mu,
        "method": res.method,
        "iterations": res.iterations,
    }
    _emit(
        ["delta_star", "mu", "method", "iterations"],
        [row],
        cfg,
        f"optimize: delta_star={_fmt(res.delta_star)} mu={_fmt(res.design.mu)} ({res.method})",
    )


def _check_grid_dominance(params: SystemParams, mu_star: float, lo: float, hi: float) -> None:
    n = 500
    worst = 0.0
    for i in range(n):
        x = lo * (hi / lo) ** (i / (n - 1))
        worst = max(worst, throughput(params, x).mu - mu_star)
    if worst > 1e-9:
        raise NumericalError(f"grid point beats reported optimum by {worst:.3e}")


def cmd_simulate(cfg: RunConfig) -> None:
    if cfg.delta is None:
        raise ConfigError("simulate requires delta (set --delta or the config key)")
    params = cfg.params()
    dp = throughput(params, cfg.delta)
    sim = cfg.sim_config()
    est_co, est_so = estimate_outages(
        params, cfg.delta, dp.beta_b, dp.beta_e, sim, jobs=cfg.jobs
    )
    p_co_an = connection_outage(params, cfg.delta, dp.beta_b)
    p_so_an = secrecy_outage(params, cfg.delta, dp.beta_e)

    def z(est, ref: float) -> float:
        if est.std_err == 0.0:
            return 0.0 if est.p_hat == ref else math.inf
        return (est.p_hat - ref) / est.std_err

    z_co = z(est_co, p_co_an)
    z_so = z(est_so, p_so_an)
    row = {
        "delta": cfg.delta,
        "beta_b": dp.beta_b,
        "beta_e": dp.beta_e,
        "trials": sim.trials,
        "seed": sim.seed,
        "radius_j": sim.radius,
        "radius_e": sim.eve_radius if sim.eve_radius is not None else sim.radius,
        "p_co_hat": est_co.p_hat,
        "p_co_se": est_co.std_err,
        "p_so_hat": est_so.p_hat,
        "p_so_se": est_so.std_err,
        "p_co_analytic": p_co_an,
        "p_so_analytic": p_so_an,
        "z_co": z_co,
        "z_so": z_so,
    }
    cols = list(row.keys())
    _emit(
        cols,
        [row],
        cfg,
        f"simulate: p_co_hat={_fmt(est_co.p_hat)} (z={_fmt(z_co)}) "
        f"p_so_hat={_fmt(est_so.p_hat)} (z={_fmt(z_so)})",
    )
    if cfg.check and (abs(z_co) > 4.0 or abs(z_so) > 4.0):
        raise NumericalError(
            f"simulation disagrees with closed forms: z_co={z_co:.2f}, z_so={z_so:.2f} "
            "(remember window truncation biases wide-tail interference; see README)"
        )


def _sweep_grid(cfg: RunConfig) -> list[float]:
    if cfg.sweep_var is None:
        raise ConfigError("sweep_var is required (one of %s)" % ", ".join(_SWEEP_VARS))
    if cfg.sweep_start is None or cfg.sweep_stop is None or cfg.sweep_count is None:
        raise ConfigError("sweep_start, sweep_stop, sweep_count are all required")
    n = cfg.sweep_count
    if n < 2:
        raise ConfigError("sweep_count must be >= 2")
    lo, hi = cfg.sweep_start, cfg.sweep_stop
    if cfg.sweep_scale == "log":
        if not (lo > 0.0 and hi > 0.0):
            raise ConfigError("log sweeps need positive sweep_start and sweep_stop")
        return [lo * (hi / lo) ** (i / (n - 1)) for i in range(n)]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _point_config(cfg: RunConfig, value: float) -> tuple[SystemParams, Optional[float]]:
    """Params and fixed delta (if any) with sweep_var pinned to value."""
    over = {cfg.sweep_var: value} if cfg.sweep_var != "delta" else {}
    kw = {
        "p_s_dbm": cfg.p_s_dbm,
        "p_j_dbm": cfg.p_j_dbm,
        "n0_dbm": cfg.n0_dbm,
        "d": cfg.d_m,
        "alpha": cfg.alpha,
        "lambda_j": cfg.lambda_j,
        "lambda_e": cfg.lambda_e,
        "sigma": cfg.sigma,
        "epsilon": cfg.epsilon,
    }
    kw.update(over)
    params = SystemParams.from_dbm(kw.pop("p_s_dbm"), kw.pop("p_j_dbm"), kw.pop("n0_dbm"), **kw)
    delta = value if cfg.sweep_var == "delta" else cfg.delta
    return params, delta


def cmd_sweep(cfg: RunConfig) -> None:
    grid = _sweep_grid(cfg)
    rows = []
    for value in grid:
        params, delta = _point_config(cfg, value)
        if delta is None:
            res = optimize_delta(params, search_lo=_CLI_SEARCH[0], search_hi=_CLI_SEARCH[1])
            delta = res.delta_star
        row = {"sweep_var": cfg.sweep_var, "sweep_value": value}
        row.update(_analyze_row(params, delta))
        rows.append(row)
    if cfg.check:
        _check_sweep_trend(cfg.sweep_var, [r["mu"] for r in rows])
    _emit(
        ["sweep_var", "sweep_value"] + _ANALYZE_COLS,
        rows,
        cfg,
        f"sweep: {cfg.sweep_var} over [{_fmt(grid[0])}, {_fmt(grid[-1])}], {len(grid)} points",
    )


def _check_sweep_trend(var: str, mus: list[float]) -> None:
    tol = 1e-12
    diffs = [b - a for a, b in zip(mus, mus[1:])]
    if var == "lambda_j":
        if any(d < -tol for d in diffs):
            raise NumericalError("throughput decreased along a jammer-density sweep")
        if any(d2 - d1 > 1e-9 for d1, d2 in zip(diffs, diffs[1:])):
            raise NumericalError("jammer-density returns are not diminishing")
    elif var == "lambda_e":
        if any(d > tol for d in diffs):
            raise NumericalError("throughput increased along an eavesdropper-density sweep")
    elif var == "delta":
        signs = [1 if d > tol else (-1 if d < -tol else 0) for d in diffs]
        signs = [s for s in signs if s != 0]
        drops = sum(1 for a, b in zip(signs, signs[1:]) if a > b)
        rises = sum(1 for a, b in zip(signs, signs[1:]) if a < b)
        if drops > 1 or rises > 0:
            raise NumericalError("throughput is not quasi-concave along the threshold sweep")
    # p_j_dbm carries no monotone guarantee; emission-time fixed-point
    # checks still apply


def cmd_compare(cfg: RunConfig) -> None:
    grid = _sweep_grid(cfg)
    rows = []
    for value in grid:
        params, _ = _point_config(cfg, value)
        res = optimize_delta(params, search_lo=_CLI_SEARCH[0], search_hi=_CLI_SEARCH[1])
        retention = selection_probability(res.delta_star)
        base = random_baseline_throughput(params, retention)
        rows.append(
            {
                "sweep_var": cfg.sweep_var,
                "sweep_value": value,
                "delta_star": res.delta_star,
                "mu_proposed": res.design.mu,
                "retention": retention,
                "mu_baseline": base.mu,
            }
        )
    if cfg.check:
        for r in rows:
            if r["mu_proposed"] < r["mu_baseline"] - 1e-12:
                raise NumericalError(
                    f"baseline beats threshold selection at {cfg.sweep_var}={r['sweep_value']}"
                )
    _emit(
        ["sweep_var", "sweep_value", "delta_star", "mu_proposed", "retention", "mu_baseline"],
        rows,
        cfg,
        f"compare: {cfg.sweep_var} over [{_fmt(grid[0])}, {_fmt(grid[-1])}], {len(grid)} points",
    )


_COMMANDS = {
    "analyze": cmd_analyze,
    "optimize": cmd_optimize,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        _COMMANDS[args.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
