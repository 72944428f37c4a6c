"""Command-line front end: ``cfopr {run,protocol,suite,eval}``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .benchmarks import SUITE_NAMES, evaluate, get_objective, make_noise
from .core import INITIAL_ACCELERATIONS, INITIAL_DISTRIBUTIONS, RunConfig, run_single
from .diagnostics import ANCHORS, DEFAULT_ANCHOR, step_metrics
from .errors import (
    EvaluationOverflowError,
    InvalidArgumentError,
    InvalidConfigError,
    InvalidStateError,
)
from .harness import ProtocolConfig, ProtocolReport, default_protocol, run_protocol
from .report_io import write_plot_series, write_run_table, write_summary

log = logging.getLogger("cfopr")

_ERRORS = (
    InvalidArgumentError,
    InvalidConfigError,
    InvalidStateError,
    EvaluationOverflowError,
    OSError,
)


def parse_range(text: str, kind=float) -> tuple:
    """``start:stop:step`` or a single value (start = stop)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            v = kind(parts[0])
            return v, v, kind(1)
        if len(parts) == 3:
            return tuple(kind(p) for p in parts)
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected start:stop:step or a number, got {text!r}")


def _float_range(text):
    return parse_range(text, float)


def _int_range(text):
    return parse_range(text, int)


def _point(text):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point {text!r}") from None


def _add_run_params(p: argparse.ArgumentParser) -> None:
    d = RunConfig()
    g = p.add_argument_group("run parameters")
    g.add_argument("--G", type=float, default=d.G, help="gravitational constant")
    g.add_argument("--dt", type=float, default=d.delta_t, help="time increment")
    g.add_argument("--alpha", type=float, default=d.alpha)
    g.add_argument("--beta", type=float, default=d.beta)
    g.add_argument("--frep-init", type=float, default=d.frep_init)
    g.add_argument("--frep-delta", type=float, default=d.frep_delta)
    g.add_argument("--frep-wrap-tol", type=float, default=d.frep_wrap_tol)
    g.add_argument("--steps", type=int, default=d.max_steps, help="maximum time steps")
    g.add_argument("--shrink", type=int, default=d.shrink_interval, help="shrink interval (0 = off)")
    g.add_argument("--window", type=int, default=d.termination_window)
    g.add_argument("--tol", type=float, default=d.termination_tol)
    g.add_argument("--warmup", type=int, default=d.termination_warmup_extra)
    g.add_argument("--no-early-stop", action="store_true")
    g.add_argument("--init", choices=INITIAL_DISTRIBUTIONS, default=d.initial_distribution)
    g.add_argument("--accel", choices=INITIAL_ACCELERATIONS, default=d.initial_acceleration)
    g.add_argument("--accel-value", type=float, default=d.initial_acceleration_value)
    g.add_argument("--accel-max", type=float, default=d.initial_acceleration_max)
    g.add_argument("--shrink-anchor", choices=("best-so-far", "current"), default=d.shrink_anchor)
    g.add_argument("--seed", type=int, default=d.noise_seed, help="noise seed (f7, random modes)")
    g.add_argument("--dims", type=int, default=None, help="dimension for n-D objectives")


def _add_output(p: argparse.ArgumentParser, plots_default: bool) -> None:
    p.add_argument("--out", type=Path, default=Path("cfopr_out"))
    p.add_argument("--timestamp", default=None, help="fixed Run ID timestamp")
    p.add_argument("--davg-anchor", choices=ANCHORS, default=DEFAULT_ANCHOR)
    if plots_default:
        p.add_argument("--no-plots", dest="plots", action="store_false")
    else:
        p.add_argument("--plots", action="store_true", help="write plot series for the best run")


def _base_config(a) -> RunConfig:
    return RunConfig(
        G=a.G,
        delta_t=a.dt,
        alpha=a.alpha,
        beta=a.beta,
        frep_init=a.frep_init,
        frep_delta=a.frep_delta,
        max_steps=a.steps,
        shrink_interval=a.shrink,
        termination_window=a.window,
        termination_tol=a.tol,
        termination_warmup_extra=a.warmup,
        initial_distribution=a.init,
        initial_acceleration=a.accel,
        initial_acceleration_value=a.accel_value,
        initial_acceleration_max=a.accel_max,
        noise_seed=a.seed,
        frep_wrap_tol=a.frep_wrap_tol,
        shrink_anchor=a.shrink_anchor,
        early_termination=not a.no_early_stop,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfopr", description="Deterministic central force optimization")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress progress output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="one run; writes plot series and a one-row table")
    p.add_argument("--objective", required=True)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--ppa", type=int, default=4, help="probes per axis")
    _add_run_params(p)
    _add_output(p, plots_default=True)

    p = sub.add_parser("protocol", help="the full gamma x probes-per-axis grid")
    p.add_argument("--objective", required=True)
    p.add_argument("--gamma", type=_float_range, default=None, help="start:stop:step")
    p.add_argument("--ppa", type=_int_range, default=None, help="start:stop:step")
    p.add_argument("--parallel", type=int, default=1)
    _add_run_params(p)
    _add_output(p, plots_default=False)

    p = sub.add_parser("suite", help="default protocols over f1-f23")
    p.add_argument("--objectives", default=",".join(SUITE_NAMES), help="comma-separated names")
    p.add_argument("--parallel", type=int, default=1)
    _add_run_params(p)
    _add_output(p, plots_default=False)

    p = sub.add_parser("eval", help="evaluate an objective at a point")
    p.add_argument("--objective", required=True)
    p.add_argument("--point", type=_point, required=True, help="comma-separated coordinates")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _protocol_config(a, name: str) -> ProtocolConfig:
    pcfg = default_protocol(name, _base_config(a))
    if getattr(a, "dims", None) is not None:
        pcfg = replace(pcfg, n_dims=a.dims)
    if getattr(a, "gamma", None) is not None:
        gs, ge, gd = a.gamma
        pcfg = replace(pcfg, gamma_start=gs, gamma_stop=ge, gamma_step=gd)
    if getattr(a, "ppa", None) is not None:
        ps, pe, pd = a.ppa
        pcfg = replace(pcfg, ppa_min=ps, ppa_max=pe, ppa_step=pd)
    objective = pcfg.objective_spec()
    pcfg.gammas()
    pcfg.validate(objective.dimension)
    return pcfg


def _write_best_plots(report: ProtocolReport, a, out_dir: Path) -> None:
    objective = report.config.objective_spec()
    cfg = report.config.cells()[report.best_index]
    _, trace = run_single(objective, cfg)
    write_plot_series(trace, step_metrics(trace, a.davg_anchor), out_dir)


def _progress(name):
    def cb(i, r):
        log.info("%s run %d: steps %d, frep %.5f, best %.8f", name, i, r.last_step, r.final_frep, r.best_fitness)

    return cb


def _cmd_run(a) -> int:
    objective = get_objective(a.objective, a.dims)
    cfg = replace(_base_config(a), gamma=a.gamma, probes_per_axis=a.ppa)
    cfg.validate(objective.dimension)

    def cb(j, frep, best):
        if j % 50 == 0:
            log.info("step %d, frep %.5f, best %.8f", j, frep, best)

    result, trace = run_single(objective, cfg, callback=cb)
    pcfg = ProtocolConfig(
        objective.name,
        gamma_start=cfg.gamma,
        gamma_stop=cfg.gamma,
        ppa_min=cfg.probes_per_axis,
        ppa_max=cfg.probes_per_axis,
        n_dims=objective.dimension,
        base=cfg,
    )
    report = ProtocolReport(objective.name, objective.dimension, pcfg, (result,), result.n_eval, 0, result)
    a.out.mkdir(parents=True, exist_ok=True)
    write_run_table(report, a.out / f"{objective.name}_run.txt", a.timestamp)
    if a.plots:
        write_plot_series(trace, step_metrics(trace, a.davg_anchor), a.out)
    print(f"{objective.name} best fitness {result.best_fitness:.8f} at step {result.best_step}")
    return 0


def _cmd_protocol(a) -> int:
    pcfg = _protocol_config(a, a.objective)
    report = run_protocol(pcfg, workers=a.parallel, progress=_progress(pcfg.objective))
    a.out.mkdir(parents=True, exist_ok=True)
    write_run_table(report, a.out / f"{report.objective}_table.txt", a.timestamp)
    write_summary([report], a.out / "summary.txt")
    if a.plots:
        _write_best_plots(report, a, a.out / f"{report.objective}_plots")
    b = report.best_run
    print(f"{report.objective} best fitness {b.best_fitness:.8f} (run {report.best_run_number})")
    return 0


def _cmd_suite(a) -> int:
    names = [n.strip() for n in a.objectives.split(",") if n.strip()]
    configs = [_protocol_config(a, n) for n in names]  # validate everything first
    a.out.mkdir(parents=True, exist_ok=True)
    reports = []
    for pcfg in configs:
        log.info("protocol %s: %d runs", pcfg.objective, len(pcfg.cells()))
        report = run_protocol(pcfg, workers=a.parallel, progress=_progress(pcfg.objective))
        write_run_table(report, a.out / f"{report.objective}_table.txt", a.timestamp)
        if a.plots:
            _write_best_plots(report, a, a.out / f"{report.objective}_plots")
        reports.append(report)
    write_summary(reports, a.out / "summary.txt")
    for r in reports:
        print(f"{r.objective} {r.best_run.best_fitness:.8f}")
    return 0


def _cmd_eval(a) -> int:
    objective = get_objective(a.objective, len(a.point) if a.point else None)
    noise = make_noise(a.seed) if objective.stochastic else None
    print(f"{evaluate(objective, a.point, noise):.17g}")
    return 0


_COMMANDS = {"run": _cmd_run, "protocol": _cmd_protocol, "suite": _cmd_suite, "eval": _cmd_eval}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if a.quiet else logging.INFO,
        format="%(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return _COMMANDS[a.command](a)
    except _ERRORS as exc:
        print(f"cfopr: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
