"""Text reports: the run table, per-step plot series and a per-objective summary.

Everything is plain whitespace-separated ASCII so it can be fed straight to
gnuplot or read back with the parsers in this module.
"""

from __future__ import annotations

import contextlib
import datetime as _dt
import os
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .core import RunConfig, RunResult, RunTrace
from .diagnostics import StepMetrics
from .errors import InvalidArgumentError

Sink = Union[str, os.PathLike, IO[str]]

TIMESTAMP_FORMAT = "%m-%d-%Y, %H:%M:%S"
PLACEHOLDER_FITNESS = -9999.0
DISTRIBUTION_LABELS = {
    "uniform-on-axis": "UNIFORM I-AXIS",
    "uniform-on-diagonal": "UNIFORM DIAGONAL",
    "grid-2d": "2D GRID",
    "random": "RANDOM",
}
HEADER = (
    "Run #",
    "Gamma",
    "Nt",
    "Nd",
    "Np",
    "G",
    "DelT",
    "Alpha",
    "Beta",
    "#Steps",
    "Neval",
    "Frep",
    "Fitness",
    "Initial Probes",
)
WIDTHS = (6, 7, 6, 4, 6, 6, 6, 7, 7, 7, 9, 10, 20)


@contextlib.contextmanager
def _open_sink(sink: Sink):
    if hasattr(sink, "write"):
        yield sink
    else:
        with open(sink, "w", encoding="ascii", newline="\n") as fh:
            yield fh


@dataclass(frozen=True)
class RunTableRow:
    run: int
    gamma: float
    nt: int
    nd: int
    np: int
    g: float
    delt: float
    alpha: float
    beta: float
    steps: int
    neval: int
    frep: float
    fitness: float
    initial_probes: str = "UNIFORM I-AXIS"
    variable_frep: bool = True

    @classmethod
    def from_result(cls, run: int, r: RunResult, cfg: RunConfig) -> "RunTableRow":
        return cls(
            run=run,
            gamma=r.gamma,
            nt=cfg.max_steps,
            nd=r.n_dims,
            np=r.n_probes,
            g=cfg.G,
            delt=cfg.delta_t,
            alpha=cfg.alpha,
            beta=cfg.beta,
            steps=r.last_step,
            neval=r.n_eval,
            frep=r.final_frep,
            fitness=r.best_fitness,
            initial_probes=DISTRIBUTION_LABELS[cfg.initial_distribution],
        )

    def format(self) -> str:
        cells = (
            f"{self.run:d}",
            f"{self.gamma:.3f}",
            f"{self.nt:d}",
            f"{self.nd:d}",
            f"{self.np:d}",
            f"{self.g:.1f}",
            f"{self.delt:.1f}",
            f"{self.alpha:.2f}",
            f"{self.beta:.2f}",
            f"{self.steps:d}",
            f"{self.neval:d}",
            f"{self.frep:.5f}" + ("V" if self.variable_frep else ""),
            f"{self.fitness:.8f}",
        )
        body = "".join(c.rjust(w) + " " for c, w in zip(cells, WIDTHS))
        return body + " " + self.initial_probes

    @classmethod
    def parse(cls, line: str) -> "RunTableRow":
        parts = line.split(maxsplit=13)
        if len(parts) != 14:
            raise InvalidArgumentError(f"not a run-table row: {line!r}")
        frep = parts[11]
        variable = frep.endswith("V")
        return cls(
            run=int(parts[0]),
            gamma=float(parts[1]),
            nt=int(parts[2]),
            nd=int(parts[3]),
            np=int(parts[4]),
            g=float(parts[5]),
            delt=float(parts[6]),
            alpha=float(parts[7]),
            beta=float(parts[8]),
            steps=int(parts[9]),
            neval=int(parts[10]),
            frep=float(frep.rstrip("V")),
            fitness=float(parts[12]),
            initial_probes=parts[13].strip(),
            variable_frep=variable,
        )

    def rounded(self) -> "RunTableRow":
        """This row at printed precision, for round-trip comparisons."""
        return RunTableRow.parse(self.format())


@dataclass(frozen=True)
class RunTable:
    run_id: str
    function: str
    placeholder: RunTableRow
    rows: tuple[RunTableRow, ...]
    total_evaluations: int
    best: RunTableRow


def _header_line() -> str:
    cells = "".join(h.rjust(w) + " " for h, w in zip(HEADER[:-1], WIDTHS))
    return cells + " " + HEADER[-1]


def format_run_table(report, timestamp: Optional[str] = None) -> str:
    """Render a protocol report as a fixed-width run table."""
    if not report.runs:
        raise InvalidArgumentError("cannot write a run table for an empty report")
    if timestamp is None:
        timestamp = _dt.datetime.now().strftime(TIMESTAMP_FORMAT)
    cells = report.config.cells()
    first = cells[0]
    placeholder = RunTableRow(
        run=0,
        gamma=first.gamma,
        nt=first.max_steps,
        nd=report.n_dims,
        np=first.n_probes(report.n_dims),
        g=first.G,
        delt=first.delta_t,
        alpha=first.alpha,
        beta=first.beta,
        steps=0,
        neval=0,
        frep=first.frep_init,
        fitness=PLACEHOLDER_FITNESS,
        initial_probes=DISTRIBUTION_LABELS[first.initial_distribution],
    )
    lines = [
        f"Run ID: {timestamp}",
        f"FUNCTION: {report.objective.upper()}",
        _header_line(),
        placeholder.format(),
    ]
    for i, (r, cfg) in enumerate(zip(report.runs, cells)):
        lines.append(RunTableRow.from_result(report.run_number(i), r, cfg).format())
    lines.append(f"Total Function Evaluations: {report.total_evaluations:d}")
    best_cfg = cells[report.best_index]
    lines.append(RunTableRow.from_result(report.best_run_number, report.rerun, best_cfg).format())
    return "\n".join(lines) + "\n"


def write_run_table(report, sink: Sink, timestamp: Optional[str] = None) -> None:
    text = format_run_table(report, timestamp)
    with _open_sink(sink) as fh:
        fh.write(text)


def parse_run_table(text: str) -> RunTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 6 or not lines[0].startswith("Run ID:") or not lines[1].startswith("FUNCTION:"):
        raise InvalidArgumentError("not a run table")
    run_id = lines[0][len("Run ID:") :].strip()
    function = lines[1][len("FUNCTION:") :].strip()
    placeholder = RunTableRow.parse(lines[3])
    rows = []
    k = 4
    while not lines[k].startswith("Total Function Evaluations:"):
        rows.append(RunTableRow.parse(lines[k]))
        k += 1
    total = int(lines[k].split(":")[1])
    best = RunTableRow.parse(lines[k + 1])
    return RunTable(run_id, function, placeholder, tuple(rows), total, best)


def read_run_table(path: Union[str, os.PathLike]) -> RunTable:
    return parse_run_table(Path(path).read_text(encoding="ascii"))


# ---------------------------------------------------------------------------
# plot series

N_TRAJECTORIES = 10
N_PROBE_FILES = 16


def best_trajectories(trace: RunTrace, k: int = N_TRAJECTORIES) -> np.ndarray:
    """Probe indices of the k best-fitness trajectories, shape ``(k, steps)``.

    Trajectory t takes, at every step, the fittest probe not already used by
    trajectories ``0..t-1`` at that step (the last index wins ties).
    """
    k = min(k, trace.n_probes)
    fit = trace.M.copy()
    out = np.empty((k, fit.shape[1]), dtype=int)
    cols = np.arange(fit.shape[1])
    for t in range(k):
        p = fit.shape[0] - 1 - np.argmax(fit[::-1, :], axis=0)
        out[t] = p
        fit[p, cols] = -np.inf
    return out


def _fmt_rows(rows: Iterable[Sequence]) -> str:
    return "".join(" ".join(_fmt(v) for v in row) + "\n" for row in rows)


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return f"{int(v):d}"
    return f"{float(v) + 0.0:.10f}"


def write_plot_series(
    trace: RunTrace,
    metrics: Sequence[StepMetrics],
    out_dir: Union[str, os.PathLike],
    n_trajectories: int = N_TRAJECTORIES,
    n_probe_files: int = N_PROBE_FILES,
) -> list[Path]:
    """Write the Fitness, Davg, BestProbe, t* and p* files; return their paths.

    Fitness and Davg hold ``step value`` pairs. BestProbe holds the 1-based
    best-so-far probe per step. Trajectory files hold one row of coordinates
    per step: ``t1..`` follow the best-fitness ranking, ``p1..`` follow fixed
    probe numbers.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if len(metrics) != trace.M.shape[1]:
        raise InvalidArgumentError("metrics and trace cover different step ranges")
    files = {
        "Fitness": [(m.step, m.best_fitness_step) for m in metrics],
        "Davg": [(m.step, m.davg) for m in metrics],
        "BestProbe": [(m.step, m.best_probe_so_far + 1) for m in metrics],
    }
    steps = np.arange(trace.M.shape[1])
    for t, probes in enumerate(best_trajectories(trace, n_trajectories), start=1):
        files[f"t{t}"] = [tuple(trace.R[p, :, j]) for p, j in zip(probes, steps)]
    for p in range(min(n_probe_files, trace.n_probes)):
        files[f"p{p + 1}"] = [tuple(trace.R[p, :, j]) for j in steps]
    paths = []
    for name, rows in files.items():
        path = out / name
        path.write_text(_fmt_rows(rows), encoding="ascii")
        paths.append(path)
    return paths


def read_series(path: Union[str, os.PathLike]) -> np.ndarray:
    """Load a plot file as a 2-D float array (one row per step)."""
    return np.loadtxt(path, ndmin=2)


# ---------------------------------------------------------------------------
# suite summary

SUMMARY_COLUMNS = (
    "objective",
    "n_dims",
    "best_fitness",
    "gamma_best",
    "best_ppa",
    "best_n_eval",
    "total_n_eval",
)


@dataclass(frozen=True)
class SummaryRow:
    objective: str
    n_dims: int
    best_fitness: float
    gamma_best: float
    best_ppa: int
    best_n_eval: int
    total_n_eval: int

    @classmethod
    def from_report(cls, report) -> "SummaryRow":
        b = report.best_run
        return cls(
            report.objective,
            report.n_dims,
            b.best_fitness,
            b.gamma,
            b.probes_per_axis,
            b.n_eval,
            report.total_evaluations,
        )

    def format(self) -> str:
        return (
            f"{self.objective} {self.n_dims:d} {self.best_fitness + 0.0:.10f} {self.gamma_best:.3f} "
            f"{self.best_ppa:d} {self.best_n_eval:d} {self.total_n_eval:d}"
        )

    @classmethod
    def parse(cls, line: str) -> "SummaryRow":
        p = line.split()
        if len(p) != len(SUMMARY_COLUMNS):
            raise InvalidArgumentError(f"not a summary row: {line!r}")
        return cls(p[0], int(p[1]), float(p[2]), float(p[3]), int(p[4]), int(p[5]), int(p[6]))


def write_summary(reports: Sequence, sink: Sink) -> None:
    """One line per report, in input order, under a ``#`` header."""
    lines = ["# " + " ".join(SUMMARY_COLUMNS)]
    lines += [SummaryRow.from_report(r).format() for r in reports]
    with _open_sink(sink) as fh:
        fh.write("\n".join(lines) + "\n")


def parse_summary(text: str) -> list[SummaryRow]:
    return [SummaryRow.parse(ln) for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
