"""The (probes-per-axis x gamma) run grid, best-run selection and re-run."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .benchmarks import SUITE_NAMES, ObjectiveSpec, canonical_name, get_objective
from .core import DecisionSpace, RunConfig, RunResult, run_single
from .errors import InvalidConfigError, InvalidStateError

GRID_TOL = 1e-9
N_D_SUITE = tuple(f"f{k}" for k in range(1, 14))


def grid_values(start: float, stop: float, step: float, decimals: int = 12) -> list[float]:
    """Inclusive float range ``start, start + step, ...`` up to ``stop`` (within 1e-9)."""
    if step <= 0:
        raise InvalidConfigError("grid step must be positive")
    if stop < start:
        raise InvalidConfigError("grid stop is below start")
    n = math.floor((stop - start) / step + GRID_TOL) + 1
    return [round(start + k * step, decimals) for k in range(n)]


@dataclass(frozen=True)
class ProtocolConfig:
    objective: str
    gamma_start: float = 0.0
    gamma_stop: float = 1.0
    gamma_step: float = 0.1
    ppa_min: int = 4
    ppa_max: int = 14
    ppa_step: int = 2
    n_dims: Optional[int] = None
    base: RunConfig = field(default_factory=RunConfig)

    def gammas(self) -> list[float]:
        values = grid_values(self.gamma_start, self.gamma_stop, self.gamma_step)
        if values[0] < 0 or values[-1] > 1:
            raise InvalidConfigError("gamma values must lie in [0, 1]")
        return values

    def ppas(self) -> list[int]:
        if self.ppa_step <= 0:
            raise InvalidConfigError("ppa_step must be positive")
        if self.ppa_max < self.ppa_min:
            raise InvalidConfigError("ppa_max is below ppa_min")
        return list(range(self.ppa_min, self.ppa_max + 1, self.ppa_step))

    def objective_spec(self) -> ObjectiveSpec:
        return get_objective(self.objective, self.n_dims)

    def cells(self) -> list[RunConfig]:
        """Run configs in execution order: ppa outer, gamma inner."""
        return [
            replace(self.base, probes_per_axis=ppa, gamma=g)
            for ppa in self.ppas()
            for g in self.gammas()
        ]

    def validate(self, n_dims: int) -> None:
        for cfg in self.cells():
            cfg.validate(n_dims)


@dataclass(frozen=True)
class ProtocolReport:
    objective: str
    n_dims: int
    config: ProtocolConfig
    runs: tuple[RunResult, ...]
    total_evaluations: int
    best_index: int  # 0-based position in ``runs``
    rerun: RunResult

    @property
    def best_run(self) -> RunResult:
        return self.runs[self.best_index]

    @property
    def best_run_number(self) -> int:
        return self.best_index + 1

    def run_number(self, i: int) -> int:
        """Absolute 1-based run number of ``runs[i]``."""
        return i + 1


def _run_cell(args):
    objective, cfg = args
    result, _ = run_single(objective, cfg)
    return result


def select_best(runs) -> int:
    """Index of the highest fitness; the earliest run wins ties."""
    best = 0
    for i, r in enumerate(runs):
        if r.best_fitness > runs[best].best_fitness:
            best = i
    return best


def run_protocol(
    pcfg: ProtocolConfig,
    objective: Optional[ObjectiveSpec] = None,
    workers: int = 1,
    progress: Optional[Callable[[int, RunResult], None]] = None,
) -> ProtocolReport:
    """Run every grid cell, pick the winner and re-run it from the pristine box.

    ``objective`` overrides the named objective (useful for instrumented
    objectives). With ``workers > 1`` cells run in separate processes; the
    report is identical to the sequential one.
    """
    objective = objective or pcfg.objective_spec()
    cells = pcfg.cells()
    if not cells:
        raise InvalidConfigError("empty run grid")
    pcfg.validate(objective.dimension)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = []
            for i, r in enumerate(pool.map(_run_cell, [(objective, c) for c in cells])):
                runs.append(r)
                if progress is not None:
                    progress(i + 1, r)
    else:
        runs = []
        for i, cfg in enumerate(cells):
            r = _run_cell((objective, cfg))
            runs.append(r)
            if progress is not None:
                progress(i + 1, r)

    best = select_best(runs)
    space = DecisionSpace.for_objective(objective)
    rerun, _ = run_single(objective, cells[best], space)
    if rerun != runs[best]:
        raise InvalidStateError(f"re-run of run {best + 1} did not reproduce its result")
    return ProtocolReport(
        objective=objective.name,
        n_dims=objective.dimension,
        config=pcfg,
        runs=tuple(runs),
        total_evaluations=sum(r.n_eval for r in runs),
        best_index=best,
        rerun=rerun,
    )


def default_protocol(name: str, base: Optional[RunConfig] = None) -> ProtocolConfig:
    """Default grid: ppa 2..6 for f1-f13 (30-D), 4..14 otherwise."""
    key = canonical_name(name)
    base = base or RunConfig()
    if key in N_D_SUITE:
        return ProtocolConfig(key, ppa_min=2, ppa_max=6, ppa_step=2, n_dims=30, base=base)
    return ProtocolConfig(key, ppa_min=4, ppa_max=14, ppa_step=2, base=base)


def suite_protocols(names=SUITE_NAMES, base: Optional[RunConfig] = None) -> list[ProtocolConfig]:
    return [default_protocol(n, base) for n in names]
