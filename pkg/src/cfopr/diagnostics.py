"""Per-step run metrics and the saturation / oscillation detectors.

D_avg is the mean distance from every probe to an anchor point, divided by
``L * (Np - 1)`` where L is the diagonal of the starting box. Two anchors are
supported:

* ``"step-best"`` (default): the position at step j of the best probe at step j.
* ``"global-best"``: the best-so-far probe's position at the step it set the
  record.

The detectors only read the trace prefix up to step j, so they can be called
on a finished trace or on partial series during a run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import InvalidConfigError

if TYPE_CHECKING:  # pragma: no cover
    from .core import RunTrace

ANCHORS = ("step-best", "global-best")
DEFAULT_ANCHOR = "step-best"

FITNESS_WINDOW = 50
FITNESS_TOL = 1e-6
DAVG_TOL = 5e-4
WARMUP_EXTRA = 10
OSCILLATION_MIN_STEP = 15
OSCILLATION_LOOKBACK = 10
OSCILLATION_MIN_CHANGES = 3


@dataclass(frozen=True)
class StepMetrics:
    step: int
    best_fitness_step: float
    best_fitness_so_far: float
    best_probe_so_far: int
    davg: float


def _last_argmax(v: np.ndarray) -> int:
    return int(v.size - 1 - np.argmax(v[::-1]))


def best_so_far(trace: "RunTrace") -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Running record ``(fitness, probe, step)`` per step, latest tie wins."""
    n = trace.M.shape[1]
    fit = np.empty(n)
    probe = np.empty(n, dtype=int)
    step = np.empty(n, dtype=int)
    bf, bp, bs = -np.inf, 0, 0
    for j in range(n):
        p = _last_argmax(trace.M[:, j])
        if trace.M[p, j] >= bf:
            bf, bp, bs = trace.M[p, j], p, j
        fit[j], probe[j], step[j] = bf, bp, bs
    return fit, probe, step


def _anchor_positions(trace: "RunTrace", anchor: str) -> np.ndarray:
    n = trace.M.shape[1]
    if anchor == "step-best":
        p = np.array([_last_argmax(trace.M[:, j]) for j in range(n)])
        return trace.R[p, :, np.arange(n)]
    if anchor == "global-best":
        _, probe, step = best_so_far(trace)
        return trace.R[probe, :, step]
    raise InvalidConfigError(f"unknown D_avg anchor {anchor!r}")


def davg_series(
    trace: "RunTrace", anchor: str = DEFAULT_ANCHOR, diag_length: Optional[float] = None
) -> np.ndarray:
    """D_avg at every step of the trace."""
    n_probes = trace.R.shape[0]
    if n_probes < 2:
        raise InvalidConfigError("D_avg needs at least 2 probes")
    L = trace.diag_length if diag_length is None else diag_length
    anchors = _anchor_positions(trace, anchor)  # (steps, Nd)
    diff = trace.R - anchors.T[None, :, :]
    dist = np.sqrt(np.sum(diff**2, axis=1))  # (Np, steps)
    return dist.sum(axis=0) / (L * (n_probes - 1))


def davg_at_step(
    trace: "RunTrace",
    j: int,
    space=None,
    anchor: str = DEFAULT_ANCHOR,
) -> float:
    """D_avg at step ``j``; ``space`` only supplies the diagonal length when given."""
    if not 0 <= j <= trace.M.shape[1] - 1:
        raise InvalidConfigError(f"step {j} outside the trace")
    L = None if space is None else space.diag_length
    sub = _prefix(trace, j)
    return float(davg_series(sub, anchor, L)[j])


def _prefix(trace: "RunTrace", j: int):
    from dataclasses import replace

    return replace(trace, R=trace.R[:, :, : j + 1], A=trace.A[:, :, : j + 1], M=trace.M[:, : j + 1])


def series_saturated(values: np.ndarray, j: int, window: int, tol: float, warmup_extra: int) -> bool:
    """Windowed-mean-versus-last test on ``values[0..j]``."""
    if window < 1:
        raise InvalidConfigError("window must be positive")
    if j < window + warmup_extra:
        return False
    tail = np.asarray(values[j - window + 1 : j + 1], dtype=float)
    return bool(abs(tail.mean() - tail[-1]) <= tol)


def series_oscillating(values: np.ndarray, j: int) -> bool:
    """At least three slope reversals among the last ten triples ending at ``j``."""
    if j < OSCILLATION_MIN_STEP:
        return False
    v = np.asarray(values[j - OSCILLATION_LOOKBACK - 1 : j + 1], dtype=float)
    d = np.diff(v)
    changes = int(np.sum(d[:-1] * d[1:] < 0))
    return changes >= OSCILLATION_MIN_CHANGES


def fitness_saturated(
    trace: "RunTrace",
    j: int,
    window: int = FITNESS_WINDOW,
    tol: float = FITNESS_TOL,
    warmup_extra: int = WARMUP_EXTRA,
) -> bool:
    return series_saturated(trace.M[:, : j + 1].max(axis=0), j, window, tol, warmup_extra)


def davg_saturated(
    trace: "RunTrace",
    j: int,
    window: int = FITNESS_WINDOW,
    tol: float = DAVG_TOL,
    warmup_extra: int = WARMUP_EXTRA,
    anchor: str = DEFAULT_ANCHOR,
) -> bool:
    if j < window + warmup_extra:
        return False
    return series_saturated(davg_series(_prefix(trace, j), anchor), j, window, tol, warmup_extra)


def davg_oscillating(trace: "RunTrace", j: int, anchor: str = DEFAULT_ANCHOR) -> bool:
    if j < OSCILLATION_MIN_STEP:
        return False
    return series_oscillating(davg_series(_prefix(trace, j), anchor), j)


def step_metrics(trace: "RunTrace", anchor: str = DEFAULT_ANCHOR) -> list[StepMetrics]:
    """One :class:`StepMetrics` per step of the trace."""
    fit, probe, _ = best_so_far(trace)
    step_best = trace.M.max(axis=0)
    davg = davg_series(trace, anchor)
    return [
        StepMetrics(j, float(step_best[j]), float(fit[j]), int(probe[j]), float(davg[j]))
        for j in range(trace.M.shape[1])
    ]
