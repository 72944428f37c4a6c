"""Central Force Optimization with deterministic repositioning.

Probes move under a gravity-like pull toward fitter probes. Positions follow

    R[j] = R[j-1] + 0.5 * A[j-1] * dt**2

and the acceleration of probe p is

    A[p] = G * sum_k U(M[k] - M[p]) * (M[k] - M[p])**alpha * (R[k] - R[p]) / |R[k] - R[p]|**beta

with U the unit step. Probes that leave the box are pulled back inside by a
repositioning factor that cycles deterministically, and the box is shrunk
around the best position every few steps. Arrays are 0-based: probe indices
run over ``0..Np-1`` and step 0 holds the initial deployment.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from . import diagnostics
from .benchmarks import ObjectiveSpec, evaluate_batch, make_noise
from .errors import InvalidConfigError, InvalidStateError

INITIAL_DISTRIBUTIONS = ("uniform-on-axis", "uniform-on-diagonal", "grid-2d", "random")
INITIAL_ACCELERATIONS = ("zero", "fixed", "random")
SHRINK_ANCHORS = ("best-so-far", "current")

# pairs closer than this fraction of the box diagonal exert no force
EPS_DIST_REL = 1e-12
FREP_WRAP_TOL = 1e-12


@dataclass
class DecisionSpace:
    """Box bounds that can shrink, plus the pristine starting box."""

    current_min: np.ndarray
    current_max: np.ndarray
    starting_min: np.ndarray
    starting_max: np.ndarray
    diag_length: float

    @classmethod
    def from_bounds(cls, bounds: Sequence[tuple[float, float]]) -> "DecisionSpace":
        lo = np.array([b[0] for b in bounds], dtype=float)
        hi = np.array([b[1] for b in bounds], dtype=float)
        if lo.ndim != 1 or lo.size == 0:
            raise InvalidConfigError("bounds must be a non-empty list of pairs")
        if not np.all(lo < hi):
            raise InvalidConfigError("every lower bound must be below its upper bound")
        diag = float(np.sqrt(np.sum((hi - lo) ** 2)))
        return cls(lo.copy(), hi.copy(), lo.copy(), hi.copy(), diag)

    @classmethod
    def for_objective(cls, objective: ObjectiveSpec) -> "DecisionSpace":
        return cls.from_bounds(objective.bounds)

    @property
    def n_dims(self) -> int:
        return self.current_min.size

    def reset(self) -> "DecisionSpace":
        """A copy with the current bounds restored to the starting bounds."""
        return DecisionSpace(
            self.starting_min.copy(),
            self.starting_max.copy(),
            self.starting_min.copy(),
            self.starting_max.copy(),
            self.diag_length,
        )

    def contains(self, x: np.ndarray) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.current_min) and np.all(x <= self.current_max))


@dataclass(frozen=True)
class RunConfig:
    G: float = 2.0
    delta_t: float = 1.0
    alpha: float = 2.0
    beta: float = 2.0
    frep_init: float = 0.5
    frep_delta: float = 0.05
    gamma: float = 0.5
    probes_per_axis: int = 4
    max_steps: int = 500
    shrink_interval: int = 20
    termination_window: int = 50
    termination_tol: float = 1e-6
    termination_warmup_extra: int = 10
    initial_distribution: str = "uniform-on-axis"
    initial_acceleration: str = "zero"
    initial_acceleration_value: float = 0.5
    initial_acceleration_max: float = 2.0
    noise_seed: int = 0
    frep_wrap_tol: float = FREP_WRAP_TOL
    shrink_anchor: str = "best-so-far"
    early_termination: bool = True

    def n_probes(self, n_dims: int) -> int:
        if self.initial_distribution == "grid-2d":
            return self.probes_per_axis**2
        return self.probes_per_axis * n_dims

    def validate(self, n_dims: int) -> int:
        """Check every constraint for a space of ``n_dims``; return the probe count."""
        if n_dims < 1:
            raise InvalidConfigError("n_dims must be positive")
        if self.initial_distribution not in INITIAL_DISTRIBUTIONS:
            raise InvalidConfigError(f"unknown initial distribution {self.initial_distribution!r}")
        if self.initial_acceleration not in INITIAL_ACCELERATIONS:
            raise InvalidConfigError(f"unknown initial acceleration {self.initial_acceleration!r}")
        if self.shrink_anchor not in SHRINK_ANCHORS:
            raise InvalidConfigError(f"unknown shrink anchor {self.shrink_anchor!r}")
        if not 0.0 < self.frep_init <= 1.0:
            raise InvalidConfigError("frep_init must be in (0, 1]")
        if not 0.0 < self.frep_delta <= 1.0:
            raise InvalidConfigError("frep_delta must be in (0, 1]")
        if not 0.0 <= self.gamma <= 1.0:
            raise InvalidConfigError("gamma must be in [0, 1]")
        if self.max_steps < 1:
            raise InvalidConfigError("max_steps must be positive")
        if self.shrink_interval < 0:
            raise InvalidConfigError("shrink_interval must be non-negative")
        if self.termination_window < 1:
            raise InvalidConfigError("termination_window must be positive")
        if self.termination_tol <= 0:
            raise InvalidConfigError("termination_tol must be positive")
        if self.termination_warmup_extra < 0:
            raise InvalidConfigError("termination_warmup_extra must be non-negative")
        if self.delta_t <= 0:
            raise InvalidConfigError("delta_t must be positive")
        if self.frep_wrap_tol < 0:
            raise InvalidConfigError("frep_wrap_tol must be non-negative")
        n = self.probes_per_axis
        if n < 2:
            raise InvalidConfigError("probes_per_axis must be at least 2")
        if self.initial_distribution == "grid-2d" and n_dims != 2:
            raise InvalidConfigError("grid-2d needs a 2-D decision space")
        if self.initial_distribution == "uniform-on-axis":
            if n_dims == 1 and n < 3:
                raise InvalidConfigError("a 1-D space needs at least 3 probes")
            if n_dims > 1 and n % 2:
                raise InvalidConfigError("probes_per_axis must be even when n_dims > 1")
        n_probes = self.n_probes(n_dims)
        if n_probes < 2:
            raise InvalidConfigError("need at least 2 probes")
        return n_probes


@dataclass
class RunTrace:
    """Full per-step history of one run.

    ``R`` and ``A`` have shape ``(Np, Nd, last_step + 1)`` and ``M`` has shape
    ``(Np, last_step + 1)``. ``frep_history[j]`` is the repositioning factor
    after the update at step j (index 0 holds the initial value).
    ``bounds_history`` lists ``(step, min, max)`` snapshots: the starting box at
    step 0 and the new box after each shrink.
    """

    R: np.ndarray
    A: np.ndarray
    M: np.ndarray
    frep_history: np.ndarray
    bounds_history: list[tuple[int, np.ndarray, np.ndarray]]
    diag_length: float

    @property
    def n_probes(self) -> int:
        return self.R.shape[0]

    @property
    def n_dims(self) -> int:
        return self.R.shape[1]

    @property
    def last_step(self) -> int:
        return self.R.shape[2] - 1

    def bounds_during(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Box in force while the positions of step ``j`` were produced."""
        lo, hi = self.bounds_history[0][1], self.bounds_history[0][2]
        for step, smin, smax in self.bounds_history[1:]:
            if step >= j:
                break
            lo, hi = smin, smax
        return lo, hi

    def step_best(self) -> np.ndarray:
        return self.M.max(axis=0)


@dataclass(frozen=True)
class RunResult:
    objective: str
    best_fitness: float
    best_probe: int
    best_step: int
    last_step: int
    n_eval: int
    final_frep: float
    gamma: float
    probes_per_axis: int
    n_probes: int
    n_dims: int
    best_position: tuple[float, ...]


# ---------------------------------------------------------------------------
# initial deployment


def init_probes_uniform_on_axis(space: DecisionSpace, gamma: float, probes_per_axis: int) -> np.ndarray:
    """Probe lines parallel to each axis, crossing at ``min + gamma * (max - min)``."""
    n_dims = space.n_dims
    n = probes_per_axis
    if not 0.0 <= gamma <= 1.0:
        raise InvalidConfigError("gamma must be in [0, 1]")
    if n < 2 or (n_dims == 1 and n < 3):
        raise InvalidConfigError("too few probes per axis")
    lo, hi = space.current_min, space.current_max
    n_probes = n * n_dims
    R = np.empty((n_probes, n_dims))
    R[:] = lo + gamma * (hi - lo)
    k = np.arange(n)
    for i in range(n_dims):
        delta = (hi[i] - lo[i]) / (n - 1)
        R[i * n : (i + 1) * n, i] = lo[i] + k * delta
    return R


def init_probes_alt(
    space: DecisionSpace,
    mode: str,
    probes_per_axis: int,
    noise: Optional[np.random.Generator] = None,
    n_probes: Optional[int] = None,
) -> np.ndarray:
    """On-diagonal, 2-D grid, or uniformly random deployment.

    The diagonal and random modes place ``probes_per_axis * n_dims`` probes
    unless ``n_probes`` is given.
    """
    n_dims = space.n_dims
    lo, hi = space.current_min, space.current_max
    n = probes_per_axis
    if n_probes is None:
        n_probes = n * n_dims
    if mode == "uniform-on-diagonal":
        if n_probes < 2:
            raise InvalidConfigError("need at least 2 probes")
        p = np.arange(n_probes)[:, None]
        return lo + p * (hi - lo) / (n_probes - 1)
    if mode == "grid-2d":
        if n_dims != 2:
            raise InvalidConfigError("grid-2d needs a 2-D decision space")
        if n < 2:
            raise InvalidConfigError("grid-2d needs at least 2 points per side")
        x1 = lo[0] + np.arange(n) * (hi[0] - lo[0]) / (n - 1)
        x2 = lo[1] + np.arange(n) * (hi[1] - lo[1]) / (n - 1)
        g1, g2 = np.meshgrid(x1, x2, indexing="ij")
        return np.column_stack([g1.ravel(), g2.ravel()])
    if mode == "random":
        if noise is None:
            raise InvalidConfigError("random deployment needs a noise source")
        u = noise.random((n_probes, n_dims))
        return lo + u * (hi - lo)
    raise InvalidConfigError(f"unsupported deployment {mode!r}")


def _initial_accelerations(cfg: RunConfig, shape: tuple[int, int], noise) -> np.ndarray:
    if cfg.initial_acceleration == "zero":
        return np.zeros(shape)
    if cfg.initial_acceleration == "fixed":
        return np.full(shape, float(cfg.initial_acceleration_value))
    return noise.random(shape) * cfg.initial_acceleration_max


# ---------------------------------------------------------------------------
# equations of motion


def compute_accelerations(
    R: np.ndarray, M: np.ndarray, cfg: RunConfig, eps_dist: float = 0.0
) -> np.ndarray:
    """Acceleration of every probe; pairs closer than ``eps_dist`` are skipped."""
    R = np.asarray(R, dtype=float)
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise InvalidStateError("non-finite fitness passed to compute_accelerations")
    if not np.all(np.isfinite(R)):
        raise InvalidStateError("non-finite position passed to compute_accelerations")
    diff = R[None, :, :] - R[:, None, :]  # diff[p, k] = R[k] - R[p]
    dm = M[None, :] - M[:, None]  # dm[p, k] = M[k] - M[p]
    dist = np.sqrt(np.einsum("pki,pki->pk", diff, diff))
    active = (dm > 0) & (dist >= eps_dist) & (dist > 0)
    with np.errstate(all="ignore"):
        w = cfg.G * np.where(active, dm, 1.0) ** cfg.alpha / np.where(active, dist, 1.0) ** cfg.beta
    w = np.where(active, w, 0.0)
    return np.einsum("pk,pki->pi", w, diff)


def step_positions(R_prev: np.ndarray, A_prev: np.ndarray, delta_t: float) -> np.ndarray:
    return R_prev + 0.5 * A_prev * delta_t**2


def retrieve_errant_probes(
    R: np.ndarray, R_prev: np.ndarray, space: DecisionSpace, frep: float
) -> np.ndarray:
    """Pull coordinates that left the box back inside, between the wall and the old position.

    The previous position is clipped into the current box first, which only
    matters right after a shrink has left it outside.
    """
    lo, hi = space.current_min, space.current_max
    prev = np.clip(R_prev, lo, hi)
    out = np.array(R, dtype=float, copy=True)
    below = out < lo
    above = out > hi
    from_lo = lo + frep * (prev - lo)
    from_hi = hi - frep * (hi - prev)
    out = np.where(below, from_lo, out)
    out = np.where(above, from_hi, out)
    return np.minimum(np.maximum(out, lo), hi)


def advance_frep(frep: float, delta: float, tol: float = FREP_WRAP_TOL) -> float:
    """Step the repositioning factor, wrapping to ``delta`` once it passes 1."""
    nxt = frep + delta
    if nxt <= 1.0 + tol:
        return nxt
    return delta


def shrink_decision_space(space: DecisionSpace, best_position: np.ndarray) -> DecisionSpace:
    """Move each wall halfway toward ``best_position``."""
    b = np.asarray(best_position, dtype=float)
    lo, hi = space.current_min, space.current_max
    new_lo = lo + (b - lo) / 2.0
    new_hi = hi - (hi - b) / 2.0
    return replace(space, current_min=new_lo, current_max=new_hi)


# ---------------------------------------------------------------------------
# a full run

ProgressCallback = Callable[[int, float, float], None]


def _last_argmax(v: np.ndarray) -> int:
    return int(v.size - 1 - np.argmax(v[::-1]))


def run_single(
    objective: ObjectiveSpec,
    cfg: RunConfig,
    space: Optional[DecisionSpace] = None,
    callback: Optional[ProgressCallback] = None,
) -> tuple[RunResult, RunTrace]:
    """Execute one deterministic run.

    ``space`` defaults to the objective's canonical box; the run always starts
    from its starting bounds and never mutates the caller's object.
    ``callback(step, frep, best_fitness)`` is invoked after every step.
    """
    space = (space or DecisionSpace.for_objective(objective)).reset()
    n_dims = space.n_dims
    if n_dims != objective.dimension:
        raise InvalidConfigError(
            f"space has {n_dims} dimensions but {objective.name} has {objective.dimension}"
        )
    n_probes = cfg.validate(n_dims)
    n_t = cfg.max_steps
    noise = make_noise(cfg.noise_seed)
    eval_noise = noise if objective.stochastic else None
    eps_dist = EPS_DIST_REL * space.diag_length

    R = np.empty((n_probes, n_dims, n_t + 1))
    A = np.empty_like(R)
    M = np.empty((n_probes, n_t + 1))
    step_best = np.empty(n_t + 1)
    frep_hist = np.empty(n_t + 1)
    bounds_hist = [(0, space.current_min.copy(), space.current_max.copy())]

    if cfg.initial_distribution == "uniform-on-axis":
        R[:, :, 0] = init_probes_uniform_on_axis(space, cfg.gamma, cfg.probes_per_axis)
    else:
        R[:, :, 0] = init_probes_alt(space, cfg.initial_distribution, cfg.probes_per_axis, noise)
    M[:, 0] = evaluate_batch(objective, R[:, :, 0], eval_noise)
    A[:, :, 0] = _initial_accelerations(cfg, (n_probes, n_dims), noise)
    frep = cfg.frep_init
    frep_hist[0] = frep
    step_best[0] = M[:, 0].max()

    best_probe = _last_argmax(M[:, 0])
    best_step = 0
    best_fitness = M[best_probe, 0]
    last_step = n_t

    for j in range(1, n_t + 1):
        moved = step_positions(R[:, :, j - 1], A[:, :, j - 1], cfg.delta_t)
        R[:, :, j] = retrieve_errant_probes(moved, R[:, :, j - 1], space, frep)
        M[:, j] = evaluate_batch(objective, R[:, :, j], eval_noise)
        A[:, :, j] = compute_accelerations(R[:, :, j], M[:, j], cfg, eps_dist)

        p = _last_argmax(M[:, j])
        step_best[j] = M[p, j]
        if M[p, j] >= best_fitness:
            best_fitness, best_probe, best_step = M[p, j], p, j

        frep = advance_frep(frep, cfg.frep_delta, cfg.frep_wrap_tol)
        frep_hist[j] = frep
        if callback is not None:
            callback(j, frep, float(best_fitness))

        if cfg.early_termination and diagnostics.series_saturated(
            step_best[: j + 1],
            j,
            cfg.termination_window,
            cfg.termination_tol,
            cfg.termination_warmup_extra,
        ):
            last_step = j
            break

        if cfg.shrink_interval > 0 and j % cfg.shrink_interval == 0:
            if cfg.shrink_anchor == "best-so-far":
                anchor = R[best_probe, :, best_step]
            else:
                anchor = R[p, :, j]
            space = shrink_decision_space(space, anchor)
            bounds_hist.append((j, space.current_min.copy(), space.current_max.copy()))

    n = last_step + 1
    trace = RunTrace(
        R=R[:, :, :n].copy(),
        A=A[:, :, :n].copy(),
        M=M[:, :n].copy(),
        frep_history=frep_hist[:n].copy(),
        bounds_history=bounds_hist,
        diag_length=space.diag_length,
    )
    result = RunResult(
        objective=objective.name,
        best_fitness=float(best_fitness),
        best_probe=int(best_probe),
        best_step=int(best_step),
        last_step=int(last_step),
        n_eval=int(n * n_probes),
        final_frep=float(frep),
        gamma=float(cfg.gamma),
        probes_per_axis=int(cfg.probes_per_axis),
        n_probes=int(n_probes),
        n_dims=int(n_dims),
        best_position=tuple(float(v) for v in R[best_probe, :, best_step]),
    )
    return result, trace
