"""Benchmark objectives for maximization.

Every function here is written so that larger is better. Benchmarks that are
normally minimized are returned negated, so a textbook minimum of 0 shows up
as a maximum of 0.

Several of the n-D functions are coded the way the reference CFO program coded
them, which is not always the textbook form. Reference CFO results were
produced by those variants, so they are kept:

* ``f5``  sums ``(100*(x[i+1] - x[i]**2) + (x[i] - 1))**2``; the textbook
  Rosenbrock is ``100*(x[i+1] - x[i]**2)**2 + (x[i] - 1)**2``.
* ``f9``  squares each whole Rastrigin term, ``(x**2 - 10 cos(2 pi x) + 10)**2``.
* ``f11`` is Griewank shifted by +100 inside both the sum and the cosine product.
* ``f12`` uses ``a = 10`` in the penalty (the corrected coefficient).
* ``f13`` uses ``(x[i] - 2)**2`` and adds the ``x[n]`` boundary term once per
  loop iteration (n - 1 times) instead of once, exactly as in the program.
* ``parrott_f4`` applies the 0.05 shift outside the ``5 pi`` factor, so its
  peak (about 0.998) sits near x = 0.0484 instead of 1 at x = 0.0797.
* ``f15`` (Kowalik) has poles inside its box where ``b**2 + b*x3 + x4`` is
  exactly 0, and on-axis probes do land on them. An exactly zero denominator
  is replaced by one ulp of ``b**2``, the value at the nearest representable
  point, so the fitness is very poor but finite.
* ``f22`` and ``f23`` use the Shekel ``A`` matrices as printed in the program
  listing: row 3 is all zeros and, for ``f22``, row 6 starts ``(3, 9, ...)``.

All functions are vectorized over a batch ``X`` of shape ``(n_points, n_dims)``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import EvaluationOverflowError, InvalidArgumentError

BatchFunc = Callable[..., np.ndarray]


@dataclass(frozen=True)
class ObjectiveSpec:
    """An objective, its canonical decision space and its known maximum."""

    name: str
    dimension: int
    bounds: tuple[tuple[float, float], ...]
    func: BatchFunc = dataclasses.field(repr=False, compare=False)
    known_max: Optional[float] = None
    known_argmax: Optional[tuple[float, ...]] = None
    stochastic: bool = False
    fixed_dimension: bool = True

    def __post_init__(self):
        if self.dimension < 1:
            raise InvalidArgumentError(f"{self.name}: dimension must be positive")
        if len(self.bounds) != self.dimension:
            raise InvalidArgumentError(
                f"{self.name}: {len(self.bounds)} bound pairs for dimension {self.dimension}"
            )
        for lo, hi in self.bounds:
            if not lo < hi:
                raise InvalidArgumentError(f"{self.name}: lower bound {lo} not below upper {hi}")

    @property
    def lower(self) -> np.ndarray:
        return np.array([b[0] for b in self.bounds], dtype=float)

    @property
    def upper(self) -> np.ndarray:
        return np.array([b[1] for b in self.bounds], dtype=float)

    def with_dimension(self, n: int) -> "ObjectiveSpec":
        """Return this objective re-dimensioned to ``n`` (n-D family only)."""
        if n == self.dimension:
            return self
        if self.fixed_dimension:
            raise InvalidArgumentError(f"{self.name} is fixed at dimension {self.dimension}")
        argmax = None
        if self.known_argmax is not None and len(set(self.known_argmax)) == 1:
            argmax = (self.known_argmax[0],) * n
        known_max = self.known_max
        if self.name in _MAX_SCALES_WITH_DIM and known_max is not None:
            known_max = known_max / self.dimension * n
        return dataclasses.replace(
            self, dimension=n, bounds=(self.bounds[0],) * n, known_argmax=argmax, known_max=known_max
        )


# ---------------------------------------------------------------------------
# n-D functions


def _f1(X):
    return -np.sum(X**2, axis=1)


def _f2(X):
    ax = np.abs(X)
    return -(np.sum(ax, axis=1) + np.prod(ax, axis=1))


def _f3(X):
    return -np.sum(np.cumsum(X, axis=1) ** 2, axis=1)


def _f4(X):
    return -np.max(np.abs(X), axis=1)


def _f5(X):
    xi, xn = X[:, :-1], X[:, 1:]
    return -np.sum((100.0 * (xn - xi**2) + (xi - 1.0)) ** 2, axis=1)


def _f6(X):
    return -np.sum(np.floor(X + 0.5) ** 2, axis=1)


def _f7(X, noise):
    i = np.arange(1, X.shape[1] + 1)
    z = np.sum(i * X**4, axis=1)
    return -z - noise.random(X.shape[0])


def _f8(X):
    return np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1)


def _f9(X):
    return -np.sum((X**2 - 10.0 * np.cos(2.0 * np.pi * X) + 10.0) ** 2, axis=1)


def _f10(X):
    n = X.shape[1]
    s1 = np.sum(X**2, axis=1)
    s2 = np.sum(np.cos(2.0 * np.pi * X), axis=1)
    z = -20.0 * np.exp(-0.2 * np.sqrt(s1 / n)) - np.exp(s2 / n) + 20.0 + np.e
    return -z


def _f11(X):
    i = np.arange(1, X.shape[1] + 1)
    s = X - 100.0
    z = np.sum(s**2, axis=1) / 4000.0 - np.prod(np.cos(s / np.sqrt(i)), axis=1) + 1.0
    return -z


def _penalty(X, a, k, m):
    u = np.where(X > a, k * (X - a) ** m, 0.0)
    u = np.where(X < -a, k * (-X - a) ** m, u)
    return np.sum(u, axis=1)


def _f12(X):
    n = X.shape[1]
    y = 1.0 + (X + 1.0) / 4.0
    s1 = (
        10.0 * np.sin(np.pi * y[:, 0]) ** 2
        + np.sum((y[:, :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[:, 1:]) ** 2), axis=1)
        + (y[:, -1] - 1.0) ** 2
    )
    s1 = np.pi * s1 / n
    return -(s1 + _penalty(X, 10.0, 100.0, 4))


def _f13(X):
    n = X.shape[1]
    xi, xnext = X[:, :-1], X[:, 1:]
    xn = X[:, -1]
    boundary = (xn - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * xn) ** 2)
    s1 = np.sum((xi - 2.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * xnext) ** 2), axis=1)
    s1 = s1 + (n - 1) * boundary
    z = (np.sin(3.0 * np.pi * X[:, 0]) ** 2 + s1) / 10.0 + _penalty(X, 5.0, 100.0, 4)
    return -z


# ---------------------------------------------------------------------------
# fixed-dimension functions

_FOXHOLES = np.array(
    [
        [-32.0, -16.0, 0.0, 16.0, 32.0] * 5,
        [v for v in (-32.0, -16.0, 0.0, 16.0, 32.0) for _ in range(5)],
    ]
)


def _f14(X):
    d6 = (X[:, :, None] - _FOXHOLES[None, :, :]) ** 6  # (n, 2, 25)
    s = np.sum(1.0 / (np.arange(1, 26) + d6.sum(axis=1)), axis=1)
    return -1.0 / (0.002 + s)


_KOWALIK_A = np.array(
    [0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
)
_KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])


def _f15(X):
    x1, x2, x3, x4 = (X[:, k : k + 1] for k in range(4))
    b = _KOWALIK_B[None, :]
    num = x1 * (b**2 + b * x2)
    den = b**2 + b * x3 + x4
    den = np.where(den == 0.0, np.spacing(b**2), den)
    return -np.sum((_KOWALIK_A[None, :] - num / den) ** 2, axis=1)


def _f16(X):
    x1, x2 = X[:, 0], X[:, 1]
    z = 4.0 * x1**2 - 2.1 * x1**4 + x1**6 / 3.0 + x1 * x2 - 4.0 * x2**2 + 4.0 * x2**4
    return -z


def _f17(X):
    x1, x2 = X[:, 0], X[:, 1]
    z = (
        (x2 - 5.1 * x1**2 / (4.0 * np.pi**2) + 5.0 * x1 / np.pi - 6.0) ** 2
        + 10.0 * (1.0 - 1.0 / (8.0 * np.pi)) * np.cos(x1)
        + 10.0
    )
    return -z


def _goldstein_price(X):
    x1, x2 = X[:, 0], X[:, 1]
    t1 = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1**2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2**2
    )
    t2 = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1**2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2**2
    )
    return -(t1 * t2)


_HARTMAN3_A = np.array([[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]])
_HARTMAN3_C = np.array([1.0, 1.2, 3.0, 3.2])
_HARTMAN3_P = np.array(
    [
        [0.36890, 0.1170, 0.2673],
        [0.46990, 0.4387, 0.7470],
        [0.10910, 0.8732, 0.5547],
        [0.03815, 0.5743, 0.8828],
    ]
)

_HARTMAN6_A = np.array(
    [
        [10.0, 3.00, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.00, 3.50, 1.70, 10.0, 17.0, 8.0],
        [17.0, 8.00, 0.05, 10.0, 0.1, 14.0],
    ]
)
_HARTMAN6_C = np.array([1.0, 1.2, 3.0, 3.2])
_HARTMAN6_P = np.array(
    [
        [0.13120, 0.1696, 0.5569, 0.01240, 0.8283, 0.5886],
        [0.23290, 0.4135, 0.8307, 0.37360, 0.1004, 0.9991],
        [0.23480, 0.1415, 0.3522, 0.28830, 0.3047, 0.6650],
        [0.40470, 0.8828, 0.8732, 0.57430, 0.1091, 0.0381],
    ]
)


def _hartman(X, a, c, p):
    inner = np.sum(a[None, :, :] * (X[:, None, :] - p[None, :, :]) ** 2, axis=2)
    return np.sum(c[None, :] * np.exp(-inner), axis=1)


def _f19(X):
    return _hartman(X, _HARTMAN3_A, _HARTMAN3_C, _HARTMAN3_P)


def _f20(X):
    return _hartman(X, _HARTMAN6_A, _HARTMAN6_C, _HARTMAN6_P)


_SHEKEL_A = {
    5: np.array([[4, 4, 4, 4], [1, 1, 1, 1], [8, 8, 8, 8], [6, 6, 6, 6], [3, 7, 3, 7]], dtype=float),
    7: np.array(
        [
            [4, 4, 4, 4],
            [1, 1, 1, 1],
            [0, 0, 0, 0],
            [6, 6, 6, 6],
            [3, 7, 3, 7],
            [3, 9, 2, 9],
            [5, 5, 3, 3],
        ],
        dtype=float,
    ),
    10: np.array(
        [
            [4, 4, 4, 4],
            [1, 1, 1, 1],
            [0, 0, 0, 0],
            [6, 6, 6, 6],
            [3, 7, 3, 7],
            [2, 9, 2, 9],
            [5, 5, 3, 3],
            [0, 1, 0, 1],
            [6, 2, 6, 2],
            [7, 3.6, 7, 3.6],
        ]
    ),
}
_SHEKEL_C = {
    5: np.array([0.1, 0.2, 0.2, 0.4, 0.4]),
    7: np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3]),
    10: np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5]),
}


def _shekel(X, m):
    d2 = np.sum((X[:, None, :] - _SHEKEL_A[m][None, :, :]) ** 2, axis=2)
    return np.sum(1.0 / (d2 + _SHEKEL_C[m][None, :]), axis=1)


def _f21(X):
    return _shekel(X, 5)


def _f22(X):
    return _shekel(X, 7)


def _f23(X):
    return _shekel(X, 10)


def _parrott_f4(X):
    x = X[:, 0]
    envelope = np.exp(-2.0 * np.log(2.0) * ((x - 0.08) / 0.854) ** 2)
    return envelope * np.sin(5.0 * np.pi * x**0.75 - 0.05) ** 6


def _sgo(X):
    t = X**4 - 16.0 * X**2 + 0.5 * X
    return -np.sum(t, axis=1)


def _step(X):
    # the program offsets the 2-D instance to (75, 35) and leaves n-D at the origin
    offset = np.array([75.0, 35.0]) if X.shape[1] == 2 else 0.0
    return -np.sum(np.floor((X - offset) + 0.5) ** 2, axis=1)


def _colville(X):
    x1, x2, x3, x4 = (X[:, k] for k in range(4))
    z = (
        100.0 * (x2 - x1**2) ** 2
        + (1.0 - x1) ** 2
        + 90.0 * (x4 - x3**2) ** 2
        + (1.0 - x3) ** 2
        + 10.1 * ((x2 - 1.0) ** 2 + (x4 - 1.0) ** 2)
        + 19.8 * (x2 - 1.0) * (x4 - 1.0)
    )
    return -z


_GRIEWANK_OFFSET = 75.123


def _griewank(X):
    i = np.arange(1, X.shape[1] + 1)
    s = X - _GRIEWANK_OFFSET
    z = np.sum(s**2, axis=1) / 4000.0 - np.prod(np.cos(s / np.sqrt(i)), axis=1) + 1.0
    return -z


def _himmelblau(X):
    x1, x2 = X[:, 0], X[:, 1]
    return 200.0 - (x1**2 + x2 - 11.0) ** 2 - (x1 + x2**2 - 7.0) ** 2


# ---------------------------------------------------------------------------
# registry

SUITE_NAMES = tuple(f"f{k}" for k in range(1, 24))
AUX_NAMES = (
    "gp",
    "sgo",
    "parrott_f4",
    "step",
    "schwefel_226",
    "colville",
    "griewank",
    "himmelblau",
)
N_D_FAMILY = tuple(f"f{k}" for k in range(1, 14)) + ("step", "schwefel_226", "griewank")

# known maxima that grow linearly with dimension (quoted for the 30-D case)
_MAX_SCALES_WITH_DIM = {"f8", "schwefel_226"}

_ALIASES = {
    "parrottf4": "parrott_f4",
    "goldsteinprice": "gp",
    "goldstein_price": "gp",
    "schwefel226": "schwefel_226",
}


def _sym(b, n):
    return ((-b, b),) * n


def _build(name: str, n_dims: int) -> ObjectiveSpec:
    n = n_dims
    table = {
        "f1": dict(func=_f1, bounds=_sym(100.0, n), known_max=0.0, fixed_dimension=False),
        "f2": dict(func=_f2, bounds=_sym(10.0, n), known_max=0.0, fixed_dimension=False),
        "f3": dict(func=_f3, bounds=_sym(100.0, n), known_max=0.0, fixed_dimension=False),
        "f4": dict(func=_f4, bounds=_sym(100.0, n), known_max=0.0, fixed_dimension=False),
        "f5": dict(func=_f5, bounds=_sym(30.0, n), known_max=0.0, fixed_dimension=False),
        "f6": dict(func=_f6, bounds=_sym(100.0, n), known_max=0.0, fixed_dimension=False),
        "f7": dict(
            func=_f7, bounds=_sym(1.28, n), known_max=0.0, fixed_dimension=False, stochastic=True
        ),
        "f8": dict(
            func=_f8,
            bounds=_sym(500.0, n),
            known_max=12569.5 * n / 30,
            known_argmax=(420.9687,) * n,
            fixed_dimension=False,
        ),
        "f9": dict(func=_f9, bounds=_sym(5.12, n), known_max=0.0, fixed_dimension=False),
        "f10": dict(func=_f10, bounds=_sym(32.0, n), known_max=0.0, fixed_dimension=False),
        "f11": dict(func=_f11, bounds=_sym(600.0, n), known_max=0.0, fixed_dimension=False),
        "f12": dict(func=_f12, bounds=_sym(50.0, n), known_max=0.0, fixed_dimension=False),
        "f13": dict(func=_f13, bounds=_sym(50.0, n), known_max=0.0, fixed_dimension=False),
        "f14": dict(func=_f14, bounds=_sym(65.536, 2), known_max=-1.0),
        "f15": dict(
            func=_f15,
            bounds=_sym(5.0, 4),
            known_max=-0.0003075,
            known_argmax=(0.1928, 0.1908, 0.1231, 0.1358),
        ),
        "f16": dict(func=_f16, bounds=_sym(5.0, 2), known_max=1.0316285),
        "f17": dict(
            func=_f17,
            bounds=((-5.0, 10.0), (0.0, 15.0)),
            known_max=-0.398,
            known_argmax=(-3.142, 12.275),
        ),
        "f18": dict(func=_goldstein_price, bounds=_sym(2.0, 2), known_max=-3.0, known_argmax=(0.0, -1.0)),
        "f19": dict(func=_f19, bounds=((0.0, 1.0),) * 3, known_max=3.86, known_argmax=(0.114, 0.556, 0.852)),
        "f20": dict(
            func=_f20,
            bounds=((0.0, 1.0),) * 6,
            known_max=3.32,
            known_argmax=(0.201, 0.150, 0.477, 0.275, 0.311, 0.657),
        ),
        "f21": dict(func=_f21, bounds=((0.0, 10.0),) * 4, known_max=10.0),
        "f22": dict(func=_f22, bounds=((0.0, 10.0),) * 4, known_max=10.0),
        "f23": dict(func=_f23, bounds=((0.0, 10.0),) * 4, known_max=10.0),
        "gp": dict(func=_goldstein_price, bounds=_sym(100.0, 2), known_max=-3.0, known_argmax=(0.0, -1.0)),
        "sgo": dict(
            func=_sgo,
            bounds=_sym(50.0, 2),
            known_max=130.8323226,
            known_argmax=(-2.8362075, -2.8362075),
        ),
        # the quoted location belongs to the textbook form; the coded form peaks near 0.0484
        "parrott_f4": dict(func=_parrott_f4, bounds=((0.0, 1.0),), known_max=1.0),
        "step": dict(
            func=_step,
            bounds=_sym(100.0, n),
            known_max=0.0,
            known_argmax=(75.0, 35.0) if n == 2 else (0.0,) * n,
            fixed_dimension=False,
        ),
        "schwefel_226": dict(
            func=_f8,
            bounds=_sym(500.0, n),
            known_max=12569.5 * n / 30,
            known_argmax=(420.9687,) * n,
            fixed_dimension=False,
        ),
        "colville": dict(func=_colville, bounds=_sym(10.0, 4), known_max=0.0, known_argmax=(1.0,) * 4),
        "griewank": dict(
            func=_griewank,
            bounds=_sym(600.0, n),
            known_max=0.0,
            known_argmax=(_GRIEWANK_OFFSET,) * n,
            fixed_dimension=False,
        ),
        "himmelblau": dict(func=_himmelblau, bounds=_sym(6.0, 2), known_max=200.0, known_argmax=(3.0, 2.0)),
    }
    kw = table[name]
    return ObjectiveSpec(name=name, dimension=len(kw["bounds"]), **kw)


_DEFAULT_DIMS = {"step": 2, "griewank": 2}


def canonical_name(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in SUITE_NAMES and key not in AUX_NAMES:
        raise InvalidArgumentError(f"unknown objective {name!r}")
    return key


def get_objective(name: str, dimension: Optional[int] = None) -> ObjectiveSpec:
    """Look up an objective by name, optionally re-dimensioning an n-D one.

    >>> get_objective("GP").bounds
    ((-100.0, 100.0), (-100.0, 100.0))
    """
    key = canonical_name(name)
    default = _DEFAULT_DIMS.get(key, 30)
    spec = _build(key, default)
    if dimension is not None and dimension != spec.dimension:
        if spec.fixed_dimension:
            raise InvalidArgumentError(f"{key} is fixed at dimension {spec.dimension}")
        spec = _build(key, dimension)
    return spec


def make_suite(n_dims: int = 30) -> list[ObjectiveSpec]:
    """All objectives: f1-f23 followed by the auxiliary functions.

    ``n_dims`` applies to f1-f13; the auxiliary n-D functions keep the
    dimension the reference program used for them.
    """
    specs = [get_objective(name, n_dims if name in N_D_FAMILY else None) for name in SUITE_NAMES]
    specs += [get_objective(name) for name in AUX_NAMES]
    return specs


def evaluate_batch(
    spec: ObjectiveSpec, X: np.ndarray, noise: Optional[np.random.Generator] = None
) -> np.ndarray:
    """Evaluate ``spec`` at each row of ``X``.

    For the stochastic objective the noise stream is consumed one draw per
    row, in row order, so a batch and a row-by-row loop see identical noise.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != spec.dimension:
        raise InvalidArgumentError(
            f"{spec.name}: expected points of dimension {spec.dimension}, got shape {X.shape}"
        )
    with np.errstate(all="ignore"):
        if spec.stochastic:
            if noise is None:
                raise InvalidArgumentError(f"{spec.name} needs a noise source")
            values = spec.func(X, noise)
        else:
            values = spec.func(X)
    values = np.asarray(values, dtype=float) + 0.0  # turn -0.0 into 0.0
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(values))[0])
        raise EvaluationOverflowError(f"{spec.name} is not finite at {X[bad].tolist()}")
    return values


def evaluate(
    spec: ObjectiveSpec, x: Sequence[float], noise: Optional[np.random.Generator] = None
) -> float:
    """Fitness of a single point."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidArgumentError("evaluate takes a single coordinate vector")
    return float(evaluate_batch(spec, x[None, :], noise)[0])


def known_optimum(spec: ObjectiveSpec) -> Optional[tuple[float, Optional[tuple[float, ...]]]]:
    """``(max, argmax)`` where tabulated; the argmax may be ``None``."""
    if spec.known_max is None:
        return None
    return spec.known_max, spec.known_argmax


def make_noise(seed: int = 0) -> np.random.Generator:
    """Counter-based (Philox) generator used for f7 and random initial probes."""
    return np.random.Generator(np.random.Philox(seed))
