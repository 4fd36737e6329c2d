"""Self-contained Levenberg-Marquardt fit of the correction model.

Minimizes the unweighted sum of squared residuals of
a/y + b*exp(c*y) + d against a correction dataset.  Damping is additive on
the normal-equations diagonal; a step is accepted only on strict SSE
decrease.  Everything is plain numpy double precision and deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .approx import FitParams
from .correction import FDataset
from .errors import DomainError, FitSingularError

_N_PARAMS = 4


@dataclass(frozen=True)
class FitOptions:
    """Knobs for the damped least-squares loop; defaults suit the 22-point data."""

    max_iterations: int = 200
    gradient_tolerance: float = 1e-10   # on max|J^T r|
    initial_damping: float = 1e-3
    damping_increase: float = 10.0
    damping_decrease: float = 0.1
    jacobian_step: float = 1e-6         # relative central-difference step
    max_damping: float = 1e12

    def __post_init__(self) -> None:
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")
        for name in ("gradient_tolerance", "initial_damping", "damping_increase",
                     "damping_decrease", "jacobian_step", "max_damping"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class FitResult:
    """Outcome of one optimization run."""

    params: FitParams
    sse: float
    iterations: int
    converged: bool
    std_errors: tuple[float, float, float, float]
    sse_history: tuple[float, ...]   # SSE after each accepted step

    def to_json(self) -> str:
        payload = {
            "params": {"a": self.params.a, "b": self.params.b,
                       "c": self.params.c, "d": self.params.d},
            "sse": self.sse,
            "iterations": self.iterations,
            "converged": self.converged,
            "std_errors": list(self.std_errors),
        }
        return json.dumps(payload, indent=2)


def _model(theta: np.ndarray, y: np.ndarray) -> np.ndarray:
    a, b, c, d = theta
    return a / y + b * np.exp(c * y) + d


def _jacobian(theta: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Analytic model jacobian, one row per sample: (1/y, e^cy, b y e^cy, 1)."""
    _, b, c, _ = theta
    e = np.exp(c * y)
    return np.column_stack([1.0 / y, e, b * y * e, np.ones_like(y)])


def numeric_jacobian(dataset: FDataset, params: FitParams,
                     step: float = FitOptions.jacobian_step) -> np.ndarray:
    """Central-difference model jacobian (samples x 4).

    The step for each parameter is ``step`` relative to its magnitude with
    an absolute floor of ``step``.
    """
    if step <= 0:
        raise DomainError(f"step must be positive, got {step}")
    y = dataset.ys()
    theta = params.as_array()
    out = np.empty((y.size, _N_PARAMS))
    for j in range(_N_PARAMS):
        h = step * max(abs(theta[j]), 1.0)
        hi = theta.copy()
        lo = theta.copy()
        hi[j] += h
        lo[j] -= h
        out[:, j] = (_model(hi, y) - _model(lo, y)) / (2.0 * h)
    return out


def fit_lm(dataset: FDataset,
           init: FitParams = FitParams(1.0, -1.0, -1.0, 1.0),
           options: FitOptions = FitOptions()) -> FitResult:
    """Levenberg-Marquardt minimizer of the dataset's squared residuals.

    Returns a result with ``converged=False`` (no exception) when the
    gradient tolerance is not reached within ``max_iterations``, or when no
    further step can be accepted before damping maxes out.

    Raises
    ------
    DomainError
        Fewer than 4 samples, or a non-finite initial guess.
    FitSingularError
        The damped normal equations stayed unsolvable at the damping ceiling.
    """
    if len(dataset) < _N_PARAMS:
        raise DomainError(
            f"need at least {_N_PARAMS} samples for a {_N_PARAMS}-parameter fit, "
            f"got {len(dataset)}")
    theta = init.as_array()
    if not np.all(np.isfinite(theta)):
        raise DomainError(f"initial parameters must be finite, got {theta}")

    y = dataset.ys()
    f = dataset.fs()
    lam = options.initial_damping
    residual = f - _model(theta, y)
    sse = float(residual @ residual)
    history = [sse]
    iterations = 0
    converged = False

    while iterations < options.max_iterations:
        iterations += 1
        J = _jacobian(theta, y)
        gradient = J.T @ residual
        if np.max(np.abs(gradient)) < options.gradient_tolerance:
            converged = True
            break
        normal = J.T @ J
        stalled = False
        while True:
            try:
                delta = np.linalg.solve(normal + lam * np.eye(_N_PARAMS), gradient)
            except np.linalg.LinAlgError:
                lam *= options.damping_increase
                if lam > options.max_damping:
                    raise FitSingularError(
                        f"normal equations unsolvable at damping {lam:.3g}")
                continue
            trial = theta + delta
            trial_residual = f - _model(trial, y)
            trial_sse = float(trial_residual @ trial_residual)
            if np.isfinite(trial_sse) and trial_sse < sse:
                theta, residual, sse = trial, trial_residual, trial_sse
                lam *= options.damping_decrease
                history.append(sse)
                break
            lam *= options.damping_increase
            if lam > options.max_damping:
                stalled = True
                break
        if stalled:
            break

    params = FitParams(*(float(v) for v in theta))
    return FitResult(params=params, sse=sse, iterations=iterations,
                     converged=converged,
                     std_errors=_std_errors(theta, y, sse, len(dataset)),
                     sse_history=tuple(history))


def _std_errors(theta: np.ndarray, y: np.ndarray, sse: float,
                n_samples: int) -> tuple[float, float, float, float]:
    """Asymptotic standard errors from the jacobian at the optimum."""
    J = _jacobian(theta, y)
    dof = max(n_samples - _N_PARAMS, 1)
    try:
        cov = np.linalg.inv(J.T @ J) * (sse / dof)
    except np.linalg.LinAlgError:
        return (math.nan,) * _N_PARAMS
    diag = np.diag(cov)
    return tuple(math.sqrt(v) if v > 0 else math.nan for v in diag)
