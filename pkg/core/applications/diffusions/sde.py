"""SDE models ``dX = b(X) dt + σ(X) dW``, the Euler scheme and exact solutions.

Coefficients are vectorised over samples: ``drift`` maps states shaped
``(S, d)`` to ``(S, d)`` and ``diffusion`` maps them to ``(S, d, q)``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from core.applications.diffusions.schemas import CircleParams
from core.applications.diffusions.schemas import GbmParams
from core.applications.sampling.grids import PathIncrements
from core.applications.sampling.grids import TimeGrid
from core.helpers.custom_exceptions import DimensionMismatchError
from core.helpers.custom_exceptions import GridMismatchError
from core.helpers.custom_exceptions import OracleUnavailableError

Coefficient = Callable[[np.ndarray], np.ndarray]
ExactSolution = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class DiffusionModel:
    """Drift/diffusion pair with its starting point and horizon.

    ``exact``, when present, maps initial states ``(S, d)`` and Brownian
    terminal values ``(S, q)`` to the true ``X_T``; it lets error diagnostics
    couple scheme and solution on one path.
    """

    name: str
    dimension: int
    driving_dimension: int
    drift: Coefficient
    diffusion: Coefficient
    x0: np.ndarray
    horizon: float
    exact: ExactSolution | None = None

    def __post_init__(self):
        x0 = np.atleast_1d(np.asarray(self.x0, dtype=float))
        if x0.shape != (self.dimension,):
            msg = "initial state does not match the model dimension"
            raise DimensionMismatchError(msg, {"x0": x0.shape, "dimension": self.dimension})
        object.__setattr__(self, "x0", x0)

    def initial_states(self, samples: int) -> np.ndarray:
        return np.broadcast_to(self.x0, (samples, self.dimension))

    def exact_terminal(self, initial: np.ndarray, w_terminal: np.ndarray) -> np.ndarray:
        if self.exact is None:
            msg = f"model {self.name} has no closed-form solution"
            raise OracleUnavailableError(msg, {"model": self.name})
        return self.exact(initial, w_terminal)


def euler_terminal(
    model: DiffusionModel,
    grid: TimeGrid,
    w: PathIncrements,
    initial: np.ndarray | None = None,
    *,
    record_path: bool = False,
) -> np.ndarray:
    """Explicit recursion ``x_{k+1} = x_k + b(x_k) δ + σ(x_k) Δ_k W``.

    Args:
        model (DiffusionModel): Coefficients and starting point.
        grid (TimeGrid): Partition the scheme steps on; must be ``w.grid``.
        w (PathIncrements): Driving increments, one per interval.
        initial (np.ndarray, optional): Per-sample starting states ``(S, d)``;
            defaults to ``model.x0`` for every sample.
        record_path (bool): Return every node instead of the terminal value.

    Returns:
        np.ndarray: ``X^n_T`` shaped ``(S, d)``, or ``(S, steps + 1, d)``.
    """
    if w.grid != grid:
        msg = "increments were generated on a different grid"
        raise GridMismatchError(msg, {"grid": repr(grid), "increments": repr(w.grid)})
    if w.dimension != model.driving_dimension:
        msg = "increment dimension does not match the driving Brownian motion"
        raise DimensionMismatchError(msg, {"q": w.dimension, "model": model.driving_dimension})
    x = model.initial_states(w.samples) if initial is None else np.asarray(initial, dtype=float)
    if x.shape != (w.samples, model.dimension):
        msg = "initial states must be shaped (samples, d)"
        raise DimensionMismatchError(msg, {"shape": x.shape})

    scalar_noise = model.driving_dimension == 1
    path = [x] if record_path else None
    for k, delta in enumerate(grid.durations):
        dw = w.increments[:, k, :]
        sigma = model.diffusion(x)
        if scalar_noise:
            noise = sigma[:, :, 0] * dw
        else:
            noise = np.einsum("sdq,sq->sd", sigma, dw)
        x = x + model.drift(x) * delta + noise
        if path is not None:
            path.append(x)
    if path is not None:
        return np.stack(path, axis=1)
    return x


def gbm_exact_terminal(p: GbmParams, w_terminal: np.ndarray | float) -> np.ndarray | float:
    """``S_T = s0 exp((r − σ²/2) T + σ W_T)``."""
    return p.s0 * np.exp((p.r - 0.5 * p.sigma**2) * p.horizon + p.sigma * np.asarray(w_terminal))


def gbm_exact_nodes(p: GbmParams, w: PathIncrements, spots: np.ndarray | None = None) -> np.ndarray:
    """Exact price at every node of ``w.grid``, shaped ``(S, steps + 1)``.

    ``spots`` overrides ``p.s0`` with one starting price per sample.
    """
    positions = w.positions()[:, :, 0]
    start = p.s0 if spots is None else np.asarray(spots, dtype=float)[:, None]
    return start * np.exp((p.r - 0.5 * p.sigma**2) * w.grid.nodes[None, :] + p.sigma * positions)


def circle_exact(p: CircleParams, w_t: np.ndarray | float) -> np.ndarray:
    """``Z_t = (cos(θ + W_t), sin(θ + W_t))``; always on the unit circle."""
    angle = p.theta0 + np.asarray(w_t, dtype=float)
    return np.stack([np.cos(angle), np.sin(angle)], axis=-1)


def gbm_model(p: GbmParams) -> DiffusionModel:
    def drift(x):
        return p.r * x

    def diffusion(x):
        return (p.sigma * x)[:, :, None]

    def exact(initial, w_terminal):
        growth = np.exp((p.r - 0.5 * p.sigma**2) * p.horizon + p.sigma * w_terminal)
        return initial * growth

    return DiffusionModel(
        name="gbm",
        dimension=1,
        driving_dimension=1,
        drift=drift,
        diffusion=diffusion,
        x0=np.array([p.s0]),
        horizon=p.horizon,
        exact=exact,
    )


def circle_model(p: CircleParams) -> DiffusionModel:
    """``dX = −X/2 dt − Y dW``, ``dY = −Y/2 dt + X dW``."""

    def drift(z):
        return -0.5 * z

    def diffusion(z):
        return np.stack([-z[:, 1], z[:, 0]], axis=1)[:, :, None]

    def exact(initial, w_terminal):
        angle = np.arctan2(initial[:, 1], initial[:, 0]) + w_terminal[:, 0]
        return np.stack([np.cos(angle), np.sin(angle)], axis=1)

    return DiffusionModel(
        name="circle",
        dimension=2,
        driving_dimension=1,
        drift=drift,
        diffusion=diffusion,
        x0=np.array(p.initial_state),
        horizon=p.horizon,
        exact=exact,
    )
