"""Parameter landscapes and their maxima.

`sweep` rasterizes one enhancement factor over the (phi, theta0) torus at a
fixed loss.  `maximize` locates the factor's maximum with a deterministic
two-stage search: a coarse grid seed followed by compass (pattern) descent
with a shrinking step from the best few grid cells.  No randomness anywhere,
so results are reproducible bit for bit.

The landscapes are symmetric under (phi, theta0) -> (2*pi-phi, 2*pi-theta0),
so maxima come in twin pairs; candidates whose refined values agree within a
tight relative window count as ties and the lexicographically smallest
wrapped maximizer wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .metrology import METRICS

TWO_PI = 2.0 * math.pi

MAX_GRID_POINTS = 10**8

REFINE_SEEDS = 5

# Relative window within which two refined maxima are treated as equal.
# Wide enough to absorb refinement noise on the symmetric twin peak, far
# tighter than any genuinely distinct pair of local maxima.
TIE_RTOL = 1e-9


@dataclass(frozen=True)
class SweepGrid:
    """Raster of one enhancement factor over the (phi, theta0) torus."""

    phi_points: np.ndarray
    theta0_points: np.ndarray
    loss: float
    values: np.ndarray
    metric_tag: str


@dataclass(frozen=True)
class OptimumRecord:
    """Located maximum of one enhancement factor at one loss."""

    loss: float
    metric_tag: str
    lambda_max: float
    phi_star: float
    theta0_star: float
    evaluations: int


def _metric_kernel(metric_tag: str):
    try:
        return METRICS[metric_tag]
    except KeyError:
        raise ParameterError(
            f"unknown metric {metric_tag!r}; expected one of {sorted(METRICS)}"
        ) from None


def _check_loss(loss: float) -> None:
    if not 0.0 < loss <= 1.0:
        raise ParameterError(f"loss must lie in (0, 1], got {loss}")


def sweep(metric_tag: str, loss: float, n_phi: int, n_theta0: int) -> SweepGrid:
    """Evaluate a factor on an n_phi x n_theta0 grid over [0, 2*pi)^2."""
    kernel = _metric_kernel(metric_tag)
    _check_loss(loss)
    if n_phi < 2 or n_theta0 < 2:
        raise ParameterError("grid needs at least 2 points per axis")
    if n_phi * n_theta0 > MAX_GRID_POINTS:
        raise ParameterError(
            f"grid of {n_phi}x{n_theta0} exceeds {MAX_GRID_POINTS} points"
        )
    phi = np.linspace(0.0, TWO_PI, n_phi, endpoint=False)
    theta0 = np.linspace(0.0, TWO_PI, n_theta0, endpoint=False)
    values = kernel(phi[:, None], theta0[None, :], loss)
    return SweepGrid(phi_points=phi, theta0_points=theta0, loss=loss,
                     values=values, metric_tag=metric_tag)


def maximize(metric_tag: str, loss: float, grid_seed: int = 200,
             tol: float = 1e-8) -> OptimumRecord:
    """Locate the maximum of a factor over (phi, theta0) at fixed loss.

    Seeds a grid_seed x grid_seed coarse grid, then refines from the best
    REFINE_SEEDS cells by compass search: probe one step along each axis,
    move to the best strictly improving probe, halve the step otherwise,
    stop below tol.  Angles stay unwrapped during the search (the factors
    are exactly periodic) and are wrapped into [0, 2*pi) for reporting.
    """
    kernel = _metric_kernel(metric_tag)
    _check_loss(loss)
    if grid_seed < 2:
        raise ParameterError("grid_seed must be >= 2")
    if not 1e-10 <= tol <= 1e-2:
        raise ParameterError(f"tol must lie in [1e-10, 1e-2], got {tol}")

    grid = np.linspace(0.0, TWO_PI, grid_seed, endpoint=False)
    coarse = np.asarray(kernel(grid[:, None], grid[None, :], loss), dtype=float)
    evaluations = grid_seed * grid_seed
    # Non-finite cells (unreachable for loss > 0) are skipped, not refined.
    coarse = np.where(np.isfinite(coarse), coarse, -np.inf)
    # Stable row-major order makes equal cells rank lexicographically.
    seeds = np.argsort(-coarse.ravel(), kind="stable")[:REFINE_SEEDS]

    candidates = []
    step0 = TWO_PI / grid_seed
    for flat_index in seeds:
        i, j = divmod(int(flat_index), grid_seed)
        x, y = float(grid[i]), float(grid[j])
        best = float(coarse[i, j])
        step = step0
        while step >= tol:
            probes = ((x + step, y), (x - step, y), (x, y + step), (x, y - step))
            values = []
            for px, py in probes:
                value = float(kernel(px, py, loss))
                evaluations += 1
                if not math.isfinite(value):
                    value = -math.inf
                values.append(value)
            move = max(range(4), key=values.__getitem__)
            if values[move] > best:
                x, y = probes[move]
                best = values[move]
            else:
                step *= 0.5
        candidates.append((best, x % TWO_PI, y % TWO_PI))

    top = max(value for value, _, _ in candidates)
    window = TIE_RTOL * max(1.0, abs(top))
    tied = [c for c in candidates if c[0] >= top - window]
    _, phi_star, theta0_star = min(tied, key=lambda c: (c[1], c[2]))
    # Report the value at the wrapped maximizer so that re-evaluating the
    # factor there reproduces lambda_max exactly.
    lambda_max = float(kernel(phi_star, theta0_star, loss))
    evaluations += 1
    return OptimumRecord(loss=loss, metric_tag=metric_tag, lambda_max=lambda_max,
                         phi_star=phi_star, theta0_star=theta0_star,
                         evaluations=evaluations)


def loss_curve(metric_tag: str, losses, grid_seed: int = 200,
               tol: float = 1e-8) -> list[OptimumRecord]:
    """One located maximum per loss, in input order."""
    return [maximize(metric_tag, loss, grid_seed=grid_seed, tol=tol)
            for loss in losses]
