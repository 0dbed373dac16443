"""Cross-route verification suites.

Every quantity in this package has two independent computation routes:
summed closed forms versus the iterated recycling cascade for the loop
coefficients, and closed trigonometric forms versus finite differences for
the enhancement factors.  The checks here drive both routes over seeded
pseudo-random points and regular grids and report the worst deviation of
each pair, together with the tolerance it must stay under.  The command
line `verify` subcommand prints these results and gates its exit code on
them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .loop import closed_form_coefficients, iterate_series, stages_for_tolerance, upsilon_xi
from .metrology import lambda1_values, lambda2_values, lambda3_values
from .optics import LoopParameters

DEFAULT_LOSSES = (0.05, 0.10, 0.15, 0.20, 0.5, 0.9)
DEFAULT_POINTS = 1000
DEFAULT_SEED = 0
DEFAULT_GRID = 50
DEFAULT_STEP = 1e-6
DERIVATIVE_LOSSES = (0.05, 0.10, 0.15, 0.20)
STAGE_TOL = 1e-14

ORACLE_TOL = 1e-10
NORMALIZATION_TOL = 1e-12
ENERGY_TOL = 1e-12
DERIVATIVE_RTOL = 1e-6
PHOTON_SUM_RTOL = 1e-12
SMALL_VALUE_FLOOR = 1e-3


@dataclass(frozen=True)
class CheckResult:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation < self.tolerance


def sample_points(points: int = DEFAULT_POINTS, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Seeded pseudo-random (phi, theta0) pairs, uniform over [0, 2*pi)^2."""
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 2.0 * np.pi, size=(points, 2))


def oracle_equivalence(points: np.ndarray, losses=DEFAULT_LOSSES,
                       stages: int | None = None,
                       stage_tol: float = STAGE_TOL) -> CheckResult:
    """Iterated cascade versus summed closed form.

    With stages=None each point iterates until its loop-ratio power drops
    under stage_tol; a fixed stage count can be forced to demonstrate how a
    truncated cascade falls short of the steady state.
    """
    worst = 0.0
    for loss in losses:
        for phi, theta0 in points:
            params = LoopParameters(phi=float(phi), theta0=float(theta0), loss=float(loss))
            m = stages if stages is not None else stages_for_tolerance(params, stage_tol)
            iterated = iterate_series(params, m)
            closed = closed_form_coefficients(params)
            worst = max(
                worst,
                abs(iterated.upsilon - closed.upsilon),
                abs(iterated.xi - closed.xi),
                abs(abs(iterated.vac_a) - abs(closed.vac_a)),
                abs(abs(iterated.vac_b) - abs(closed.vac_b)),
            )
    return CheckResult("oracle equivalence (cascade vs closed form)", worst, ORACLE_TOL)


def output_normalization(points: np.ndarray, losses=DEFAULT_LOSSES) -> CheckResult:
    """|upsilon|**2 + |vac_a|**2 = 1: the monitored output is a free mode.

    This sum rule is what pins the quadrature variance of the output to
    exactly one, so it doubles as the noise check for homodyne detection.
    """
    worst = 0.0
    for loss in losses:
        for phi, theta0 in points:
            params = LoopParameters(phi=float(phi), theta0=float(theta0), loss=float(loss))
            coef = closed_form_coefficients(params)
            dev = abs(abs(coef.upsilon) ** 2 + abs(coef.vac_a) ** 2 - 1.0)
            worst = max(worst, dev)
    return CheckResult("output-mode normalization", worst, NORMALIZATION_TOL)


def energy_balance(points: np.ndarray, losses=DEFAULT_LOSSES) -> CheckResult:
    """|upsilon|**2 + loss*|xi|**2 = 1: photons exit at a or are absorbed."""
    worst = 0.0
    for loss in losses:
        for phi, theta0 in points:
            params = LoopParameters(phi=float(phi), theta0=float(theta0), loss=float(loss))
            coef = closed_form_coefficients(params)
            dev = abs(abs(coef.upsilon) ** 2 + loss * abs(coef.xi) ** 2 - 1.0)
            worst = max(worst, dev)
    return CheckResult("energy balance", worst, ENERGY_TOL)


def _derivative_grid(grid_n: int):
    axis = np.linspace(0.0, 2.0 * np.pi, grid_n, endpoint=False)
    return axis[:, None], axis[None, :]


def hd_factor_vs_derivative(grid_n: int = DEFAULT_GRID, losses=DERIVATIVE_LOSSES,
                            step: float = DEFAULT_STEP) -> CheckResult:
    """Closed homodyne factor versus finite-difference error propagation.

    Points where the factor is below SMALL_VALUE_FLOOR are excluded: near
    signal nulls the relative comparison measures only cancellation noise.
    """
    phi, theta0 = _derivative_grid(grid_n)
    worst = 0.0
    for loss in losses:
        closed = lambda1_values(phi, theta0, loss)
        upper, _ = upsilon_xi(phi + step, theta0, loss)
        lower, _ = upsilon_xi(phi - step, theta0, loss)
        numeric = np.abs((upper - lower).real) / step
        mask = closed >= SMALL_VALUE_FLOOR
        rel = np.abs(numeric[mask] - closed[mask]) / closed[mask]
        worst = max(worst, float(rel.max()))
    return CheckResult("homodyne factor vs finite difference", worst, DERIVATIVE_RTOL)


def qcrb_factor_vs_derivative(grid_n: int = DEFAULT_GRID, losses=DERIVATIVE_LOSSES,
                              step: float = DEFAULT_STEP) -> CheckResult:
    """Closed bound factor versus twice the modulus of the coefficient slope."""
    phi, theta0 = _derivative_grid(grid_n)
    worst = 0.0
    for loss in losses:
        closed = lambda2_values(phi, theta0, loss)
        upper, _ = upsilon_xi(phi + step, theta0, loss)
        lower, _ = upsilon_xi(phi - step, theta0, loss)
        numeric = np.abs(upper - lower) / step
        mask = closed >= SMALL_VALUE_FLOOR
        rel = np.abs(numeric[mask] - closed[mask]) / closed[mask]
        worst = max(worst, float(rel.max()))
    return CheckResult("qcrb factor vs finite difference", worst, DERIVATIVE_RTOL)


def photon_factor_consistency(points: np.ndarray, losses=DEFAULT_LOSSES) -> CheckResult:
    """Closed photon factor versus |upsilon|**2 + |xi|**2, relative."""
    phi = points[:, 0]
    theta0 = points[:, 1]
    worst = 0.0
    for loss in losses:
        upsilon, xi = upsilon_xi(phi, theta0, float(loss))
        assembled = np.abs(upsilon) ** 2 + np.abs(xi) ** 2
        closed = lambda3_values(phi, theta0, float(loss))
        rel = np.abs(closed - assembled) / np.maximum(1.0, assembled)
        worst = max(worst, float(rel.max()))
    return CheckResult("photon factor vs coefficient sum", worst, PHOTON_SUM_RTOL)


def run_all(points: int = DEFAULT_POINTS, seed: int = DEFAULT_SEED,
            losses=DEFAULT_LOSSES, stages: int | None = None,
            grid_n: int = DEFAULT_GRID, step: float = DEFAULT_STEP) -> list[CheckResult]:
    """Run every suite and return the individual results."""
    pts = sample_points(points, seed)
    # The finite-difference comparisons need loss > 0 to stay clear of the
    # lossless resonance; fall back to the stock losses otherwise.
    derivative_losses = tuple(l for l in losses if l > 0.0) or DERIVATIVE_LOSSES
    return [
        oracle_equivalence(pts, losses, stages=stages),
        output_normalization(pts, losses),
        energy_balance(pts, losses),
        hd_factor_vs_derivative(grid_n, derivative_losses, step),
        qcrb_factor_vs_derivative(grid_n, derivative_losses, step),
        photon_factor_consistency(pts, losses),
    ]
