"""Steady state of the interferometer with its second output fed back into
its second input through a phase shift theta0 and a power loss L.

Closing the loop sums a geometric series in the loop ratio

    gamma = sqrt(1-L) * exp(-i*theta0) * s22,   |gamma| = sqrt(1-L)*|sin(phi/2)|,

which contracts whenever L > 0.  `closed_form_coefficients` evaluates the
summed series directly; `iterate_series` rebuilds the same coefficients by
stepping through the equivalent cascade of single interferometers, one
recycling pass per stage, and serves as an independent numerical oracle.

Vacuum bookkeeping: the cascade feeds vacuum into the first stage's unused
port and through every loss splitter.  Vacuum modes are phase-insensitive
and enter every first or second moment only through the sum of squared
coefficient magnitudes, so each output carries a single aggregate vacuum
coefficient; `iterate_series` reports it with zero phase, and comparisons
against the closed form are meaningful for its magnitude only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, ParameterError, ResonantPoleError
from .optics import LoopParameters, mzi_entries

# Below this loop-denominator magnitude the steady state is numerically
# meaningless; reachable only at L = 0 with phi = pi, theta0 = 0 (mod 2*pi).
POLE_THRESHOLD = 1e-9

STAGE_CAP = 10**6


@dataclass(frozen=True)
class RecycledCoefficients:
    """Linear input-output coefficients of the recycled interferometer.

    upsilon and xi map the coherent input onto the monitored output a and
    the recirculated output b; vac_a and vac_b are the aggregate vacuum
    coefficients of the same outputs.  |upsilon|**2 + |vac_a|**2 = 1 (output
    a is a proper free mode) and |upsilon|**2 + loss*|xi|**2 = 1 (every
    input photon either exits at a or is absorbed on the recycling arm).
    The circulating output b is not a free mode, so no such sum rule
    constrains xi and vac_b; |xi| may exceed 1 when the loop resonates.
    """

    upsilon: complex
    vac_a: complex
    xi: complex
    vac_b: complex


def loop_ratio(phi, theta0, loss):
    """Per-pass amplitude ratio gamma of the recycling loop (broadcasts)."""
    s22 = mzi_entries(phi)[3]
    return np.sqrt(1.0 - np.asarray(loss)) * np.exp(-1j * np.asarray(theta0)) * s22


def check_off_resonance(params: LoopParameters,
                        threshold: float = POLE_THRESHOLD) -> complex:
    """Return 1 - gamma, raising if the loop is at its lossless resonance.

    Callers whose arithmetic degrades earlier than the coefficient formulas
    (the trigonometric merit kernels square this denominator) pass a wider
    threshold.
    """
    gamma = complex(loop_ratio(params.phi, params.theta0, params.loss))
    denom = 1.0 - gamma
    if abs(denom) < threshold:
        raise ResonantPoleError(
            "lossless loop resonance: no steady state at "
            f"phi={params.phi}, theta0={params.theta0}, loss={params.loss}"
        )
    return denom


def closed_form_coefficients(params: LoopParameters) -> RecycledCoefficients:
    """Steady-state coefficients from the summed geometric series.

    Assembled from the scattering-matrix entries; the equivalent rational
    one-liners live in `upsilon_xi` and the cascade route in
    `iterate_series`, and all three agree to rounding.
    """
    denom = check_off_resonance(params)
    s11, s12, s21, s22 = (complex(s) for s in mzi_entries(params.phi))
    trans = math.sqrt(1.0 - params.loss)
    rot = cmath.exp(-1j * params.theta0)
    feedback = trans * rot / denom
    return RecycledCoefficients(
        upsilon=s11 + s12 * s21 * feedback,
        vac_a=s12 * math.sqrt(params.loss) / denom,
        xi=s21 / denom,
        vac_b=s22 * math.sqrt(params.loss) / denom,
    )


def upsilon_xi(phi, theta0, loss):
    """Vectorized rational forms of the two input coefficients.

    upsilon = (exp(i*theta0)(1 - exp(i*phi)) - 2 sqrt(1-L))
              / (2 exp(i(phi+theta0)) + sqrt(1-L)(1 - exp(i*phi)))
    xi      = i exp(i*theta0)(1 + exp(i*phi)) / (same denominator)

    No resonance guard: intended for grids with loss > 0, where the
    denominator is bounded away from zero.
    """
    trans = np.sqrt(1.0 - np.asarray(loss))
    e0 = np.exp(1j * np.asarray(theta0))
    ep = np.exp(1j * np.asarray(phi))
    denom = 2.0 * ep * e0 + trans * (1.0 - ep)
    upsilon = (e0 * (1.0 - ep) - 2.0 * trans) / denom
    xi = 1j * e0 * (1.0 + ep) / denom
    return upsilon, xi


def iterate_series(params: LoopParameters, stages: int) -> RecycledCoefficients:
    """Coefficients after a finite number of recycling passes.

    Steps the cascade recursion: the second input of stage k+1 is the
    second output of stage k, attenuated by sqrt(1-L) and rotated by
    exp(-i*theta0), plus sqrt(L) of fresh vacuum.  Converges to
    `closed_form_coefficients` at the geometric rate |gamma|.  stages=1 is
    the conventional interferometer with no recycling.
    """
    if stages < 1:
        raise ParameterError(f"stages must be >= 1, got {stages}")
    s11, s12, s21, s22 = (complex(s) for s in mzi_entries(params.phi))
    trans = math.sqrt(1.0 - params.loss)
    rot = cmath.exp(-1j * params.theta0)
    gamma = trans * rot * s22
    drive = trans * rot * s21
    sqrt_loss = math.sqrt(params.loss)

    # Coefficients of the stage input port b: on the coherent input, on the
    # first stage's vacuum port, and on the loss-channel vacuum.
    coef_in = 0j
    coef_seed = 1 + 0j
    coef_vac = 0j
    for _ in range(stages - 1):
        coef_in = gamma * coef_in + drive
        coef_seed = gamma * coef_seed
        coef_vac = gamma * coef_vac + sqrt_loss

    return RecycledCoefficients(
        upsilon=s11 + s12 * coef_in,
        vac_a=complex(math.hypot(abs(s12 * coef_seed), abs(s12 * coef_vac))),
        xi=s21 + s22 * coef_in,
        vac_b=complex(math.hypot(abs(s22 * coef_seed), abs(s22 * coef_vac))),
    )


def stages_for_tolerance(params: LoopParameters, tol: float) -> int:
    """Smallest stage count m with |gamma|**m < tol, capped at STAGE_CAP."""
    if not tol > 0.0:
        raise ParameterError(f"tol must be > 0, got {tol}")
    gmag = abs(loop_ratio(params.phi, params.theta0, params.loss))
    if gmag == 0.0:
        return 1
    if gmag >= 1.0:
        raise ConvergenceError(
            f"loop ratio magnitude {gmag} >= 1: the series does not contract"
        )
    if gmag < tol:
        return 1
    # Log estimate, then correct for rounding at the boundary.
    m = max(1, math.ceil(math.log(tol) / math.log(gmag)))
    while gmag**m >= tol and m < STAGE_CAP:
        m += 1
    while m > 1 and gmag ** (m - 1) < tol:
        m -= 1
    return min(m, STAGE_CAP)
