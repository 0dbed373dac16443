"""Coherent-state Mach-Zehnder interferometer with a lossy photon-recycling
loop: steady-state scattering coefficients, homodyne phase sensitivity, the
quantum Cramer-Rao bound, the intracavity photon budget, and parameter
landscapes with deterministic maximization.
"""

from .errors import (
    ConvergenceError,
    ModelError,
    ParameterError,
    ResonantPoleError,
    ZeroInformationError,
)
from .landscape import OptimumRecord, SweepGrid, loss_curve, maximize, sweep
from .loop import (
    RecycledCoefficients,
    closed_form_coefficients,
    iterate_series,
    loop_ratio,
    stages_for_tolerance,
    upsilon_xi,
)
from .metrology import (
    GaussianMoments,
    MeritReport,
    homodyne_moments,
    lambda1,
    lambda1_numeric,
    lambda1_values,
    lambda2,
    lambda2_values,
    lambda3,
    lambda3_values,
    merit_report,
    photon_numbers,
    qcrb_general,
)
from .optics import (
    ComplexCoefficient2x2,
    LoopParameters,
    beam_splitter_matrix,
    compose_mzi,
    loss_transform,
    mzi_entries,
    phase_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "ComplexCoefficient2x2",
    "ConvergenceError",
    "GaussianMoments",
    "LoopParameters",
    "MeritReport",
    "ModelError",
    "OptimumRecord",
    "ParameterError",
    "RecycledCoefficients",
    "ResonantPoleError",
    "SweepGrid",
    "ZeroInformationError",
    "beam_splitter_matrix",
    "closed_form_coefficients",
    "compose_mzi",
    "homodyne_moments",
    "iterate_series",
    "lambda1",
    "lambda1_numeric",
    "lambda1_values",
    "lambda2",
    "lambda2_values",
    "lambda3",
    "lambda3_values",
    "loop_ratio",
    "loss_curve",
    "loss_transform",
    "maximize",
    "merit_report",
    "mzi_entries",
    "phase_matrix",
    "photon_numbers",
    "qcrb_general",
    "stages_for_tolerance",
    "sweep",
    "upsilon_xi",
]
