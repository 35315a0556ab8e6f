"""Squeezed-vacuum noise propagation through frequency-dependent filters.

The package models Gaussian sideband quadrature noise as 2x2 covariances
(shot noise = 1), propagates it through the complex sideband transmission of
a passive filter (attenuation, quadrature mixing, ellipse rotation), fits
the empirical transmission window of such filters to measured traces,
completes measured magnitudes with a causal (minimum-phase) profile, and
assembles these into predicted homodyne noise spectra with CSV/JSON
interchange and a command-line interface.
"""

from ._kernels import get_backend
from .errors import (ConfigError, InputFormatError, LineshapeFitError,
                     PhaseReconstructionError, SqzFilterError,
                     TraceFormatError)
from .noise import (PHYSICALITY_TOL, QuadratureCovariance,
                    QuadratureExtremes, SidebandTransmission, SqueezeParams,
                    apply_rotation, db_to_variance, homodyne_variance,
                    make_covariance, min_max_quadratures, propagate,
                    propagate_diagonal, rotation_angle, variance_to_db)
from .lineshape import (LineshapeParams, TransmissionTrace, eval_lineshape,
                        lineshape_extremes, sideband_pair, validate_bounds)
from .fitting import FitResult, fit_lineshape, initial_guess
from .minphase import hilbert_transform, minimum_phase
from .response import FilterResponse, make_filter_response
from .scenario import (AngleTrackingResult, FrequencyGrid, InputNoiseSpec,
                       NoiseSpectrum, PhaseScanResult, PredictionResult,
                       ScenarioConfig, angle_tracking, phase_scan,
                       predict_spectrum)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "get_backend",
    "PHYSICALITY_TOL",
    "SqzFilterError",
    "TraceFormatError",
    "InputFormatError",
    "ConfigError",
    "LineshapeFitError",
    "PhaseReconstructionError",
    "QuadratureCovariance",
    "QuadratureExtremes",
    "SqueezeParams",
    "SidebandTransmission",
    "make_covariance",
    "propagate_diagonal",
    "propagate",
    "rotation_angle",
    "apply_rotation",
    "homodyne_variance",
    "min_max_quadratures",
    "variance_to_db",
    "db_to_variance",
    "LineshapeParams",
    "TransmissionTrace",
    "eval_lineshape",
    "sideband_pair",
    "lineshape_extremes",
    "validate_bounds",
    "FitResult",
    "fit_lineshape",
    "initial_guess",
    "minimum_phase",
    "hilbert_transform",
    "FilterResponse",
    "make_filter_response",
    "FrequencyGrid",
    "InputNoiseSpec",
    "NoiseSpectrum",
    "ScenarioConfig",
    "PredictionResult",
    "PhaseScanResult",
    "AngleTrackingResult",
    "predict_spectrum",
    "phase_scan",
    "angle_tracking",
]
