"""Exception hierarchy.

Split by failure class: input/format problems (files, configs) versus
numerical failures (fits, phase reconstruction).  The CLI maps the former to
exit status 1 and the latter to exit status 2.
"""

from __future__ import annotations

__all__ = [
    "SqzFilterError",
    "TraceFormatError",
    "InputFormatError",
    "ConfigError",
    "LineshapeFitError",
    "PhaseReconstructionError",
]


class SqzFilterError(Exception):
    """Base class for all package-specific errors."""


class TraceFormatError(SqzFilterError):
    """A transmission trace file failed parsing or validation.

    Messages carry 1-based row numbers where applicable.
    """


class InputFormatError(SqzFilterError):
    """A spectrum, input-table, or phase-table file failed parsing."""


class ConfigError(SqzFilterError):
    """A scenario configuration is invalid (schema or semantic)."""


class LineshapeFitError(SqzFilterError):
    """The lineshape fit failed; carries the best parameters reached.

    ``params`` is the best-so-far parameter set (None when the failure
    precedes any iteration, e.g. a degenerate trace), ``residual_rms`` the
    corresponding root-mean-square residual.
    """

    def __init__(self, message, params=None, residual_rms=None):
        super().__init__(message)
        self.params = params
        self.residual_rms = residual_rms


class PhaseReconstructionError(SqzFilterError):
    """Phase reconstruction failed (bad grid or non-positive magnitude)."""
