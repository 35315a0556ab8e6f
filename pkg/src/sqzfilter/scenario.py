"""Scenario assembly: input noise, filter, LO strategy -> predicted spectra.

A scenario couples a frequency grid, an input noise model (constant or
tabulated over frequency), a filter response, and a local-oscillator
strategy.  Evaluation is a pure map over grid frequencies: build the input
covariance, propagate it through the filter's complex sideband transmission,
and read out the chosen quadrature statistic, reported in dB relative to
shot noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ConfigError
from .noise import SqueezeParams, db_to_variance
from .response import FilterResponse

__all__ = [
    "LO_STRATEGIES",
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

LO_STRATEGIES = ("fixed-angle", "track-minimum", "track-maximum", "scan")


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing positive sideband frequencies (Hz)."""

    points: tuple

    def __post_init__(self):
        pts = tuple(float(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("frequency grid must be non-empty")
        if pts[0] <= 0.0:
            raise ValueError(f"sideband frequencies must be positive, got {pts[0]}")
        for i in range(1, len(pts)):
            if not pts[i] > pts[i - 1]:
                raise ValueError(
                    f"grid must be strictly increasing; point {i} "
                    f"({pts[i]}) does not exceed point {i - 1} ({pts[i - 1]})")

    @classmethod
    def linspace(cls, start_hz: float, stop_hz: float,
                 points: int) -> "FrequencyGrid":
        if points < 2:
            raise ValueError(f"need at least 2 grid points, got {points}")
        if not 0.0 < start_hz < stop_hz:
            raise ValueError(
                f"need 0 < start < stop, got [{start_hz}, {stop_hz}]")
        return cls(tuple(np.linspace(start_hz, stop_hz, points)))

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.float64)


@dataclass(frozen=True)
class InputNoiseSpec:
    """Input noise state versus sideband frequency.

    Either a constant principal-axis description or a table of
    (frequency, v_min_db, v_max_db, angle_rad) rows interpolated linearly;
    tabulated rows must each satisfy v_min <= v_max so interpolation stays
    valid pointwise.  Tables do not extrapolate.
    """

    constant: SqueezeParams | None = None
    table_freq: tuple | None = None
    table_vmin_db: tuple | None = None
    table_vmax_db: tuple | None = None
    table_angle: tuple | None = None

    def __post_init__(self):
        if (self.constant is None) == (self.table_freq is None):
            raise ValueError("exactly one of constant/table required")
        if self.table_freq is not None:
            f = tuple(float(x) for x in self.table_freq)
            lo = tuple(float(x) for x in self.table_vmin_db)
            hi = tuple(float(x) for x in self.table_vmax_db)
            an = tuple(float(x) for x in self.table_angle)
            object.__setattr__(self, "table_freq", f)
            object.__setattr__(self, "table_vmin_db", lo)
            object.__setattr__(self, "table_vmax_db", hi)
            object.__setattr__(self, "table_angle", an)
            if not (len(f) == len(lo) == len(hi) == len(an)):
                raise ValueError("input table columns have unequal lengths")
            if len(f) < 2:
                raise ValueError("input table needs at least 2 rows")
            if any(f[i] >= f[i + 1] for i in range(len(f) - 1)):
                raise ValueError("input table frequencies must be strictly increasing")
            for i, (a, b) in enumerate(zip(lo, hi)):
                if a > b:
                    raise ValueError(
                        f"input table row {i}: v_min_db {a} exceeds v_max_db {b}")

    @classmethod
    def from_constant(cls, params: SqueezeParams) -> "InputNoiseSpec":
        return cls(constant=params)

    @classmethod
    def from_table(cls, freq, v_min_db, v_max_db, angle_rad) -> "InputNoiseSpec":
        return cls(constant=None, table_freq=tuple(freq),
                   table_vmin_db=tuple(v_min_db), table_vmax_db=tuple(v_max_db),
                   table_angle=tuple(angle_rad))

    def covers(self, omega_lo: float, omega_hi: float) -> bool:
        if self.constant is not None:
            return True
        return self.table_freq[0] <= omega_lo and omega_hi <= self.table_freq[-1]

    def arrays(self, omegas: np.ndarray) -> tuple:
        """(v_min, v_max, angle) in variance/radian units at each frequency."""
        om = np.asarray(omegas, dtype=np.float64)
        if self.constant is not None:
            p = self.constant
            return (np.full(om.shape, p.v_min), np.full(om.shape, p.v_max),
                    np.full(om.shape, p.angle))
        f = np.asarray(self.table_freq)
        if om.size and (om.min() < f[0] or om.max() > f[-1]):
            raise ConfigError(
                f"input table covers [{f[0]}, {f[-1]}] Hz but the grid "
                f"requests [{om.min()}, {om.max()}]; interpolation out of range")
        v_min = 10.0 ** (np.interp(om, f, np.asarray(self.table_vmin_db)) / 10.0)
        v_max = 10.0 ** (np.interp(om, f, np.asarray(self.table_vmax_db)) / 10.0)
        angle = np.interp(om, f, np.asarray(self.table_angle))
        return v_min, v_max, angle

    def at(self, omega: float) -> SqueezeParams:
        v_min, v_max, angle = self.arrays(np.array([float(omega)]))
        return SqueezeParams(v_min=float(v_min[0]), v_max=float(v_max[0]),
                             angle=float(angle[0]))


@dataclass(frozen=True)
class NoiseSpectrum:
    """Noise power (dB relative to shot noise) versus sideband frequency."""

    frequencies: tuple
    noise_db: tuple
    label: str = ""
    lo_strategy: str = ""
    valid: tuple | None = None  # optional per-point mask (measured overlays)

    def __post_init__(self):
        freqs = tuple(float(x) for x in self.frequencies)
        vals = tuple(float(x) for x in self.noise_db)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "noise_db", vals)
        if len(freqs) != len(vals):
            raise ValueError("frequency and noise lengths differ")
        if self.valid is not None:
            mask = tuple(bool(x) for x in self.valid)
            object.__setattr__(self, "valid", mask)
            if len(mask) != len(freqs):
                raise ValueError("validity mask length differs")
        if any(not np.isfinite(v) for v in vals):
            raise ValueError("noise values must be finite")


@dataclass(frozen=True)
class ScenarioConfig:
    """A complete, validated scenario description."""

    input: InputNoiseSpec
    filter: FilterResponse
    grid: FrequencyGrid
    lo_strategy: str
    lo_angle: float | None = None
    anchors: tuple = ()
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "anchors",
                           tuple(float(x) for x in self.anchors))
        if self.lo_strategy not in LO_STRATEGIES:
            raise ConfigError(
                f"lo.strategy must be one of {LO_STRATEGIES}, "
                f"got {self.lo_strategy!r}")
        if self.lo_strategy == "fixed-angle" and self.lo_angle is None:
            raise ConfigError("fixed-angle strategy requires lo.angle_rad")
        pts = self.grid.points
        if pts[-1] > self.filter.omega_max * (1 + 1e-12):
            raise ConfigError(
                f"filter domain [0, {self.filter.omega_max}] Hz does not "
                f"cover the grid (up to {pts[-1]} Hz)")
        if not self.input.covers(pts[0], pts[-1]):
            raise ConfigError(
                "input noise table does not cover the frequency grid")
        for a in self.anchors:
            if not pts[0] <= a <= pts[-1]:
                raise ConfigError(
                    f"anchor {a} Hz lies outside the grid "
                    f"[{pts[0]}, {pts[-1]}] Hz")


@dataclass(frozen=True)
class PredictionResult:
    """Six-curve spectrum family for one scenario."""

    predicted: NoiseSpectrum
    input_min: NoiseSpectrum
    input_max: NoiseSpectrum
    output_min: NoiseSpectrum
    output_max: NoiseSpectrum
    shot_noise: NoiseSpectrum

    def curves(self) -> dict:
        return {
            "predicted": self.predicted,
            "input_min": self.input_min,
            "input_max": self.input_max,
            "output_min": self.output_min,
            "output_max": self.output_max,
            "shot_noise": self.shot_noise,
        }


@dataclass(frozen=True)
class PhaseScanResult:
    """Noise over the (LO angle x frequency) plane plus its envelopes."""

    thetas: tuple
    frequencies: tuple
    surface_db: tuple  # row-major (theta, frequency), tuple of tuples
    envelope_min: NoiseSpectrum
    envelope_max: NoiseSpectrum

    def surface_array(self) -> np.ndarray:
        return np.asarray(self.surface_db, dtype=np.float64)


@dataclass(frozen=True)
class AngleTrackingResult:
    """Optimal LO angle profile and anchored fixed-angle spectra."""

    frequencies: tuple
    optimal_angles: tuple  # radians in [0, pi) per frequency
    tracked_min: NoiseSpectrum
    anchors: tuple
    anchor_angles: tuple
    anchor_spectra: tuple  # one NoiseSpectrum per anchor


def _propagated_arrays(config: ScenarioConfig, omegas: np.ndarray) -> tuple:
    """(v_plus, v_minus, c_cross) after the filter, plus input (v_min, v_max)."""
    v_min, v_max, angle = config.input.arrays(omegas)
    # same construction as noise.make_covariance, vectorized
    ca = np.cos(angle)
    sa = np.sin(angle)
    vp_in = v_min * ca * ca + v_max * sa * sa
    vm_in = v_min * sa * sa + v_max * ca * ca
    cc_in = (v_min - v_max) * ca * sa
    t_plus, t_minus, theta_plus, theta_minus = config.filter.arrays(omegas)
    vp, vm, cc = _kernels.propagate_arrays(
        t_plus, t_minus, theta_plus, theta_minus, vp_in, vm_in, cc_in)
    return vp, vm, cc, v_min, v_max


def _to_db(values: np.ndarray) -> np.ndarray:
    return 10.0 * np.log10(values)


def _spectrum(freqs: np.ndarray, db: np.ndarray, label: str,
              strategy: str) -> NoiseSpectrum:
    return NoiseSpectrum(frequencies=tuple(freqs), noise_db=tuple(db),
                         label=label, lo_strategy=strategy)


def predict_spectrum(config: ScenarioConfig) -> PredictionResult:
    """Predicted noise spectra for a non-scan LO strategy.

    The primary curve follows ``config.lo_strategy``; companions are the
    input and output principal-axis spectra and the shot-noise reference.
    """
    if config.lo_strategy == "scan":
        raise ConfigError(
            "predict_spectrum handles fixed-angle/track-minimum/track-maximum; "
            "use phase_scan for the scan strategy")
    omegas = config.grid.as_array()
    vp, vm, cc, v_min_in, v_max_in = _propagated_arrays(config, omegas)
    _, out_min, _, out_max = _kernels.minmax_arrays(vp, vm, cc)
    if config.lo_strategy == "track-minimum":
        primary = out_min
    elif config.lo_strategy == "track-maximum":
        primary = out_max
    else:
        theta = float(config.lo_angle)
        primary = _kernels.homodyne_surface(np.array([theta]), vp, vm, cc)[0]
    strategy = config.lo_strategy
    return PredictionResult(
        predicted=_spectrum(omegas, _to_db(primary), "predicted", strategy),
        input_min=_spectrum(omegas, _to_db(v_min_in), "input_min",
                            "track-minimum"),
        input_max=_spectrum(omegas, _to_db(v_max_in), "input_max",
                            "track-maximum"),
        output_min=_spectrum(omegas, _to_db(out_min), "output_min",
                             "track-minimum"),
        output_max=_spectrum(omegas, _to_db(out_max), "output_max",
                             "track-maximum"),
        shot_noise=_spectrum(omegas, np.zeros_like(omegas), "shot_noise",
                             strategy),
    )


def phase_scan(config: ScenarioConfig, theta_samples: int = 181) -> PhaseScanResult:
    """Noise surface over LO angles [0, pi) x the frequency grid.

    ``theta_samples`` uniform angles including 0, excluding pi.  Envelopes
    are per-frequency extremes over the sampled angles.
    """
    if config.lo_strategy != "scan":
        raise ConfigError(
            f"phase_scan requires lo.strategy 'scan', got {config.lo_strategy!r}")
    if theta_samples < 8:
        raise ConfigError(f"theta_samples must be >= 8, got {theta_samples}")
    omegas = config.grid.as_array()
    vp, vm, cc, _, _ = _propagated_arrays(config, omegas)
    thetas = np.linspace(0.0, np.pi, theta_samples, endpoint=False)
    surface = _to_db(_kernels.homodyne_surface(thetas, vp, vm, cc))
    env_min = surface.min(axis=0)
    env_max = surface.max(axis=0)
    return PhaseScanResult(
        thetas=tuple(thetas),
        frequencies=tuple(omegas),
        surface_db=tuple(tuple(row) for row in surface),
        envelope_min=_spectrum(omegas, env_min, "envelope_min", "scan"),
        envelope_max=_spectrum(omegas, env_max, "envelope_max", "scan"),
    )


def angle_tracking(config: ScenarioConfig) -> AngleTrackingResult:
    """Frequency-resolved optimal LO angle and anchored spectra.

    Requires a filter with a non-trivial phase model (with zero phases the
    ellipse never rotates and plain predict_spectrum applies).  The optimal
    angle per frequency is the minimum-noise quadrature angle in [0, pi);
    for each anchor frequency the LO is frozen at that anchor's optimal
    angle and swept across the grid.
    """
    if config.filter.phase_model == "zero-phase":
        raise ConfigError(
            "angle tracking needs a filter with a phase model; a zero-phase "
            "filter cannot rotate the noise ellipse -- use predict_spectrum")
    omegas = config.grid.as_array()
    vp, vm, cc, _, _ = _propagated_arrays(config, omegas)
    theta_min, out_min, _, _ = _kernels.minmax_arrays(vp, vm, cc)
    anchor_angles = []
    anchor_spectra = []
    for a in config.anchors:
        vp_a, vm_a, cc_a, _, _ = _propagated_arrays(config, np.array([a]))
        th_a = float(_kernels.minmax_arrays(vp_a, vm_a, cc_a)[0][0])
        anchor_angles.append(th_a)
        row = _kernels.homodyne_surface(np.array([th_a]), vp, vm, cc)[0]
        anchor_spectra.append(_spectrum(
            omegas, _to_db(row), f"anchored_at_{a:g}", "fixed-angle"))
    return AngleTrackingResult(
        frequencies=tuple(omegas),
        optimal_angles=tuple(float(x) for x in theta_min),
        tracked_min=_spectrum(omegas, _to_db(out_min), "tracked_min",
                              "track-minimum"),
        anchors=config.anchors,
        anchor_angles=tuple(anchor_angles),
        anchor_spectra=tuple(anchor_spectra),
    )
