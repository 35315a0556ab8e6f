"""Command-line interface.

Subcommands: ``fit`` (window parameters from a trace), ``predict`` (spectrum
family for a scenario), ``phase-scan`` (LO-angle x frequency surface),
``angle-track`` (optimal-angle profile plus anchored spectra), ``kk``
(causal phase reconstruction of a trace).

Exit status: 0 success; 1 input/parse problems (files, configs); 2 numerical
failures (fit non-convergence, phase reconstruction).  ``--json-errors``
emits a machine-readable error object on stderr instead of prose.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from . import io
from .errors import (ConfigError, InputFormatError, LineshapeFitError,
                     PhaseReconstructionError, TraceFormatError)
from .fitting import fit_lineshape
from .minphase import minimum_phase
from .scenario import angle_tracking, phase_scan, predict_spectrum

__all__ = ["main", "run_command"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


def _mhz(hz: float) -> str:
    return f"{hz / 1e6:.6g} MHz"


def _info(args, message: str) -> None:
    if not args.quiet:
        print(message)


def _out_path(out_spec, name: str) -> str:
    os.makedirs(out_spec.directory, exist_ok=True)
    return os.path.join(out_spec.directory, f"{out_spec.prefix}{name}")


def _cmd_fit(args) -> None:
    trace = io.read_trace(args.trace, calibration=args.calibration)
    init = io.read_params_json(args.init) if args.init else None
    result = fit_lineshape(trace, init)
    io.write_fit_result(args.out, result)
    p = result.params
    _info(args, f"fit converged after {result.iterations} iterations; "
                f"residual RMS {result.residual_rms:.3e}")
    _info(args, f"window: peak {p.a_sym + p.c_bg:.4f}, background "
                f"{p.c_bg:.4f}, half width {_mhz(p.gamma)}, center offset "
                f"{_mhz(p.delta0)}")
    _info(args, f"wrote {args.out}")


def _cmd_predict(args) -> None:
    config, out_spec = io.load_config(args.config)
    result = predict_spectrum(config)
    pts = config.grid.points
    _info(args, f"grid {_mhz(pts[0])} to {_mhz(pts[-1])}, {len(pts)} points; "
                f"strategy {config.lo_strategy}")
    for name, spectrum in result.curves().items():
        path = _out_path(out_spec, f"{name}.csv")
        io.write_spectrum(path, spectrum)
        _info(args, f"wrote {path}")


def _cmd_phase_scan(args) -> None:
    config, out_spec = io.load_config(args.config)
    result = phase_scan(config, theta_samples=args.theta_samples)
    _info(args, f"scanned {len(result.thetas)} LO angles over "
                f"{len(result.frequencies)} frequencies")
    path = _out_path(out_spec, "surface.csv")
    io.write_surface(path, result.thetas, result.frequencies,
                     result.surface_db)
    _info(args, f"wrote {path}")
    for name, spectrum in (("envelope_min.csv", result.envelope_min),
                           ("envelope_max.csv", result.envelope_max)):
        path = _out_path(out_spec, name)
        io.write_spectrum(path, spectrum)
        _info(args, f"wrote {path}")


def _cmd_angle_track(args) -> None:
    config, out_spec = io.load_config(args.config)
    result = angle_tracking(config)
    path = _out_path(out_spec, "angle_profile.csv")
    io.write_phase_table(path, result.frequencies, result.optimal_angles,
                         comments=("optimal (minimum-noise) LO angle per "
                                   "sideband frequency",))
    _info(args, f"wrote {path}")
    path = _out_path(out_spec, "tracked_min.csv")
    io.write_spectrum(path, result.tracked_min)
    _info(args, f"wrote {path}")
    for i, (anchor, angle, spectrum) in enumerate(
            zip(result.anchors, result.anchor_angles, result.anchor_spectra),
            start=1):
        path = _out_path(out_spec, f"anchor_{i}.csv")
        io.write_spectrum(path, spectrum, comments=(
            f"anchor_hz = {io._fmt(anchor)}",
            f"lo_angle_rad = {io._fmt(angle)}",
        ))
        _info(args, f"wrote {path} (anchor {_mhz(anchor)}, "
                    f"LO angle {angle:.4f} rad)")


def _cmd_kk(args) -> None:
    trace = io.read_trace(args.trace, calibration=args.calibration)
    detuning = np.asarray(trace.detuning)
    theta = minimum_phase(detuning, np.asarray(trace.transmission))
    io.write_phase_table(args.out, trace.detuning, theta, comments=(
        "causal (minimum-phase) completion of the trace magnitude",))
    _info(args, f"reconstructed phase on {detuning.size} points over "
                f"{_mhz(detuning[0])} to {_mhz(detuning[-1])}")
    _info(args, f"wrote {args.out}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqzfilter",
        description="Squeezed-noise propagation through frequency-dependent "
                    "transmission filters: lineshape fitting, phase "
                    "reconstruction, and spectrum prediction.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for synthetic-noise reproducibility "
                             "(reserved; current commands are deterministic)")
    parser.add_argument("--quiet", action="store_true",
                        help="suppress informational output")
    parser.add_argument("--json-errors", action="store_true",
                        help="emit machine-readable error JSON on stderr")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")

    p = sub.add_parser("fit", help="fit window parameters to a trace CSV")
    p.add_argument("--trace", required=True, help="trace CSV path")
    p.add_argument("--init", default=None,
                   help="optional JSON with starting parameters")
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--calibration", choices=("amplitude", "intensity"),
                   default="amplitude",
                   help="trace calibration (intensity is converted by "
                        "square root)")
    p.set_defaults(handler=_cmd_fit)

    p = sub.add_parser("predict",
                       help="predict the six-curve spectrum family")
    p.add_argument("--config", required=True, help="scenario config JSON")
    p.set_defaults(handler=_cmd_predict)

    p = sub.add_parser("phase-scan",
                       help="noise surface over LO angle and frequency")
    p.add_argument("--config", required=True, help="scenario config JSON")
    p.add_argument("--theta-samples", type=int, default=181,
                   help="number of LO angles in [0, pi) (default 181)")
    p.set_defaults(handler=_cmd_phase_scan)

    p = sub.add_parser("angle-track",
                       help="optimal LO angle profile and anchored spectra")
    p.add_argument("--config", required=True, help="scenario config JSON")
    p.set_defaults(handler=_cmd_angle_track)

    p = sub.add_parser("kk",
                       help="reconstruct the causal phase of a trace")
    p.add_argument("--trace", required=True, help="trace CSV path")
    p.add_argument("--out", required=True, help="output phase-table CSV")
    p.add_argument("--calibration", choices=("amplitude", "intensity"),
                   default="amplitude")
    p.set_defaults(handler=_cmd_kk)
    return parser


def _report_error(args, exc) -> None:
    if getattr(args, "json_errors", False):
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, LineshapeFitError):
            if exc.params is not None:
                payload["best_params"] = exc.params.as_dict()
            if exc.residual_rms is not None:
                payload["residual_rms"] = exc.residual_rms
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    else:
        print(f"sqzfilter: error: {exc}", file=sys.stderr)


def run_command(argv=None) -> int:
    """Run one CLI invocation; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help/--version exit 0, usage errors 2
        return 0 if exc.code is None else int(exc.code)
    try:
        args.handler(args)
        return EXIT_OK
    except (LineshapeFitError, PhaseReconstructionError) as exc:
        _report_error(args, exc)
        return EXIT_NUMERIC
    except (TraceFormatError, InputFormatError, ConfigError, OSError) as exc:
        _report_error(args, exc)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
