"""File interchange: CSV traces/spectra/tables and JSON configs/results.

CSV files carry a header row and optional '#'-prefixed comment lines;
frequencies are always hertz.  Numbers are written with full round-trip
precision (shortest decimal that restores the exact float), so
export-then-ingest is lossless.  Configuration documents are JSON with a
strict schema: unknown keys are rejected with path-qualified messages so a
typo in a physics parameter cannot pass silently.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import dataclass

import numpy as np
import jsonschema

from .errors import ConfigError, InputFormatError, TraceFormatError
from .fitting import FitResult
from .lineshape import LineshapeParams, TransmissionTrace, RANGE_SLACK
from .noise import SqueezeParams, db_to_variance
from .response import FilterResponse
from .scenario import (FrequencyGrid, InputNoiseSpec, NoiseSpectrum,
                       ScenarioConfig, LO_STRATEGIES)

__all__ = [
    "OutputSpec",
    "read_trace",
    "read_spectrum",
    "write_spectrum",
    "read_input_table",
    "read_phase_table",
    "write_phase_table",
    "write_surface",
    "write_fit_result",
    "read_params_json",
    "load_config",
    "CONFIG_SCHEMA",
]


def _fmt(x) -> str:
    # repr of a Python float is the shortest string that round-trips exactly
    return repr(float(x))


def _read_rows(path, columns, error_cls, optional=()):
    """Parse a headered CSV; returns (header, [(line_number, [floats])]).

    Comment lines start with '#'; blank lines are skipped.  Raises
    ``error_cls`` with 1-based file line numbers on malformed content.
    """
    rows = []
    header = None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for line_no, row in enumerate(reader, start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if row[0].lstrip().startswith("#"):
                continue
            cells = [c.strip() for c in row]
            if header is None:
                header = [c.lower() for c in cells]
                required = list(columns)
                allowed = required + list(optional)
                if header[:len(required)] != required or any(
                        c not in allowed for c in header):
                    raise error_cls(
                        f"{path}: line {line_no}: expected header "
                        f"{','.join(required)}"
                        + (f" (optional: {','.join(optional)})" if optional else "")
                        + f", got {','.join(cells)}")
                continue
            if len(cells) != len(header):
                raise error_cls(
                    f"{path}: line {line_no}: expected {len(header)} "
                    f"columns, got {len(cells)}")
            values = []
            for name, cell in zip(header, cells):
                try:
                    values.append(float(cell))
                except ValueError:
                    raise error_cls(
                        f"{path}: line {line_no}: column {name}: "
                        f"not a number: {cell!r}") from None
            rows.append((line_no, values))
    if header is None:
        raise error_cls(f"{path}: missing header row")
    return header, rows


def read_trace(path, calibration: str = "amplitude") -> TransmissionTrace:
    """Load a transmission trace CSV (columns detuning_hz, transmission).

    ``calibration='intensity'`` converts power transmission to amplitude by
    square root; the returned trace records the original calibration.
    Raises TraceFormatError with file line numbers on malformed content.
    """
    if calibration not in ("amplitude", "intensity"):
        raise TraceFormatError(
            f"calibration must be amplitude or intensity, got {calibration!r}")
    _, rows = _read_rows(path, ("detuning_hz", "transmission"),
                         TraceFormatError)
    if len(rows) < 5:
        raise TraceFormatError(
            f"{path}: trace has {len(rows)} data rows; at least 5 required")
    prev_line, prev_det = None, None
    detuning, transmission = [], []
    for line_no, (det, tra) in rows:
        if prev_det is not None and det <= prev_det:
            raise TraceFormatError(
                f"{path}: line {line_no}: detuning {det} does not exceed "
                f"the previous value {prev_det} (line {prev_line}); "
                f"detuning must be strictly increasing")
        if not (-RANGE_SLACK <= tra <= 1.0 + RANGE_SLACK):
            raise TraceFormatError(
                f"{path}: line {line_no}: transmission {tra} outside [0, 1]")
        prev_line, prev_det = line_no, det
        detuning.append(det)
        transmission.append(tra)
    if calibration == "intensity":
        transmission = [math.sqrt(max(t, 0.0)) for t in transmission]
    return TransmissionTrace(detuning=tuple(detuning),
                             transmission=tuple(transmission),
                             kind=calibration)


def read_spectrum(path):
    """Load a spectrum CSV; returns (frequency, noise_db, valid) arrays.

    Columns frequency_hz, noise_db and an optional 0/1 valid mask (default
    all valid).  Frequencies must be strictly increasing.
    """
    header, rows = _read_rows(path, ("frequency_hz", "noise_db"),
                              InputFormatError, optional=("valid",))
    has_mask = len(header) == 3
    freq, db, valid = [], [], []
    prev = None
    for line_no, values in rows:
        if prev is not None and values[0] <= prev:
            raise InputFormatError(
                f"{path}: line {line_no}: frequency {values[0]} not "
                f"strictly increasing")
        if not math.isfinite(values[1]):
            raise InputFormatError(
                f"{path}: line {line_no}: non-finite noise value")
        if has_mask and values[2] not in (0.0, 1.0):
            raise InputFormatError(
                f"{path}: line {line_no}: valid flag must be 0 or 1, "
                f"got {values[2]}")
        prev = values[0]
        freq.append(values[0])
        db.append(values[1])
        valid.append(bool(values[2]) if has_mask else True)
    return (np.array(freq), np.array(db), np.array(valid, dtype=bool))


def write_spectrum(path, spectrum: NoiseSpectrum, comments=()) -> None:
    """Write a NoiseSpectrum as CSV; the mask column appears only if set."""
    with open(path, "w", newline="") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        if spectrum.valid is None:
            writer.writerow(["frequency_hz", "noise_db"])
            for f, v in zip(spectrum.frequencies, spectrum.noise_db):
                writer.writerow([_fmt(f), _fmt(v)])
        else:
            writer.writerow(["frequency_hz", "noise_db", "valid"])
            for f, v, ok in zip(spectrum.frequencies, spectrum.noise_db,
                                spectrum.valid):
                writer.writerow([_fmt(f), _fmt(v), "1" if ok else "0"])


def read_input_table(path) -> InputNoiseSpec:
    """Load a per-frequency input noise table.

    Columns frequency_hz, v_min_db, v_max_db, angle_rad; at least 2 rows,
    strictly increasing frequency, v_min_db <= v_max_db per row.
    """
    _, rows = _read_rows(
        path, ("frequency_hz", "v_min_db", "v_max_db", "angle_rad"),
        InputFormatError)
    if len(rows) < 2:
        raise InputFormatError(f"{path}: input table needs at least 2 rows")
    freq, lo, hi, ang = [], [], [], []
    prev = None
    for line_no, (f, vmin, vmax, a) in rows:
        if prev is not None and f <= prev:
            raise InputFormatError(
                f"{path}: line {line_no}: frequency {f} not strictly increasing")
        if vmin > vmax:
            raise InputFormatError(
                f"{path}: line {line_no}: v_min_db {vmin} exceeds v_max_db {vmax}")
        prev = f
        freq.append(f)
        lo.append(vmin)
        hi.append(vmax)
        ang.append(a)
    return InputNoiseSpec.from_table(freq, lo, hi, ang)


def read_phase_table(path):
    """Load a phase table CSV (frequency_hz, theta_rad) -> two arrays."""
    _, rows = _read_rows(path, ("frequency_hz", "theta_rad"),
                         InputFormatError)
    freq, theta = [], []
    prev = None
    for line_no, (f, t) in rows:
        if prev is not None and f <= prev:
            raise InputFormatError(
                f"{path}: line {line_no}: frequency {f} not strictly increasing")
        prev = f
        freq.append(f)
        theta.append(t)
    return np.array(freq), np.array(theta)


def write_phase_table(path, frequencies, thetas, comments=()) -> None:
    with open(path, "w", newline="") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["frequency_hz", "theta_rad"])
        for f, t in zip(frequencies, thetas):
            writer.writerow([_fmt(f), _fmt(t)])


def write_surface(path, thetas, frequencies, surface_db, comments=()) -> None:
    """Write a (theta x frequency) noise surface as long-format CSV."""
    with open(path, "w", newline="") as fh:
        for line in comments:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["theta_rad", "frequency_hz", "noise_db"])
        for i, th in enumerate(thetas):
            row_vals = surface_db[i]
            for f, v in zip(frequencies, row_vals):
                writer.writerow([_fmt(th), _fmt(f), _fmt(v)])


def write_fit_result(path, result: FitResult) -> None:
    # strict JSON has no NaN literal; unestimable errors become null
    std_errors = {k: (v if math.isfinite(v) else None)
                  for k, v in result.std_errors.items()}
    doc = {
        "params": result.params.as_dict(),
        "diagnostics": {
            "residual_rms": result.residual_rms,
            "iterations": result.iterations,
            "converged": result.converged,
            "std_errors": std_errors,
        },
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


_PARAM_KEYS = ("a_sym", "b_asym", "c_bg", "gamma_hz", "delta0_hz")


def read_params_json(path) -> LineshapeParams:
    """Load window parameters from JSON.

    Accepts either a flat object with keys a_sym, b_asym, c_bg, gamma_hz,
    delta0_hz (b_asym/delta0_hz optional) or a fit-result document wrapping
    them under "params".
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(doc, dict) and isinstance(doc.get("params"), dict):
        doc = doc["params"]
    if not isinstance(doc, dict):
        raise InputFormatError(f"{path}: expected a JSON object")
    unknown = set(doc) - set(_PARAM_KEYS)
    if unknown:
        raise InputFormatError(
            f"{path}: unknown parameter keys: {sorted(unknown)}")
    missing = {"a_sym", "c_bg", "gamma_hz"} - set(doc)
    if missing:
        raise InputFormatError(f"{path}: missing keys: {sorted(missing)}")
    for key, value in doc.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InputFormatError(f"{path}: {key}: expected a number")
    try:
        return LineshapeParams(
            a_sym=float(doc["a_sym"]), b_asym=float(doc.get("b_asym", 0.0)),
            c_bg=float(doc["c_bg"]), gamma=float(doc["gamma_hz"]),
            delta0=float(doc.get("delta0_hz", 0.0)))
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["input", "filter", "grid", "lo"],
    "properties": {
        "input": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["v_min_db", "v_max_db"],
                    "properties": {
                        "v_min_db": {"type": "number"},
                        "v_max_db": {"type": "number"},
                        "angle_rad": {"type": "number"},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["table"],
                    "properties": {"table": {"type": "string"}},
                },
            ]
        },
        "filter": {
            "oneOf": [
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["a_sym", "c_bg", "gamma_hz"],
                    "properties": {
                        "a_sym": {"type": "number"},
                        "b_asym": {"type": "number"},
                        "c_bg": {"type": "number"},
                        "gamma_hz": {"type": "number", "exclusiveMinimum": 0},
                        "delta0_hz": {"type": "number"},
                        "phase_model": {
                            "enum": ["zero-phase", "minimum-phase"]},
                    },
                },
                {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["trace"],
                    "properties": {
                        "trace": {"type": "string"},
                        "calibration": {"enum": ["amplitude", "intensity"]},
                        "phase_model": {
                            "enum": ["zero-phase", "minimum-phase"]},
                    },
                },
            ]
        },
        "grid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["start_hz", "stop_hz", "points"],
            "properties": {
                "start_hz": {"type": "number", "exclusiveMinimum": 0},
                "stop_hz": {"type": "number", "exclusiveMinimum": 0},
                "points": {"type": "integer", "minimum": 2},
            },
        },
        "lo": {
            "type": "object",
            "additionalProperties": False,
            "required": ["strategy"],
            "properties": {
                "strategy": {"enum": list(LO_STRATEGIES)},
                "angle_rad": {"type": "number"},
                "anchors_hz": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 1,
                },
            },
        },
        "output": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "directory": {"type": "string"},
                "prefix": {"type": "string"},
            },
        },
        "metadata": {"type": "object"},
    },
}


@dataclass(frozen=True)
class OutputSpec:
    """Where a command writes its files: directory plus filename prefix."""

    directory: str = "."
    prefix: str = ""


def _schema_check(doc, path) -> None:
    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = list(validator.iter_errors(doc))
    if errors:
        best = jsonschema.exceptions.best_match(errors)
        where = ".".join(str(p) for p in best.absolute_path) or "<root>"
        raise ConfigError(f"{path}: {where}: {best.message}")


def load_config(path):
    """Parse and validate a scenario configuration.

    Returns (ScenarioConfig, OutputSpec).  Input file references (trace,
    table) resolve relative to the config file's directory; the output
    directory resolves relative to the working directory.
    """
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    _schema_check(doc, path)
    base = os.path.dirname(os.path.abspath(path))

    def resolve(p):
        return p if os.path.isabs(p) else os.path.join(base, p)

    g = doc["grid"]
    try:
        grid = FrequencyGrid.linspace(g["start_hz"], g["stop_hz"], g["points"])
    except ValueError as exc:
        raise ConfigError(f"{path}: grid: {exc}") from exc

    inp = doc["input"]
    if "table" in inp:
        input_spec = read_input_table(resolve(inp["table"]))
    else:
        if inp["v_min_db"] > inp["v_max_db"]:
            raise ConfigError(
                f"{path}: input: v_min_db {inp['v_min_db']} exceeds "
                f"v_max_db {inp['v_max_db']}")
        input_spec = InputNoiseSpec.from_constant(SqueezeParams(
            v_min=db_to_variance(inp["v_min_db"]),
            v_max=db_to_variance(inp["v_max_db"]),
            angle=inp.get("angle_rad", 0.0)))

    filt = doc["filter"]
    phase_model = filt.get("phase_model", "zero-phase")
    try:
        if "trace" in filt:
            trace = read_trace(resolve(filt["trace"]),
                               filt.get("calibration", "amplitude"))
            response = FilterResponse.from_table(
                trace.detuning, trace.transmission, phase_model)
        else:
            params = LineshapeParams(
                a_sym=filt["a_sym"], b_asym=filt.get("b_asym", 0.0),
                c_bg=filt["c_bg"], gamma=filt["gamma_hz"],
                delta0=filt.get("delta0_hz", 0.0))
            response = FilterResponse.from_lineshape(
                params, phase_model, omega_max=grid.points[-1])
    except ValueError as exc:
        raise ConfigError(f"{path}: filter: {exc}") from exc

    lo = doc["lo"]
    config = ScenarioConfig(
        input=input_spec,
        filter=response,
        grid=grid,
        lo_strategy=lo["strategy"],
        lo_angle=lo.get("angle_rad"),
        anchors=tuple(lo.get("anchors_hz", ())),
        metadata=doc.get("metadata", {}),
    )
    out = doc.get("output", {})
    return config, OutputSpec(directory=out.get("directory", "."),
                              prefix=out.get("prefix", ""))
