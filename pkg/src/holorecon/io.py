"""Text file formats: HOLOGRID1 grids, scenario configs, sweep CSV, PGM export.

HOLOGRID1 layout::

    HOLOGRID1 <real|complex> <nx> <ny> <pitch_m> <wavelength_m> <medium_index>
    <ny lines of nx values; complex values are written re,im>

Floats are written in their shortest round-trip form, so
``read_grid(write_grid(g))`` is bit-exact.
"""

from __future__ import annotations

import csv
import io as _io
import math
import re
from pathlib import Path

import numpy as np

from holorecon.exceptions import GridParseError, ScenarioParseError
from holorecon.grid import ComplexField, ScalarGrid
from holorecon.propagation import EvanescentPolicy, KernelMode, KernelVariant
from holorecon.simulate import DetectorSpec, ForwardModel, Scenario, SphereSpec

MAGIC = "HOLOGRID1"
_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?\Z")
_INT = re.compile(r"[+-]?\d+\Z")


def format_float(x) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _parse_float(tok, line, what="value"):
    if not _NUMBER.match(tok):
        raise GridParseError(f"invalid {what} {tok!r}", line)
    value = float(tok)
    if not math.isfinite(value):
        raise GridParseError(f"non-finite {what} {tok!r}", line)
    return value


# -- grids -------------------------------------------------------------------

def format_grid(grid, wavelength=None, medium_index=None) -> str:
    if isinstance(grid, ComplexField):
        kind = "complex"
    elif isinstance(grid, ScalarGrid):
        kind = "real"
    else:
        raise TypeError(f"expected ScalarGrid or ComplexField, got {type(grid).__name__}")
    wavelength = grid.wavelength if wavelength is None else wavelength
    if wavelength is None:
        raise ValueError("grid has no wavelength; pass one explicitly")
    medium_index = grid.medium_index if medium_index is None else medium_index
    if not np.all(np.isfinite(grid.data)):
        raise ValueError("grid contains non-finite values")
    header = " ".join([MAGIC, kind, str(grid.nx), str(grid.ny), format_float(grid.pitch),
                       format_float(wavelength), format_float(medium_index)])
    lines = [header]
    if kind == "real":
        for row in grid.data:
            lines.append(" ".join(format_float(v) for v in row))
    else:
        for row in grid.data:
            lines.append(" ".join(f"{format_float(v.real)},{format_float(v.imag)}" for v in row))
    return "\n".join(lines) + "\n"


def parse_grid(text: str):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GridParseError("empty file", 1)
    head = lines[0].split()
    if not head or head[0] != MAGIC:
        raise GridParseError(f"expected magic {MAGIC!r}", 1)
    if len(head) != 7:
        raise GridParseError(f"header needs 7 fields, got {len(head)}", 1)
    kind = head[1]
    if kind not in ("real", "complex"):
        raise GridParseError(f"unknown kind {kind!r}", 1)
    if not (_INT.match(head[2]) and _INT.match(head[3])):
        raise GridParseError("grid dimensions must be integers", 1)
    nx, ny = int(head[2]), int(head[3])
    if nx < 1 or ny < 1:
        raise GridParseError(f"grid dimensions must be positive, got {nx}x{ny}", 1)
    pitch = _parse_float(head[4], 1, "pitch")
    wavelength = _parse_float(head[5], 1, "wavelength")
    medium_index = _parse_float(head[6], 1, "medium_index")
    if pitch <= 0 or wavelength <= 0 or medium_index < 1:
        raise GridParseError("pitch and wavelength must be > 0 and medium_index >= 1", 1)
    body = lines[1:]
    if len(body) != ny:
        line = len(lines) + 1 if len(body) < ny else ny + 2
        raise GridParseError(f"expected {ny} data rows, found {len(body)}", line)
    dtype = np.float64 if kind == "real" else np.complex128
    data = np.empty((ny, nx), dtype=dtype)
    for j, line in enumerate(body):
        lineno = j + 2
        toks = line.split()
        if len(toks) != nx:
            raise GridParseError(f"expected {nx} values, found {len(toks)}", lineno)
        for i, tok in enumerate(toks):
            if kind == "real":
                data[j, i] = _parse_float(tok, lineno)
            else:
                parts = tok.split(",")
                if len(parts) != 2:
                    raise GridParseError(f"complex value must be re,im, got {tok!r}", lineno)
                data[j, i] = complex(_parse_float(parts[0], lineno), _parse_float(parts[1], lineno))
    if kind == "real":
        return ScalarGrid(data, pitch, wavelength=wavelength, medium_index=medium_index)
    return ComplexField(data, pitch, wavelength, medium_index)


def write_grid(path, grid, wavelength=None, medium_index=None) -> None:
    Path(path).write_text(format_grid(grid, wavelength, medium_index), encoding="ascii", newline="\n")


def read_grid(path):
    raw = Path(path).read_bytes()
    return parse_grid_bytes(raw)


def parse_grid_bytes(raw: bytes):
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise GridParseError("file is not ASCII text", raw.count(b"\n", 0, exc.start) + 1) from None
    return parse_grid(text)


# -- images ------------------------------------------------------------------

def to_pgm(grid) -> bytes:
    data = np.asarray(grid.data if hasattr(grid, "data") else grid, dtype=np.float64)
    lo, hi = data.min(), data.max()
    if hi > lo:
        pixels = np.rint((data - lo) / (hi - lo) * 255.0).astype(np.uint8)
    else:
        pixels = np.full(data.shape, 128, dtype=np.uint8)
    ny, nx = data.shape
    return f"P5\n{nx} {ny}\n255\n".encode("ascii") + pixels.tobytes()


def write_image(path, grid) -> None:
    Path(path).write_bytes(to_pgm(grid))


# -- scenarios ---------------------------------------------------------------

_REQUIRED = (
    "wavelength_m", "medium_index",
    "sphere.center.x_m", "sphere.center.y_m", "sphere.center.z_m",
    "sphere.radius_m", "sphere.refraction_index", "sphere.strength",
    "detector.nx", "detector.ny", "detector.pitch_m",
    "kernel_mode", "forward_model", "evanescent_policy",
)
_OPTIONAL = ("detector.origin.x_m", "detector.origin.y_m")


def format_scenario(sc: Scenario) -> str:
    cx, cy, cz = sc.sphere.center
    f = format_float
    pairs = [
        ("wavelength_m", f(sc.wavelength)),
        ("medium_index", f(sc.medium_index)),
        ("sphere.center.x_m", f(cx)),
        ("sphere.center.y_m", f(cy)),
        ("sphere.center.z_m", f(cz)),
        ("sphere.radius_m", f(sc.sphere.radius)),
        ("sphere.refraction_index", f(sc.sphere.refraction_index)),
        ("sphere.strength", f(sc.sphere.scattering_strength)),
        ("detector.nx", str(sc.detector.nx)),
        ("detector.ny", str(sc.detector.ny)),
        ("detector.pitch_m", f(sc.detector.pitch)),
        ("detector.origin.x_m", f(sc.detector.origin[0])),
        ("detector.origin.y_m", f(sc.detector.origin[1])),
        ("kernel_mode", sc.kernel_mode.variant.value),
        ("forward_model", sc.forward_model.value),
        ("evanescent_policy", sc.kernel_mode.evanescent_policy.value),
    ]
    return "".join(f"{k}={v}\n" for k, v in pairs)


def parse_scenario(text: str) -> Scenario:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioParseError(f"expected key=value, got {raw!r}", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _REQUIRED and key not in _OPTIONAL:
            raise ScenarioParseError(f"unknown key {key!r}", key=key, line=lineno)
        if key in values:
            raise ScenarioParseError(f"duplicate key {key!r}", key=key, line=lineno)
        values[key] = (value, lineno)
    for key in _REQUIRED:
        if key not in values:
            raise ScenarioParseError(f"missing key {key!r}", key=key)

    def num(key):
        value, lineno = values[key]
        if not _NUMBER.match(value) or not math.isfinite(float(value)):
            raise ScenarioParseError(f"{key} must be a finite number, got {value!r}", key=key, line=lineno)
        return float(value)

    def integer(key):
        value, lineno = values[key]
        if not _INT.match(value):
            raise ScenarioParseError(f"{key} must be an integer, got {value!r}", key=key, line=lineno)
        return int(value)

    def choice(key, enum_cls):
        value, lineno = values[key]
        try:
            return enum_cls(value)
        except ValueError:
            allowed = ", ".join(e.value for e in enum_cls)
            raise ScenarioParseError(f"{key} must be one of {allowed}, got {value!r}", key=key, line=lineno) from None

    try:
        sphere = SphereSpec(
            (num("sphere.center.x_m"), num("sphere.center.y_m"), num("sphere.center.z_m")),
            num("sphere.radius_m"), num("sphere.refraction_index"), num("sphere.strength"),
        )
        nx, ny, pitch = integer("detector.nx"), integer("detector.ny"), num("detector.pitch_m")
        if "detector.origin.x_m" in values or "detector.origin.y_m" in values:
            origin = (num("detector.origin.x_m") if "detector.origin.x_m" in values else 0.0,
                      num("detector.origin.y_m") if "detector.origin.y_m" in values else 0.0)
            detector = DetectorSpec(nx, ny, pitch, origin)
        else:
            detector = DetectorSpec.centered_on(nx, ny, pitch, sphere.center[0], sphere.center[1])
        mode = KernelMode(choice("kernel_mode", KernelVariant), choice("evanescent_policy", EvanescentPolicy))
        return Scenario(num("wavelength_m"), num("medium_index"), sphere, detector, mode,
                        choice("forward_model", ForwardModel))
    except ScenarioParseError:
        raise
    except (ValueError, OverflowError) as exc:
        raise ScenarioParseError(f"invalid scenario: {exc}") from None


def write_scenario(path, sc: Scenario) -> None:
    Path(path).write_text(format_scenario(sc), encoding="ascii", newline="\n")


def read_scenario(path) -> Scenario:
    raw = Path(path).read_bytes()
    return parse_scenario_bytes(raw)


def parse_scenario_bytes(raw: bytes) -> Scenario:
    try:
        text = raw.decode("ascii")
    except UnicodeDecodeError:
        raise ScenarioParseError("file is not ASCII text") from None
    return parse_scenario(text)


# -- CSV ---------------------------------------------------------------------

SWEEP_HEADER = ("size", "nx", "ny", "l2", "l2_zero", "n_pixels", "n_zero_pixels", "status")
LOSS_HEADER = ("l2", "l2_zero", "n_pixels", "n_zero_pixels")


def _csv_text(header, rows) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def format_loss_csv(report) -> str:
    return _csv_text(LOSS_HEADER, [(format_float(report.l2), format_float(report.l2_zero),
                                    report.n_pixels, report.n_zero_pixels)])


def format_sweep_csv(result) -> str:
    rows = []
    for r in result.rows:
        if r.ok:
            rep = r.report
            rows.append((r.size, r.nx, r.ny, format_float(rep.l2), format_float(rep.l2_zero),
                         rep.n_pixels, rep.n_zero_pixels, r.status))
        else:
            rows.append((r.size, r.nx, r.ny, "", "", r.nx * r.ny, "", r.status))
    return _csv_text(SWEEP_HEADER, rows)


def write_sweep_csv(path, result) -> None:
    Path(path).write_text(format_sweep_csv(result), encoding="ascii", newline="\n")


def read_sweep_csv(path):
    """Load a sweep CSV back into a SweepResult (digest is not stored in the file)."""
    from holorecon.experiments import SweepResult, SweepRow
    from holorecon.metrics import LossReport

    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != SWEEP_HEADER:
            raise ValueError(f"unexpected sweep CSV header {reader.fieldnames}")
        rows = []
        for rec in reader:
            report = None
            if rec["status"] == "ok":
                report = LossReport(float(rec["l2"]), float(rec["l2_zero"]),
                                    int(rec["n_pixels"]), int(rec["n_zero_pixels"]))
            rows.append(SweepRow(int(rec["size"]), int(rec["nx"]), int(rec["ny"]), report, rec["status"]))
    return SweepResult(rows, "")
