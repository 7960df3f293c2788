"""JSON and CSV serialization for frequency sets, polynomials, samples,
recovery results and interpolants.

Readers raise :class:`~trigsurf.exceptions.FormatError` naming the offending
field (JSON) or line (CSV).
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .exceptions import FormatError, InvalidArgumentError
from .freqset import FrequencySet
from .trigpoly import TrigPolynomial
from .zerosampler import SampleSet


def format_float(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(float(x), ".17g")


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(obj: dict, path: str | Path | None) -> None:
    text = dumps(obj)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: line {exc.lineno}: {exc.msg}") from None


def _field(obj, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing field {key!r}")
    return obj[key]


def _complex_list(value, where: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{where}: expected a list of [re, im] pairs") from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError(f"{where}: expected a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def _pairs(values: np.ndarray) -> list[list[float]]:
    values = np.asarray(values, dtype=complex)
    return [[float(v.real), float(v.imag)] for v in values]


def frequency_set_from_json(obj, where: str = "frequency set") -> FrequencySet:
    dim = _field(obj, "dim", where)
    indices = _field(obj, "indices", where)
    if not isinstance(dim, int) or dim < 1:
        raise FormatError(f"{where}.dim: expected a positive integer")
    try:
        arr = np.asarray(indices, dtype=np.int64).reshape(-1, dim) if indices else np.zeros((0, dim), dtype=np.int64)
        if indices and any(len(row) != dim for row in indices):
            raise ValueError
    except (TypeError, ValueError):
        raise FormatError(f"{where}.indices: expected integer vectors of length {dim}") from None
    return FrequencySet(arr, dim=dim)


def polynomial_to_json(p: TrigPolynomial) -> dict:
    out = {"support": p.support.to_json(), "coeffs": _pairs(p.coeffs), "real_valued": bool(p.real_valued)}
    if p.seed is not None:
        out["seed"] = int(p.seed)
    return out


def polynomial_from_json(obj, where: str = "polynomial") -> TrigPolynomial:
    support = frequency_set_from_json(_field(obj, "support", where), f"{where}.support")
    coeffs = _complex_list(_field(obj, "coeffs", where), f"{where}.coeffs")
    real = obj.get("real_valued", False)
    if not isinstance(real, bool):
        raise FormatError(f"{where}.real_valued: expected a boolean")
    seed = obj.get("seed")
    try:
        return TrigPolynomial(support, coeffs, real_valued=real, seed=seed)
    except InvalidArgumentError as exc:
        raise FormatError(f"{where}: {exc}") from None


def load_polynomial(path: str | Path) -> TrigPolynomial:
    return polynomial_from_json(read_json(path), where=str(path))


def sample_set_to_csv(samples: SampleSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(samples.dim)] + ["component", "residual"])
    for x, comp, res in zip(samples.points, samples.components, samples.residuals):
        writer.writerow([format_float(v) for v in x] + [int(comp), format_float(res)])
    return buf.getvalue()


def sample_set_from_csv(text: str, where: str = "samples") -> SampleSet:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise FormatError(f"{where}: empty file")
    header = [h.strip() for h in rows[0]]
    dim = len(header) - 2
    expected = [f"x{i + 1}" for i in range(dim)] + ["component", "residual"]
    if dim < 1 or header != expected:
        raise FormatError(f"{where}: line 1: header must be x1,...,xn,component,residual")
    pts, comps, res = [], [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != dim + 2:
            raise FormatError(f"{where}: line {lineno}: expected {dim + 2} fields, got {len(row)}")
        try:
            pts.append([float(v) for v in row[:dim]])
            comps.append(int(row[dim]) if row[dim].strip() else 0)
            res.append(float(row[dim + 1]) if row[dim + 1].strip() else math.nan)
        except ValueError:
            raise FormatError(f"{where}: line {lineno}: non-numeric field") from None
        if not all(0.0 <= v < 1.0 for v in pts[-1]):
            raise FormatError(f"{where}: line {lineno}: coordinates must lie in [0, 1)")
    if not pts:
        raise FormatError(f"{where}: no sample rows")
    return SampleSet(np.array(pts), np.array(comps), np.array(res))


def write_samples(samples: SampleSet, path: str | Path | None) -> None:
    text = sample_set_to_csv(samples)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)


def load_samples(path: str | Path) -> SampleSet:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    return sample_set_from_csv(text, where=str(path))


def recovery_to_json(result, match: float | None = None) -> dict:
    out = {
        "coefficients": polynomial_to_json(result.coefficients),
        "singular_values": [float(s) for s in result.singular_values],
        "null_space_dim": int(result.null_space_dim),
        "unique": bool(result.unique),
    }
    if match is not None:
        out["match"] = float(match)
    return out


def interpolant_to_json(itp) -> dict:
    return {
        "gamma": itp.kernel_bandwidth.to_json(),
        "anchors": itp.anchors.points.tolist(),
        "weights": _pairs(itp.weights),
        "pinv_tol": float(itp.pinv_tol),
    }


def interpolant_from_json(obj, where: str = "interpolant"):
    from .interpolant import Interpolant

    gamma = frequency_set_from_json(_field(obj, "gamma", where), f"{where}.gamma")
    try:
        anchors = np.asarray(_field(obj, "anchors", where), dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{where}.anchors: expected a list of points") from None
    if anchors.ndim != 2 or anchors.shape[1] != gamma.dim:
        raise FormatError(f"{where}.anchors: expected points of dimension {gamma.dim}")
    weights = _complex_list(_field(obj, "weights", where), f"{where}.weights")
    if weights.shape[0] != anchors.shape[0]:
        raise FormatError(f"{where}.weights: expected {anchors.shape[0]} entries")
    pinv_tol = _field(obj, "pinv_tol", where)
    if not isinstance(pinv_tol, (int, float)):
        raise FormatError(f"{where}.pinv_tol: expected a number")
    try:
        samples = SampleSet(anchors)
    except InvalidArgumentError as exc:
        raise FormatError(f"{where}.anchors: {exc}") from None
    return Interpolant(samples, weights, gamma, anchors.shape[0], float(pinv_tol))


def load_interpolant(path: str | Path):
    return interpolant_from_json(read_json(path), where=str(path))
