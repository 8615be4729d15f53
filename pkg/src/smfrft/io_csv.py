"""CSV serialization of signals and spectra.

Signal files carry the header ``t,re,im``, spectrum files ``u,re,im``;
one row per sample in grid order (ascending axis). Values are written
with shortest round-trip decimal formatting (at most 17 significant
digits), so parsing reproduces the exact doubles. The axis grid is
inferred on read: the column must be uniform to within 1e-9 relative of
the median step. Write -> read -> write is byte-identical whenever the
grid start and step are exactly representable doubles, which holds for
every grid this package generates by default.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import InvalidGridError, InvalidParameterError
from .grid import ComplexArray, SampledSignal, UniformGrid

_UNIFORMITY_RTOL = 1e-9


def _format_row(axis_value: float, value: complex) -> str:
    return f"{axis_value!r},{value.real!r},{value.imag!r}"


def _write(path, header: str, axis, values) -> None:
    lines = [header]
    lines.extend(_format_row(float(a), complex(v))
                 for a, v in zip(axis, values))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def _parse(path, header: str) -> tuple[np.ndarray, ComplexArray]:
    text = Path(path).read_text(encoding="ascii")
    lines = text.splitlines()
    if not lines or lines[0].strip() != header:
        raise InvalidParameterError(
            f"{path}: expected header {header!r}, got {lines[0]!r}"
            if lines else f"{path}: empty file"
        )
    axis = np.empty(len(lines) - 1, dtype=np.float64)
    values = np.empty(len(lines) - 1, dtype=np.complex128)
    for i, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3:
            raise InvalidParameterError(f"{path}: row {i}: expected 3 columns")
        try:
            a, re, im = (float(p) for p in parts)
        except ValueError as exc:
            raise InvalidParameterError(f"{path}: row {i}: {exc}") from None
        if not (np.isfinite(a) and np.isfinite(re) and np.isfinite(im)):
            raise InvalidParameterError(f"{path}: row {i}: non-finite value")
        axis[i - 2] = a
        values[i - 2] = complex(re, im)
    return axis, values


def _infer_grid(axis: np.ndarray, path) -> UniformGrid:
    if axis.shape[0] < 2:
        raise InvalidGridError(f"{path}: need at least 2 rows")
    steps = np.diff(axis)
    step = float(np.median(steps))
    if step <= 0.0:
        raise InvalidGridError(f"{path}: axis must be strictly increasing")
    if np.any(np.abs(steps - step) > _UNIFORMITY_RTOL * abs(step)):
        worst = int(np.argmax(np.abs(steps - step))) + 2
        raise InvalidGridError(
            f"{path}: row {worst}: axis not uniform within "
            f"{_UNIFORMITY_RTOL} relative of the median step"
        )
    return UniformGrid(float(axis[0]), step, int(axis.shape[0]))


def write_signal_csv(path, signal: SampledSignal) -> None:
    _write(path, "t,re,im", signal.grid.points(), signal.samples)


def read_signal_csv(path) -> SampledSignal:
    axis, values = _parse(path, "t,re,im")
    return SampledSignal(_infer_grid(axis, path), values)


def write_spectrum_csv(path, ugrid: UniformGrid, values: ComplexArray) -> None:
    _write(path, "u,re,im", ugrid.points(), values)


def read_spectrum_csv(path) -> tuple[UniformGrid, ComplexArray]:
    """Grid and values only; the angle is not part of the file format."""
    axis, values = _parse(path, "u,re,im")
    return _infer_grid(axis, path), values
