"""Sampled-data value types, test-signal generators, and the residual norm.

All types are immutable after construction and every operation is a pure
function, so everything here is safe to share across workers. Signals are
zero outside their grid span; the generators are Gaussian-enveloped so
that truncation at the grid edges is controllable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import (
    InvalidGridError,
    InvalidParameterError,
    ShapeMismatchError,
    DegenerateReferenceError,
)
from .kernel import Angle

ComplexArray = npt.NDArray[np.complex128]
FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True, slots=True)
class UniformGrid:
    """Evenly spaced axis: point(k) = start + k*step for 0 <= k < count.

    Units are seconds for time axes and rad/s for fractional-frequency
    axes; the type does not distinguish the two.
    """

    start: float
    step: float
    count: int

    def __post_init__(self):
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "count", int(self.count))
        if not np.isfinite(self.start) or not np.isfinite(self.step):
            raise InvalidGridError("grid start and step must be finite")
        if self.step <= 0.0:
            raise InvalidGridError(f"grid step must be > 0, got {self.step!r}")
        if self.count < 2:
            raise InvalidGridError(f"grid count must be >= 2, got {self.count!r}")

    def point(self, k: int) -> float:
        return self.start + k * self.step

    def points(self) -> FloatArray:
        # arange(count)*step + start reproduces point(k) bit-for-bit
        return np.arange(self.count, dtype=np.float64) * self.step + self.start


def make_grid(start: float, step: float, count: int) -> UniformGrid:
    """Construct a UniformGrid, rejecting non-positive step or count < 2."""
    return UniformGrid(start, step, count)


@dataclass(frozen=True, slots=True)
class SampledSignal:
    """Complex samples of a time-domain signal on a uniform grid.

    The signal is zero outside [start, start + (count-1)*step]; operators
    use that zero-extension, never periodic wrap-around.
    """

    grid: UniformGrid
    samples: ComplexArray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.shape[0] != self.grid.count:
            raise ShapeMismatchError(
                f"expected {self.grid.count} samples, got shape {samples.shape}"
            )
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise InvalidParameterError("signal samples must all be finite")
        samples = samples.copy()
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def conjugate(self) -> "SampledSignal":
        return SampledSignal(self.grid, np.conj(self.samples))

    def energy(self) -> float:
        """Discrete L2 energy, step * sum(|x|^2)."""
        return float(self.grid.step * np.sum(np.abs(self.samples) ** 2))


@dataclass(frozen=True, slots=True)
class Spectrum:
    """Transform values on a fractional-frequency grid at a fixed angle.

    `tgrid` records the time grid the spectrum was computed from; the
    fast inverse needs it to reproduce the exact forward phase reference.
    """

    ugrid: UniformGrid
    values: ComplexArray
    angle: Angle
    tgrid: UniformGrid | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim != 1 or values.shape[0] != self.ugrid.count:
            raise ShapeMismatchError(
                f"expected {self.ugrid.count} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values.view(np.float64))):
            raise InvalidParameterError("spectrum values must all be finite")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def energy(self) -> float:
        """Discrete L2 energy, step * sum(|X|^2)."""
        return float(self.ugrid.step * np.sum(np.abs(self.values) ** 2))


def gen_gaussian(grid: UniformGrid, center: float, width: float,
                 carrier: float) -> SampledSignal:
    """Gaussian envelope with an optional complex carrier.

    samples[n] = exp(-(t_n - center)^2 / (2*width^2)) * exp(j*carrier*t_n)
    """
    if not width > 0.0:
        raise InvalidParameterError(f"width must be > 0, got {width!r}")
    t = grid.points()
    envelope = np.exp(-((t - center) ** 2) / (2.0 * width * width))
    return SampledSignal(grid, envelope * np.exp(1j * carrier * t))


def gen_chirp(grid: UniformGrid, rate: float,
              envelope_width: float) -> SampledSignal:
    """Gaussian-enveloped linear chirp with down-sweeping quadratic phase.

    samples[n] = exp(-t_n^2 / (2*envelope_width^2)) * exp(-j*rate*t_n^2/2)

    A chirp generated with rate equal to cot(phi) is exactly phase-
    cancelled by the fast path's pre-multiplication at angle phi, which is
    what makes it maximally compact in that fractional domain.
    """
    if not envelope_width > 0.0:
        raise InvalidParameterError(
            f"envelope_width must be > 0, got {envelope_width!r}"
        )
    t = grid.points()
    envelope = np.exp(-(t * t) / (2.0 * envelope_width * envelope_width))
    return SampledSignal(grid, envelope * np.exp(-0.5j * rate * t * t))


def relative_l2_error(a, b) -> float:
    """|| a - b ||_2 / || b ||_2 for equal-length complex arrays."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shape mismatch: {a.shape} vs {b.shape}")
    nb = float(np.linalg.norm(b))
    if nb == 0.0:
        raise DegenerateReferenceError("reference vector has zero norm")
    return float(np.linalg.norm(a - b)) / nb
