"""Forward and inverse transforms: slow quadrature oracles and fast paths.

Two independent routes compute the same simplified fractional transform:

* ``smfrft_direct`` evaluates the defining integral by a left-point
  rectangle rule at arbitrary output points, O(N*M). It is the oracle.
* ``smfrft_fast`` realizes the three-step chirp-multiply -> FFT ->
  constant-scale factorization on the FFT-bin output grid, O(N log N).

On the FFT-bin grid the two are algebraically the same finite sum, so
their agreement is a rounding-level cross-check, not a discretization
statement. The rectangle rule (rather than trapezoid) is what makes the
sums identical; for Gaussian-enveloped signals the endpoint terms are
negligible anyway.

The fast inverse refuses any spectrum whose grids do not satisfy
du * N * dt = 2*pi exactly (to 1e-9 relative): on that reciprocal pairing
the discrete chain is an exact inverse DFT, and interpolating anything
else would contaminate downstream residuals.
"""

from __future__ import annotations

import math

import numpy as np

from ._chunked import phase_matvec
from .errors import AngleMismatchError, FftSizeError, GridCompatibilityError
from .grid import ComplexArray, SampledSignal, Spectrum, UniformGrid
from .kernel import Angle, sqrt_j2pi, sqrt_j_over_2pi

# relative slack on du*N*dt == 2*pi for the fast inverse pairing
_RECIPROCAL_RTOL = 1e-9


def fast_ugrid(tgrid: UniformGrid) -> UniformGrid:
    """FFT-bin output grid for a time grid: u_m = 2*pi*m/(N*dt),
    m = -N/2 .. N/2-1, ascending."""
    n = tgrid.count
    du = 2.0 * np.pi / (n * tgrid.step)
    return UniformGrid(-(n // 2) * du, du, n)


def smfrft_quadrature(x: SampledSignal, u_points, angle: Angle) -> ComplexArray:
    """Rectangle-rule transform of ``x`` at arbitrary output points.

    values[k] = dt * sum_n x[n] * kernel(t_n, u_k). This is the slow
    reference path; it never touches an FFT. The kernel chirp
    e^{(j/2) t^2 cot} depends only on t, so it is folded into the input
    vector and the remaining e^{-j u t} factor is evaluated blockwise.
    """
    t = x.grid.points()
    u = np.atleast_1d(np.asarray(u_points, dtype=np.float64))
    chirped = x.samples * np.exp(0.5j * angle.cot_phi * t * t)
    sums = phase_matvec(-u, t, chirped)
    return (x.grid.step / sqrt_j2pi()) * sums


def smfrft_direct(x: SampledSignal, ugrid: UniformGrid, angle: Angle) -> Spectrum:
    """Slow quadrature transform onto a uniform output grid."""
    return Spectrum(ugrid, smfrft_quadrature(x, ugrid.points(), angle),
                    angle, tgrid=x.grid)


def smfrft_fast(x: SampledSignal, angle: Angle) -> Spectrum:
    """Fast transform: pre-chirp, FFT, constant scale.

    Output lands on ``fast_ugrid(x.grid)`` in ascending order and equals
    the direct quadrature on that grid exactly (same finite sum):

        values[k] = (dt / sqrt(j*2*pi))
                    * sum_n (x[n] * exp((j/2) t_n^2 cot)) * exp(-j t_n u_k)

    Requires a power-of-two length.
    """
    n = x.grid.count
    if n & (n - 1):
        raise FftSizeError(f"fast path requires a power-of-two length, got {n}")
    t = x.grid.points()
    chirped = x.samples * np.exp(0.5j * angle.cot_phi * t * t)
    bins = np.fft.fftshift(np.fft.fft(chirped))
    ugrid = fast_ugrid(x.grid)
    u = ugrid.points()
    values = (x.grid.step / sqrt_j2pi()) * np.exp(-1j * x.grid.start * u) * bins
    return Spectrum(ugrid, values, angle, tgrid=x.grid)


def ismfrft_direct(spectrum: Spectrum, tgrid: UniformGrid,
                   angle: Angle) -> SampledSignal:
    """Slow inverse: post-chirped rectangle rule over the u grid.

    samples[n] = sqrt(j/(2*pi)) * exp(-(j/2) t_n^2 cot)
                 * du * sum_k exp(j u_k t_n) * X[k]
    """
    if spectrum.angle != angle:
        raise AngleMismatchError(
            f"spectrum was computed at phi={spectrum.angle.phi!r}, "
            f"inverse requested at phi={angle.phi!r}"
        )
    t = tgrid.points()
    u = spectrum.ugrid.points()
    fourier = phase_matvec(t, u, spectrum.values)
    post = sqrt_j_over_2pi() * np.exp(-0.5j * angle.cot_phi * t * t)
    return SampledSignal(tgrid, post * spectrum.ugrid.step * fourier)


def ismfrft_fast(spectrum: Spectrum, angle: Angle) -> SampledSignal:
    """Fast inverse: inverse FFT plus post-chirp, exact on reciprocal grids.

    The spectrum must carry the originating time grid and satisfy
    du * N * dt = 2*pi; then the composition with ``smfrft_fast`` is the
    identity up to floating point.
    """
    if spectrum.angle != angle:
        raise AngleMismatchError(
            f"spectrum was computed at phi={spectrum.angle.phi!r}, "
            f"inverse requested at phi={angle.phi!r}"
        )
    tgrid = spectrum.tgrid
    if tgrid is None:
        raise GridCompatibilityError(
            "spectrum does not record its originating time grid; "
            "the fast inverse needs it for the phase reference"
        )
    n = spectrum.ugrid.count
    if tgrid.count != n:
        raise GridCompatibilityError(
            f"time grid has {tgrid.count} points, spectrum has {n}"
        )
    product = spectrum.ugrid.step * n * tgrid.step
    if abs(product / (2.0 * np.pi) - 1.0) > _RECIPROCAL_RTOL:
        raise GridCompatibilityError(
            f"du*N*dt = {product!r} is not 2*pi within {_RECIPROCAL_RTOL} relative"
        )
    u = spectrum.ugrid.points()
    referenced = spectrum.values * np.exp(1j * tgrid.start * u)
    sums = n * np.fft.ifft(np.fft.ifftshift(referenced))
    t = tgrid.points()
    post = sqrt_j_over_2pi() * np.exp(-0.5j * angle.cot_phi * t * t)
    return SampledSignal(tgrid, post * spectrum.ugrid.step * sums)


def frft_direct(x: SampledSignal, ugrid: UniformGrid, angle: Angle) -> Spectrum:
    """Conventional fractional transform by rectangle-rule quadrature.

    Reference implementation only; at phi = pi/2 it equals sqrt(j) times
    the simplified transform pointwise (the kernels differ by exactly
    that constant when cot(phi) = 0).
    """
    cot = angle.cot_phi
    csc = 1.0 / math.sin(angle.phi)
    amp = np.sqrt((1.0 - 1j * cot) / (2.0 * math.pi))
    t = x.grid.points()
    u = ugrid.points()
    chirped = x.samples * np.exp(0.5j * cot * t * t)
    sums = phase_matvec(-csc * u, t, chirped)
    values = (x.grid.step * amp) * np.exp(0.5j * cot * u * u) * sums
    return Spectrum(ugrid, values, angle, tgrid=x.grid)
