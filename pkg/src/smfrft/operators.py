"""Time-domain fractional operators: weighted convolution, product,
correlation, and the shift/modulation operators they compose with.

The weights are the chirps that make the spectral identities take pure
product form:

    convolution  (f <*> g)(t) = int f(tau) g(t-tau) e^{j tau (tau-t) cot} dtau
    product      z(t) = f(t) g(t) e^{(j/2) t^2 cot}
    correlation  (f <o> g)(t) = int conj(f(tau)) g(t+tau)
                                     e^{j tau (tau+t) cot} dtau

Off-grid samples of the lagged operand are zero (compact-support model,
no wrap-around), and shifts are restricted to whole samples so that no
interpolation error can leak into theorem residuals. Because the lag
arguments t_n -+ tau_m must land back on the sampling lattice, the grid
origin itself has to sit on the lattice (start an integer multiple of
step); both harness grids satisfy this by construction.

The O(N^2) sums are evaluated in row blocks; results are bitwise
deterministic.
"""

from __future__ import annotations

import numpy as np

from ._chunked import run_blocks, unit_phasor
from .errors import AlignmentError, InvalidParameterError, ShapeMismatchError
from .grid import SampledSignal
from .kernel import Angle

_ALIGN_RTOL = 1e-9


def _require_common_grid(f: SampledSignal, g: SampledSignal) -> None:
    if f.grid != g.grid:
        raise ShapeMismatchError("operands must share one grid")


def _lattice_index(value: float, step: float, what: str) -> int:
    """Nearest integer k with value = k*step, or AlignmentError."""
    ratio = value / step
    k = round(ratio)
    if abs(ratio - k) > _ALIGN_RTOL * max(1.0, abs(ratio)):
        raise AlignmentError(
            f"{what} = {value!r} is not an integer multiple of the step {step!r}"
        )
    return int(k)


def shift_op(x: SampledSignal, d: float) -> SampledSignal:
    """Delay by d: output(t) = x(t - d), zero-filled where x is off-grid.

    d must be a whole number of samples, |d| < N*step.
    """
    k = _lattice_index(float(d), x.grid.step, "shift delay")
    n = x.grid.count
    if abs(k) >= n:
        raise InvalidParameterError(
            f"shift of {k} samples exceeds the grid length {n}"
        )
    shifted = np.zeros(n, dtype=np.complex128)
    if k >= 0:
        shifted[k:] = x.samples[: n - k]
    else:
        shifted[:k] = x.samples[-k:]
    return SampledSignal(x.grid, shifted)


def modulate_op(x: SampledSignal, q: float) -> SampledSignal:
    """Multiply by the unimodular carrier e^{j*q*t}."""
    return SampledSignal(x.grid, x.samples * np.exp(1j * q * x.grid.points()))


def frac_product(f: SampledSignal, g: SampledSignal,
                 angle: Angle) -> SampledSignal:
    """Pointwise product times the chirp weight e^{(j/2) t^2 cot(phi)}."""
    _require_common_grid(f, g)
    t = f.grid.points()
    weight = np.exp(0.5j * angle.cot_phi * t * t)
    return SampledSignal(f.grid, f.samples * g.samples * weight)


def _origin_index(signal: SampledSignal) -> int:
    return _lattice_index(signal.grid.start, signal.grid.step, "grid start")


def _lagged_matrix(g: SampledSignal, origin: int, lag_sign: int) -> np.ndarray:
    """Toeplitz/Hankel view V[n, m] = g~[n + lag_sign*(m + origin)] built
    from one zero-padded copy, so no (N, N) gather is materialized."""
    n = g.grid.count
    padded = np.zeros(2 * n - 1, dtype=np.complex128)
    # padded[j] holds sample index j - shift of g, zeros elsewhere
    shift = (n - 1) + origin if lag_sign < 0 else -origin
    lo = max(0, shift)
    hi = min(2 * n - 1, shift + n)
    if lo < hi:
        padded[lo:hi] = g.samples[lo - shift:hi - shift]
    windows = np.lib.stride_tricks.sliding_window_view(padded, n)
    return windows[:, ::-1] if lag_sign < 0 else windows


def _weighted_lag_sum(first: np.ndarray, g: SampledSignal, cot: float,
                      lag_sign: int) -> np.ndarray:
    """Blockwise out[n] = sum_m first[m] g~[n + lag_sign*(m + origin)]
    e^{lag_sign * j cot tau_m t_n}, the shared core of the weighted
    convolution (lag_sign = -1) and correlation (lag_sign = +1)."""
    grid = g.grid
    origin = _origin_index(g)
    n = grid.count
    t = grid.points()
    lagged = _lagged_matrix(g, origin, lag_sign)
    out = np.empty(n, dtype=np.complex128)

    def work(block: slice) -> None:
        cross = unit_phasor(np.outer(lag_sign * cot * t[block], t))
        cross *= lagged[block]
        out[block] = cross @ first

    run_blocks(work, n, n * n)
    return out


def frac_convolve(f: SampledSignal, g: SampledSignal,
                  angle: Angle) -> SampledSignal:
    """Weighted convolution on a common grid.

    out[n] = dt * sum_m f[m] g~(t_n - tau_m) e^{j tau_m (tau_m - t_n) cot}

    where g~ is g zero-extended off-grid. The weight factorizes as
    e^{j cot tau^2} * e^{-j cot tau t}, which keeps the sum a blockwise
    matrix-vector product. Commutative for decaying operands: the
    substitution sigma = t - tau maps the weight onto the same form with
    the operand roles exchanged.
    """
    _require_common_grid(f, g)
    t = f.grid.points()
    cot = angle.cot_phi
    first = f.samples * np.exp(1j * cot * t * t)
    out = _weighted_lag_sum(first, g, cot, lag_sign=-1)
    return SampledSignal(f.grid, f.grid.step * out)


def frac_correlate(f: SampledSignal, g: SampledSignal,
                   angle: Angle) -> SampledSignal:
    """Weighted correlation, conjugate-linear in its first operand.

    out[n] = dt * sum_m conj(f[m]) g~(t_n + tau_m) e^{j tau_m (tau_m + t_n) cot}
    """
    _require_common_grid(f, g)
    t = f.grid.points()
    cot = angle.cot_phi
    first = np.conj(f.samples) * np.exp(1j * cot * t * t)
    out = _weighted_lag_sum(first, g, cot, lag_sign=+1)
    return SampledSignal(f.grid, f.grid.step * out)
