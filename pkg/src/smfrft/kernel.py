"""Transform kernels, the rotation-angle value type, and branch constants.

The simplified fractional kernel is

    (1 / sqrt(j*2*pi)) * exp(-j*t*u + (j/2) * t^2 * cot(phi))

and the conventional fractional kernel is

    sqrt((1 - j*cot(phi)) / (2*pi))
        * exp((j/2) * (u^2 + t^2) * cot(phi) - j*u*t*csc(phi))

Both square roots are taken on the principal branch,

    sqrt(j*2*pi) = sqrt(2*pi) * exp(j*pi/4),

which makes the forward/inverse constants exact reciprocals
(sqrt(j/(2*pi)) * 2*pi / sqrt(j*2*pi) == 1) so the transform round trip
composes to the identity. Angles with cot(phi) undefined (phi a multiple
of pi) are rejected at Angle construction; the delta-kernel branches of
the conventional transform have no sampled representation and are out of
scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAngleError

# |sin(phi)| below this makes cot(phi) exceed ~1e12 and the quadratic
# chirp aliases catastrophically on any desk-scale grid.
SIN_PHI_FLOOR = 1e-12

_SQRT_J_2PI = complex(math.sqrt(2.0 * math.pi) * math.cos(math.pi / 4),
                      math.sqrt(2.0 * math.pi) * math.sin(math.pi / 4))
_SQRT_J_OVER_2PI = complex(math.cos(math.pi / 4) / math.sqrt(2.0 * math.pi),
                           math.sin(math.pi / 4) / math.sqrt(2.0 * math.pi))
_INV_SQRT_J_2PI = 1.0 / _SQRT_J_2PI


def sqrt_j2pi() -> complex:
    """Principal-branch sqrt(j*2*pi) = sqrt(2*pi)*exp(j*pi/4)."""
    return _SQRT_J_2PI


def sqrt_j_over_2pi() -> complex:
    """Principal-branch sqrt(j/(2*pi)) = exp(j*pi/4)/sqrt(2*pi)."""
    return _SQRT_J_OVER_2PI


@dataclass(frozen=True, slots=True)
class Angle:
    """Validated rotation angle with its fractional order and cached cot.

    Fields
    ------
    phi : rotation angle in radians, phi mod pi != 0
    order : fractional order, 2*phi/pi
    cot_phi : cos(phi)/sin(phi), cached because every kernel and every
        operator weight uses it
    """

    phi: float
    order: float
    cot_phi: float


def make_angle(phi: float) -> Angle:
    """Build an Angle from a rotation angle in radians.

    Raises DegenerateAngleError when |sin(phi)| < 1e-12, where the
    simplified kernel is undefined.
    """
    phi = float(phi)
    if not math.isfinite(phi):
        raise DegenerateAngleError(f"angle must be finite, got {phi!r}")
    s = math.sin(phi)
    if abs(s) < SIN_PHI_FLOOR:
        raise DegenerateAngleError(
            f"degenerate angle: phi={phi!r} has |sin(phi)| < {SIN_PHI_FLOOR}"
        )
    return Angle(phi=phi, order=2.0 * phi / math.pi, cot_phi=math.cos(phi) / s)


def smfrft_kernel(t, u, angle: Angle):
    """Simplified fractional kernel, broadcast over t and u.

    Unimodular chirp factors times the constant 1/sqrt(j*2*pi); the
    magnitude is 1/sqrt(2*pi) everywhere.
    """
    return _INV_SQRT_J_2PI * np.exp(1j * (0.5 * angle.cot_phi * t * t - t * u))


def frft_kernel(t, u, angle: Angle):
    """Conventional fractional kernel, broadcast over t and u.

    The amplitude sqrt((1 - j*cot(phi))/(2*pi)) is evaluated on the
    principal branch; its real part is always positive so the branch cut
    is never crossed.
    """
    cot = angle.cot_phi
    csc = 1.0 / math.sin(angle.phi)
    amp = np.sqrt((1.0 - 1j * cot) / (2.0 * math.pi))
    return amp * np.exp(1j * (0.5 * (u * u + t * t) * cot - u * t * csc))
