"""Typed errors raised across the library.

All are ValueError subclasses so generic callers may catch broadly while
tests and the CLI can distinguish the failure modes.
"""


class InvalidGridError(ValueError):
    """Grid construction violated step > 0 or count >= 2."""


class InvalidParameterError(ValueError):
    """A generator or operator parameter is outside its domain."""


class ShapeMismatchError(ValueError):
    """Two arrays or signals that must share a shape/grid do not."""


class DegenerateReferenceError(ValueError):
    """Relative error requested against a zero-norm reference."""


class DegenerateAngleError(ValueError):
    """Rotation angle too close to a multiple of pi; cot(phi) undefined."""


class AngleMismatchError(ValueError):
    """A spectrum was produced at a different angle than requested."""


class AlignmentError(ValueError):
    """A time offset does not land on the sampling lattice."""


class GridCompatibilityError(ValueError):
    """Spectrum and time grids do not form an exact transform pair."""


class FftSizeError(ValueError):
    """The fast transform path only accepts power-of-two lengths."""
