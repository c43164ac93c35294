"""Exception types shared across the laboratory modules.

Kept flat on purpose: callers (and the CLI exit-code mapping) select on
concrete types, not on a hierarchy.
"""


class CapExceededError(RuntimeError):
    """An enumeration would exceed the configured item cap."""


class EscapedPointError(ValueError):
    """A phase point sits in a removed branch where the map is undefined."""


class DimensionNotDivisibleError(ValueError):
    """Hilbert-space dimension is not a multiple of the baker base."""


class NotHyperbolicError(ValueError):
    """Torus automorphism matrix has |trace| <= 2."""


class BadDeterminantError(ValueError):
    """Torus automorphism matrix is not in SL(2, Z)."""


class ConventionUnsatisfiableError(ValueError):
    """The quantization convention fails its unitarity contract for this N."""


class GridTooCoarseError(ValueError):
    """Sampling grid cannot resolve the wave packet."""


class GridTooNarrowError(ValueError):
    """Sampling grid does not cover the wave packet support."""


class PhaseResolutionError(ValueError):
    """Quadrature grid violates the phase-resolution spacing rule."""


class SupportNotCoveredError(ValueError):
    """The symbol's momentum support misses part of the state's content."""


class NoConvergenceError(RuntimeError):
    """An iterative solve (Newton / eigensolver) failed to converge."""


class DegenerateJacobianError(RuntimeError):
    """Newton iteration hit a (numerically) singular derivative."""


class DimensionTooLargeError(ValueError):
    """Matrix dimension exceeds the configured dense-solver maximum."""


class EmptyInputError(ValueError):
    """An operation received an empty array where data is required."""
