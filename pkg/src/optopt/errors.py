"""Exception types shared across the library."""

from __future__ import annotations


class OptoptError(Exception):
    """Base class for all library-specific errors."""


class DimensionMismatchError(OptoptError, ValueError):
    """Point dimension does not match the kernel or domain dimension."""


class NonFiniteInputError(OptoptError, ValueError):
    """An input coordinate or value is NaN or infinite."""


class DuplicatePointError(OptoptError, ValueError):
    """A training point duplicates an existing one within tolerance."""


class FactorizationError(OptoptError, ArithmeticError):
    """Cholesky factorization failed even after jitter escalation."""


class PartitionExhaustedError(OptoptError, ArithmeticError):
    """A cell side length underflowed; the partition cannot be refined."""


class ObjectiveValueError(OptoptError, ValueError):
    """The objective returned NaN or Inf.  Carries the offending point."""

    def __init__(self, point, value):
        self.point = tuple(float(c) for c in point)
        self.value = value
        super().__init__(f"objective returned non-finite value {value!r} at {self.point!r}")


class UnknownBenchmarkError(OptoptError, ValueError):
    """Benchmark name not recognised."""
