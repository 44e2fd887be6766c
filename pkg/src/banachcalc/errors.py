"""Exception types shared across the library.

Every operation documents which of these it can raise; all inherit from
CalcError so callers can catch the whole family at once.
"""


class CalcError(Exception):
    """Base class for all library errors."""


class NotSymmetric(CalcError):
    """Point set is not closed under negation."""


class NotFullDimensional(CalcError):
    """Point set does not span the ambient space."""


class NotSpanning(CalcError):
    """Generator or functional set does not span the ambient space."""


class Infeasible(CalcError):
    """Linear program has no feasible point."""


class Unbounded(CalcError):
    """Linear program or polyhedron is unbounded."""


class DimensionOverBudget(CalcError):
    """Ambient dimension exceeds the configured enumeration cap."""


class BudgetExceeded(CalcError):
    """A count budget (vertices, pivots, sign patterns, ...) overflowed."""


class NotSurjective(CalcError):
    """Linear map is not onto its declared codomain."""


class DependentBasis(CalcError):
    """Supposed basis vectors are linearly dependent (or empty)."""


class DependentColumns(CalcError):
    """Matrix columns are linearly dependent where independence is required."""


class DimMismatch(CalcError):
    """Operands live in incompatible dimensions."""


class NotProper(CalcError):
    """Subspace is trivial or the whole space where a proper one is required."""


class DimensionTooSmall(CalcError):
    """Operation needs dimension at least two (e.g. edge enumeration)."""


class NotAZonotope(CalcError):
    """Polytope failed a zonotope certificate (2-face or reconstruction)."""


class NotIsometricInput(CalcError):
    """Formation arrow that must be isometric is not."""


class ConstructionFailed(CalcError):
    """Amalgam construction could not be completed; carries a diagnostic."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class IoError(CalcError):
    """Catalog file could not be read or written."""


class SchemaMismatch(CalcError):
    """Catalog file declares an unsupported schema version."""


class MalformedRational(CalcError):
    """Rational token in a catalog file is not a reduced p/q string."""
