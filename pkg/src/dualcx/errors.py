"""Exception hierarchy shared across the package.

Everything raised on purpose derives from DualComplexError so callers can
catch one type at the boundary.  Validation errors carry enough context in
their message to locate the offending cell.
"""

from __future__ import annotations


class DualComplexError(Exception):
    """Base class for every error raised by this package."""


# --- complex validation -------------------------------------------------

class ValidationError(DualComplexError):
    """A raw complex description violates the data model."""


class DuplicateId(ValidationError):
    """Two cells claim the same id."""


class DanglingFacet(ValidationError):
    """A facet list references an id that does not exist."""


class DimensionMismatch(ValidationError):
    """A facet's dimension is not one below its cofacet's."""


class RepeatedFacet(ValidationError):
    """A facet list repeats an id, or two faces collide where the face
    lattice of a single cell requires them to be distinct."""


class IncompatibleVertexTuples(ValidationError):
    """Facet vertex tuples do not assemble into dim+1 sorted vertices,
    one deletion per position."""


# --- lookups and subsets -------------------------------------------------

class UnknownSimplex(DualComplexError):
    """An id was not found in the complex at hand."""


class EmptyComplex(DualComplexError):
    """The operation is undefined on the empty complex."""


# --- structural operations -----------------------------------------------

class NotSubcomplex(DualComplexError):
    """A subset that must be closed under faces is not."""


class NotStarClosed(DualComplexError):
    """A subset that must be closed under cofaces is not."""


class NotContained(DualComplexError):
    """A subset lies outside the region it must be contained in."""


class VertexClash(DualComplexError):
    """A fresh vertex label collides with an existing id."""


class NoTargetSimplex(DualComplexError):
    """No simplex in the target has the required vertex set."""


class AmbiguousTarget(DualComplexError):
    """Several target simplices share the required vertex set and no
    resolution was supplied."""


class FaceIncompatibility(DualComplexError):
    """A would-be simplicial map does not commute with facet maps."""


# --- blow-up calculus ----------------------------------------------------

class InvalidIncidence(DualComplexError):
    """A blow-up center description contradicts the configuration."""


class DimensionInconsistent(DualComplexError):
    """Stratum dimensions violate monotonicity, ambient bounds, or the
    declared center dimension."""


class UnmarkedComponent(DualComplexError):
    """A strictness descriptor leaves some component unmarked."""


class StepFailed(DualComplexError):
    """A script step could not be applied.

    Carries the step index, the underlying error, and whatever partial
    run result existed when the step failed.
    """

    def __init__(self, index: int, cause: Exception, partial=None):
        super().__init__(f"step {index} failed: {cause}")
        self.index = index
        self.cause = cause
        self.partial = partial


class PairBroken(DualComplexError):
    """An embedded pair replay cannot extend the inclusion any further.

    ``step`` is the failing step index (None when the pair itself is
    invalid), ``check`` names what broke, ``partial`` carries the run up
    to the failure when one exists.
    """

    def __init__(self, step, check: str, message: str, partial=None):
        super().__init__(f"{check}: {message}" if step is None
                         else f"step {step}, {check}: {message}")
        self.step = step
        self.check = check
        self.partial = partial


# --- serialization and CLI -----------------------------------------------

class ParseError(DualComplexError):
    """An input document does not match its expected shape."""


class IoError(DualComplexError):
    """A file could not be read or written."""
