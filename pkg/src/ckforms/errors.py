"""Shared exception types."""


class CkformsError(Exception):
    """Base class for all library errors."""


class IrrationalSpectrum(CkformsError):
    """An adjoint action does not split over the rationals."""


class NotASubalgebra(CkformsError):
    """A subspace expected to be bracket-closed is not."""


class SignatureMismatch(CkformsError):
    """A signature is defined on a different root system."""


class RankTooLarge(CkformsError):
    """Enumeration over signatures exceeds the configured rank bound."""


class UnsupportedFamily(CkformsError):
    """No invariant presentation is available for the requested family."""


class ParityViolation(CkformsError):
    """Parameter parity does not match the construction's requirements."""


class ParameterViolation(CkformsError):
    """Parameters violate a construction's constraints."""


class VariableMismatch(CkformsError):
    """Polynomial rings in a diagram check do not line up."""


class VariableCollision(CkformsError):
    """Joint presentations would share a variable name."""


class NotComplexRealForm(CkformsError):
    """The pair is not (complex algebra, real form)."""


class NotBasicInput(CkformsError):
    """A checker requiring a basic pair received a non-basic one."""


class LiftMismatch(CkformsError):
    """A half-signature does not square to the given signature."""


class CandidateIllFormed(CkformsError):
    """Candidate (compact subgroup, algebra map) data is inconsistent."""


class CatalogParseError(CkformsError):
    """Catalog file is malformed."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class CatalogValidationError(CkformsError):
    """Catalog entry violates an invariant."""
