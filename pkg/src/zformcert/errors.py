"""Exception types shared across the package."""


class ZformcertError(Exception):
    """Base class for all package-specific errors."""


class PolynomialSyntaxError(ZformcertError, ValueError):
    """Input text could not be parsed as an integer polynomial."""


class NonMonicError(ZformcertError, ValueError):
    """Operation requires a monic polynomial."""


class ZeroPolynomialError(ZformcertError, ValueError):
    """The zero polynomial is not permitted here."""


class NonSquarefreeError(ZformcertError, ValueError):
    """Operation requires a squarefree polynomial."""


class ReducibleError(ZformcertError, ValueError):
    """Operation requires an irreducible polynomial."""


class NotTotallyRealError(ZformcertError, ValueError):
    """The polynomial does not have all-real roots."""


class DegreeError(ZformcertError, ValueError):
    """Degree outside the supported range for this operation."""


class FieldMismatchError(ZformcertError, ValueError):
    """Elements of two different fields were combined."""


class ZeroElementError(ZformcertError, ZeroDivisionError):
    """Inversion or signature of the zero element."""


class NonIntegralElementError(ZformcertError, ValueError):
    """Operation requires an algebraic integer."""


class RationalElementError(ZformcertError, ValueError):
    """Operation requires an element with distinct embedding values."""


class SingularMatrixError(ZformcertError, ValueError):
    """Matrix inversion or system solving hit a singular matrix."""


class GeometryError(ZformcertError, RuntimeError):
    """A geometric invariant that should always hold failed; indicates a bug."""


class CertificateError(ZformcertError, ValueError):
    """Certificate is malformed beyond the point of named check failures."""
