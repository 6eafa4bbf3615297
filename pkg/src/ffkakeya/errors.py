"""Exception types shared across the package."""


class FFKakeyaError(Exception):
    """Base class for all package-specific errors."""


class NonPrime(FFKakeyaError):
    """The requested characteristic is not a prime number."""


class ReducibleModulus(FFKakeyaError):
    """The supplied modulus polynomial factors over F_p."""


class UnsupportedFieldSize(FFKakeyaError):
    """q = p^m exceeds the supported size guard (q <= 2^16)."""


class DivisionByZero(FFKakeyaError, ZeroDivisionError):
    """Division by the zero element of a finite field."""


class MixedFields(FFKakeyaError):
    """Operands belong to different field specifications."""


class ArityMismatch(FFKakeyaError):
    """Exponent vectors or polynomials have incompatible arity."""


class ZeroPolynomial(FFKakeyaError):
    """Operation undefined for the zero polynomial."""


class BadEll(FFKakeyaError):
    """Weighted-degree parameter ell must be >= 2."""


class EllOutOfRange(FFKakeyaError):
    """Degree parameter ell violates 2 <= ell < q."""


class NotMultipleOfQ(FFKakeyaError):
    """Parameter k must be a positive multiple of q."""


class DimensionMismatch(FFKakeyaError):
    """Point sets or instances live in different dimensions."""


class SizeGuard(FFKakeyaError):
    """Requested computation exceeds the desk-scale size guard."""


class SearchSpaceTooLarge(FFKakeyaError):
    """Exhaustive search space exceeds the configuration guard."""


class PreconditionFailed(FFKakeyaError):
    """A replay check's hypothesis does not hold for the given inputs."""
