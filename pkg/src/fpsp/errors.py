"""Error taxonomy shared by every fpsp module.

Every raised condition has a dedicated class so callers (and the CLI exit-code
logic) can dispatch on type instead of parsing messages.  All of them inherit
from FpspError; anything else escaping the package is a bug.
"""


class FpspError(Exception):
    """Base class for all package errors."""


class NotPrime(FpspError):
    """The requested modulus is composite."""


class TooSmall(FpspError):
    """The requested modulus is below the supported minimum (p >= 3)."""


class BadParams(FpspError):
    """Structurally invalid parameters (bad sizes, duplicates, cap hits)."""


class ZeroInverse(FpspError):
    """Attempt to invert 0 mod p."""


class FieldMismatch(FpspError):
    """Operands live over different fields."""


class ZeroDivisor(FpspError):
    """A ratio-type operation met 0 in a denominator position."""


class ZeroDilation(FpspError):
    """affine() was asked to scale by 0, which collapses the set."""


class ZeroInCodomain(FpspError):
    """A function table would take the value 0 somewhere on F_p^*."""


class ZeroInA(FpspError):
    """The first argument set of an image operation contains 0."""


class BadExponent(FpspError):
    """Moment exponent below 1."""


class BadEpsilon(FpspError):
    """Popularity parameter outside (0, 1)."""


class EmptySet(FpspError):
    """An operation that needs a nonempty set received an empty one."""


class BadP(FpspError):
    """A popular set P is not contained in the difference set it came from."""


class SizeCap(FpspError):
    """A computation would exceed a declared desk-scale cap."""


class HypothesisViolated(FpspError):
    """A theorem's size hypotheses fail on the given instance.

    Ratio rows normally record the violation in hyp_ok instead of raising;
    this is raised only under strict mode for callers that want to refuse
    out-of-range instances outright."""


class ConfigError(FpspError):
    """A sweep configuration is malformed or inconsistent."""


class ParseError(FpspError):
    """A set/function/point/plane file or spec string failed to parse."""
