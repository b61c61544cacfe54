"""
Exceptions raised by the invariant-theory and Hardy-space core
"""


class QuotientHardyError(Exception):
    """Base class for every error raised by quotient_hardy"""


class ConfigError(QuotientHardyError):
    """Malformed group spec, character selector or run option"""


# group_core

class NotFinite(QuotientHardyError):
    """Closure of the generators exceeded the element cap"""


class Singular(QuotientHardyError):
    """A generator matrix is not invertible"""


class UnsupportedFamily(QuotientHardyError):
    """Unknown named family descriptor"""


# poly_engine

class DimensionMismatch(QuotientHardyError):
    """Operands live in different numbers of variables"""


class NotHolomorphic(QuotientHardyError):
    """A holomorphic polynomial was required but conj(z) terms are present"""


class NotDivisible(QuotientHardyError):
    """Exact division left a remainder above tolerance"""

    def __init__(self, message, remainder_norm=None):
        super().__init__(message)
        self.remainder_norm = remainder_norm


# invariants

class NotReflectionGroup(QuotientHardyError):
    """The group is not generated by its pseudoreflections"""


class NoExponent(QuotientHardyError):
    """No exponent c with chi(a_i) = det(a_i)^c; chi is not multiplicative"""


class InvalidHsop(QuotientHardyError):
    """A polynomial map failed basic-map verification"""


class FactorizationFails(QuotientHardyError):
    """J_theta is not a constant multiple of the product of hyperplane forms"""


class NotInvariant(QuotientHardyError):
    """Polynomial is not G-invariant"""


class SolveFailed(QuotientHardyError):
    """Rewriting in theta-coordinates left a residual above tolerance"""


# hardy

class NotRelativeInvariant(QuotientHardyError):
    """Polynomial is not relative invariant for the requested character"""


class PointOnZeroSet(QuotientHardyError):
    """The generating polynomial vanishes at the requested point"""
