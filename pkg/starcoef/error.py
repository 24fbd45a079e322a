"""Exception classes for starcoef"""
# pylint: disable=C0103,C0111
import traceback


class Error(Exception):
    """Base class for expected exceptions"""
    def __init__(self, msg, tb=None):
        Exception.__init__(self)
        self.msg = msg
        if tb is None:
            self.traceback = traceback.format_exc()
        else:
            self.traceback = tb

    def __repr__(self):
        return repr((self.msg, self.traceback))

    def __str__(self):
        return str(self.msg)


class ConfigErrors(Error):
    """Class for errors when validating config; can contain multiple errors."""
    def __init__(self, msg, errors):
        Error.__init__(self, "Config errors: %s" % msg)
        self.errors = errors

    def __str__(self):
        return (self.msg +
                ":\n- " +
                "\n- ".join(self.errors) +
                "\n")

    def __repr__(self):
        return repr((self.msg, self.errors))


class UsageError(Error):
    """Error raised when invalid arguments are passed"""
    def __init__(self, msg, tb=None):
        Error.__init__(self, "Usage error: " + msg + "\n", tb)


class SeriesError(Error):
    """Error in truncated power series arithmetic"""
    def __init__(self, msg, tb=None):
        Error.__init__(self, "Series error: " + msg, tb)


class NonzeroConstantTerm(SeriesError):
    """The inner series of a composition does not vanish at 0."""
    def __init__(self, c0):
        SeriesError.__init__(self, "inner series has nonzero constant term %r" % c0)


class NotUnitSeries(SeriesError):
    """A real power was requested of a series whose constant term is not 1."""
    def __init__(self, c0):
        SeriesError.__init__(self, "constant term must be exactly 1 for real powers, got %r" % c0)


class NotNormalized(SeriesError):
    """A schlicht series does not start z + ..."""
    def __init__(self, c0, c1):
        SeriesError.__init__(self, "expected c_0 = 0 and c_1 = 1, got c_0 = %r, c_1 = %r" % (c0, c1))


class OrderExhausted(SeriesError):
    """More coefficients were requested than the truncation provides."""
    def __init__(self, wanted, available):
        SeriesError.__init__(self, "need coefficients up to index %d but only %d are available"
                             % (wanted, available))


class ZeroPower(SeriesError):
    """p = 0 was passed where a nonzero power is required."""
    def __init__(self):
        SeriesError.__init__(self, "power p must be nonzero")


class PrecisionErosion(SeriesError):
    """A coefficient grew past the magnitude guard or stopped being finite."""
    def __init__(self, where, magnitude, guard):
        SeriesError.__init__(self, "coefficient magnitude %.3g in %s exceeds guard %.3g"
                             % (magnitude, where, guard))
        self.magnitude = magnitude


class DomainError(Error):
    """A parameter lies outside the domain of a bound or constructor"""


class AlphaOutOfRange(DomainError):
    """alpha must satisfy 0 <= alpha < 1"""
    def __init__(self, alpha):
        DomainError.__init__(self, "alpha must lie in [0, 1), got %r" % alpha)
        self.alpha = alpha


class BadIndex(DomainError):
    """A coefficient or interval index is out of its allowed range"""
    def __init__(self, name, value, constraint):
        DomainError.__init__(self, "%s = %r violates %s" % (name, value, constraint))


class WrongRegime(Error):
    """An exploratory search was requested where the bound is already sharp."""
    def __init__(self, target, n, alpha, regime):
        Error.__init__(self, "%s bound at n=%d, alpha=%r is in regime %s, which is sharp; "
                       "search needs an open regime" % (target, n, alpha, regime))
        self.regime = regime


def type_of_error(err_object):
    if isinstance(err_object, Exception):
        return str(err_object.__class__.__name__)
    else:
        return "Unknown"
