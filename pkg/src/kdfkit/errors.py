"""Exception hierarchy shared by the kdfkit modules."""


class KdfError(Exception):
    """Base class for all kdfkit errors."""


class PoleError(KdfError, ValueError):
    """A Gamma function argument sits on a pole (non-positive integer)."""


class UncancelledPoleError(PoleError):
    """A Gamma quotient has more numerator poles than denominator poles."""


class RangeError(KdfError, ValueError):
    """An integer argument lies outside the supported range."""


class DenominatorPoleError(KdfError, ZeroDivisionError):
    """A series denominator Pochhammer factor vanishes before the series terminates."""


class AccelerationFailure(KdfError, ArithmeticError):
    """The epsilon table developed non-finite entries."""


class UnknownIdentity(KdfError, KeyError):
    """The identity id is not registered."""

    def __str__(self):
        return f"unknown identity {self.args[0]!r}" if self.args else "unknown identity"


class MissingParam(KdfError, ValueError):
    """A free symbol of an identity was not bound."""


class UnexpectedParam(KdfError, ValueError):
    """A symbol was bound that the identity does not take."""
