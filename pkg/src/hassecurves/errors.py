"""Shared exception types.

Exit-code mapping for the CLI lives in cli.py; library code raises these
directly and never calls sys.exit.
"""


class HasseCurvesError(Exception):
    """Base class for all library errors."""


class BudgetExhausted(HasseCurvesError):
    """A search or precision budget ran out before a result was certified."""


class SearchExhausted(BudgetExhausted):
    """An enumeration hit its budget before finding the requested objects."""


class DegreeIncompatible(HasseCurvesError):
    """Requested curve degree is not divisible by p**iota."""


class ArityMismatch(HasseCurvesError):
    """Number of quadratic coefficient pairs does not match the degree."""


class NonInvertible(HasseCurvesError):
    """A modular inverse required by the residue descent does not exist.

    Usually signals a misclassified iota or a unit outside its expected
    congruence class.
    """


class NoExponent(HasseCurvesError):
    """No even exponent m in (0, p) makes delta a quadratic non-residue."""


class OracleMismatch(HasseCurvesError):
    """The delta decision and the direct C_k scan disagree.

    This cannot happen for correct inputs; it indicates an implementation
    bug and must abort the run rather than be caught and ignored.
    """


class ConditionFailed(HasseCurvesError):
    """A numbered precondition of the descent recipe failed."""

    def __init__(self, index: int, message: str):
        self.index = index
        super().__init__(f"condition ({index}) failed: {message}")


class VerificationFailed(HasseCurvesError):
    """A fully assembled curve failed re-verification."""
