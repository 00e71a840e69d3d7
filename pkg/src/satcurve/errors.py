"""Exception types shared across the package.

Exit-code mapping used by the CLI: input problems (parse errors, unknown
variables, non-germs) are "usage" errors; mathematical precondition
failures are domain errors; hitting the internal precision cap is its own
category so callers can distinguish "retry with more budget" from "bad
input".
"""


class SatcurveError(Exception):
    """Base class for all package errors."""


class PolynomialSyntaxError(SatcurveError):
    """Input text does not conform to the polynomial grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(SatcurveError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r} (at position {position})")
        self.name = name
        self.position = position


class NotAGerm(SatcurveError):
    """The curve does not define a germ at the origin (f(0,0) != 0 or f == 0)."""


class NotYRegular(SatcurveError):
    """f(0, y) vanishes identically; the y-direction is not finite over x."""


class PrecisionOverflow(SatcurveError):
    """An internal iteration or truncation cap was exceeded."""


class InsufficientTruncation(SatcurveError):
    """A decision needs more series terms than the stored truncation order."""


class DenominatorVanishesOnBranch(SatcurveError):
    """The denominator restricts to zero on some branch; the fraction is undefined there."""

    def __init__(self, branch_id: int):
        super().__init__(f"denominator vanishes identically on branch {branch_id}")
        self.branch_id = branch_id


class EmptyIdealError(SatcurveError):
    """No usable generators: the list is empty or all vanish on a branch."""


class FiberNotReduced(SatcurveError):
    def __init__(self, t_value):
        super().__init__(f"family fiber at t={t_value} has a multiple factor")
        self.t_value = t_value


class RadiusTooLarge(SatcurveError):
    """Numeric evaluation requested outside the branch validity radius."""
