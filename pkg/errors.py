"""
Exception types raised across the extension engine.

Mathematical check failures are never raised; they are returned as failing
reports. These exceptions signal invalid input or exhausted caps.
"""


class ScalarDivisionError(ZeroDivisionError):
    """Division by the zero Gaussian rational."""


class ParseError(ValueError):
    """Malformed textual scalar, field or monomial."""


class DimensionMismatchError(ValueError):
    """Operands built for different spacetime or gauge dimensions."""


class UnsupportedFieldError(ValueError):
    """Input outside the polynomial-in-space, Fourier-in-time class."""


class ParameterConstraintError(ValueError):
    """Current-algebra or highest-weight data violating a required constraint."""


class ConfigError(ValueError):
    """Invalid configuration file or command-line value."""


class DegreeCapError(RuntimeError):
    """An intermediate state exceeded the configured degree or width cap."""


class BudgetViolationError(RuntimeError):
    """A realized operator shifted degree outside its declared frequency budget."""


class RewriteDepthError(RuntimeError):
    """PBW rewriting exceeded its depth cap."""


class RankDeficiencyError(RuntimeError):
    """
    Cocycle fit design matrix does not have full column rank.

    identified maps the columns still fixed by the equations to their values;
    missing lists the columns left free.
    """

    def __init__(self, message: str, identified=None, missing=()):
        super().__init__(message)
        self.identified = dict(identified or {})
        self.missing = list(missing)


class ResidualError(RuntimeError):
    """Cocycle fit left a nonzero residual."""
