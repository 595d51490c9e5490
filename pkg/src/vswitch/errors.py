"""Exception hierarchy.

Every failure raised by the library derives from :class:`VSwitchError`.
Two branches exist so the command line can map them to exit codes:
:class:`ConfigError` covers bad or inconsistent inputs, and
:class:`NumericError` covers points where a requested quantity does not
exist or cannot be computed to the requested accuracy.
"""

from __future__ import annotations


class VSwitchError(Exception):
    """Base class for all library errors."""


class ConfigError(VSwitchError, ValueError):
    """Invalid or inconsistent input parameters."""


class NumericError(VSwitchError, ArithmeticError):
    """A quantity is undefined at the requested point or failed to converge."""


# -- configuration errors ---------------------------------------------------

class NonPositiveMass(ConfigError):
    pass


class NonPositiveDistance(ConfigError):
    pass


class NonPositiveInput(ConfigError):
    pass


class InconsistentScales(ConfigError):
    pass


class VariantScaleMismatch(ConfigError):
    pass


class UnsupportedVariant(ConfigError):
    pass


class MissingCutoffData(ConfigError):
    pass


class EmptyGrid(ConfigError):
    pass


# -- numeric errors ---------------------------------------------------------

class OnLightConeSingularity(NumericError):
    pass


class LightConeCoincidence(NumericError):
    pass


class ShortMeasurementBranch(NumericError):
    pass


class PoleOutsideInterval(NumericError):
    pass


class ExcisionTooWide(NumericError):
    pass


class NonPositiveSigma(NumericError):
    pass


class SigmaOutOfRange(NumericError):
    pass


class BudgetExceeded(NumericError):
    pass


class ExcisionCoversSupport(NumericError):
    pass


class IllConditionedFit(NumericError):
    pass
