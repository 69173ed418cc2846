"""Exception types shared across the package.

Every error raised by ccnet derives from CcnetError so callers can catch
the whole family. The CLI maps subfamilies to stable exit codes:
input/validation problems exit 2, calibration failures exit 3, and
infeasible constraints exit 4.
"""


class CcnetError(Exception):
    """Base class for all ccnet errors."""


class DecodeError(CcnetError):
    """An image file exists but could not be decoded."""


class UnsupportedFormatError(CcnetError):
    """An image file is in a format this tool does not read."""


class EmptyInputError(CcnetError):
    """An operation received zero pixels, zero images, or zero rows."""


class SizeError(CcnetError):
    """An image is too small for the requested metric."""


class ManifestError(CcnetError):
    """A dataset manifest is inconsistent (missing masks, bad paths)."""


class DomainError(CcnetError):
    """A scalar argument is outside its documented domain."""


class ArchValidationError(CcnetError):
    """An architecture description violates a structural invariant."""


class PresetLookupError(CcnetError):
    """Unknown preset or fixture name."""


class InsufficientDataError(CcnetError):
    """Fewer data points than the fit requires."""


class DegenerateRegressionError(CcnetError):
    """Regression inputs have no spread along the independent axis."""


class DegenerateNormalizationError(CcnetError):
    """Min-max normalization of an all-equal sequence."""


class MissingMaskError(CcnetError):
    """A profile lacks blob density where the operation needs it."""


class BudgetTooSmallError(CcnetError):
    """A byte budget too small to hold even one parameter."""


class InfeasibleBudgetError(CcnetError):
    """No feasible multiplier exists for the given budget.

    Carries the minimal feasible budget in bytes so callers can echo it.
    """

    def __init__(self, message: str, minimal_feasible_bytes: int | None = None):
        super().__init__(message)
        self.minimal_feasible_bytes = minimal_feasible_bytes


class InfeasibleEpsilonError(CcnetError):
    """The epsilon sibling would fall below the multiplier clamp."""


class InvalidModelError(CcnetError):
    """A degradation model predicts accuracy gain from pruning."""


class ConfigurationError(CcnetError):
    """Mismatched or incomplete run configuration."""
