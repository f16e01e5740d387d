"""
Exception hierarchy for the twist workbench.

Every error derives from WorkbenchError, itself a ValueError, so the
command line can keep one `except ValueError` branch for bad input.
"""


class WorkbenchError(ValueError):
    """Base class for every error raised by the workbench"""


class ArithmeticDomainError(WorkbenchError):
    """An arithmetic kernel was called outside its domain"""


class FormError(WorkbenchError):
    """A binary form is singular, degenerate or not integral"""


class CurveValidationError(WorkbenchError):
    """Twist family parameters or a point violate the family invariants"""


class ConfigurationError(WorkbenchError):
    """A configuration value or config file line is invalid"""


class CorpusError(WorkbenchError):
    """A scan corpus is missing or unreadable"""


class LinkageError(WorkbenchError):
    """A linkage spec or index subset is unusable"""


class InvariantViolation(WorkbenchError):
    """A claim that holds for every valid input failed.

    Attributes:
        claim (str): Short name of the failed claim, e.g. "g | H"
    """

    def __init__(self, claim: str, message: str = ""):
        self.claim = claim
        super().__init__(f"{claim}: {message}" if message else claim)


class DescentError(InvariantViolation):
    """A decomposition or descent precondition failed"""


class CompactComponentError(WorkbenchError):
    """The point lies on the compact real component and is catalogued separately"""

    def __init__(self, point, message: str = ""):
        self.point = point
        super().__init__(message or f"point {point} lies on the compact component")
