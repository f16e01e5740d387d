"""
Constant definitions for the twist workbench.
Includes curve models, point classes, admissibility checks, exceptional kinds, exit codes and logging levels.
"""

import sys
from enum import IntEnum

if sys.version_info >= (3, 12):
    from enum import StrEnum
else:  # Python < 3.12: StrEnum with the 3.12 semantics of `value in Enum`
    from enum import Enum, EnumMeta

    class _StrEnumMeta(EnumMeta):
        def __contains__(cls, value):
            if isinstance(value, cls):
                return True
            return value in cls._value2member_map_

    class StrEnum(str, Enum, metaclass=_StrEnumMeta):
        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()

# Corpus files and CSV tables carry these in their headers
CORPUS_FORMAT_VERSION = 1
CSV_SCHEMA_VERSION = 1

# Exact rational accumulation limit for the rho mean; mpmath above this
RHO_EXACT_LIMIT = 10**4
RHO_MP_PRECISION = 128

# Interval width for real root isolation, 2^-64
ROOT_ISOLATION_EPS = 2**-64

# Seminvariant bound constants asserted by quartic reduction
REDUCTION_C1 = 16
REDUCTION_C2 = 16


class Model(StrEnum):
    """Weierstrass models of a quadratic twist family"""

    SHORT = "short"  # y^2 = x^3 + A D^2 x + B D^3
    FULL = "full"  # y^2 = x (x - A D)(x - B D)
    PARTIAL = "partial"  # y^2 = x (x^2 + A D x + B D^2)


class TorsionKind(StrEnum):
    """Factorisation type of the defining cubic over Q"""

    IRREDUCIBLE = "irreducible"
    PARTIAL = "partial"  # one rational root
    FULL = "full"  # three rational roots


class Component(StrEnum):
    """Real component hosting an integral point"""

    UNBOUNDED = "U"
    COMPACT = "C"


class LogLevel(IntEnum):
    """Logging levels for the workbench

    Levels form a hierarchy where each level includes output from levels
    below it in numeric value:
        SILENT (0): Only results, tables and summaries
        NORMAL (1): Everything from SILENT + one line per completed operation
        DEBUG  (2): Everything from NORMAL + entry/exit traces
    """

    SILENT = 0  # Base level
    NORMAL = 1  # Mid level
    DEBUG = 2  # Most verbose


class ExitCode(IntEnum):
    """Process exit codes of the command line"""

    SUCCESS = 0
    VERIFICATION_FAILURE = 1
    USAGE_ERROR = 2


class AdmissibilityCheck(IntEnum):
    """Properties an unlinked index set must pass to count towards the main term"""

    NOT_EXCLUDED = 1  # not contained in an excluded subset
    UNLINKED = 2
    SINGLE_SQUARE = 3  # indices without outgoing pairing carry a square class
    PAIR_SQUARE = 4  # indices with equal pairing rows carry equal square classes


class ExceptionKind(StrEnum):
    """Square-class coincidences that escape the generic descent"""

    FIRST = "first"  # xBD and (x - AD)(B - A)D squares, full model
    SECOND = "second"  # xD a square on a square family A = a^2, B = b^2
    PARTIAL = "partial"  # xB a square, partial model
