"""Exception hierarchy.

Each error carries an ``exit_code`` used by the command line front end:
1 for configuration problems, 2 for failed mathematical assertions and
3 for precision/truncation failures.
"""


class SiegelSignsError(Exception):
    exit_code = 2


class ConfigError(SiegelSignsError, ValueError):
    exit_code = 1


class DomainError(SiegelSignsError, ValueError):
    exit_code = 1


class PrecisionError(SiegelSignsError):
    exit_code = 3


class ZeroLeadingTerm(SiegelSignsError, ZeroDivisionError):
    pass


class PrecisionTooLow(PrecisionError):
    pass


class PrecisionExceeded(PrecisionError):
    pass


class TruncationInsufficient(PrecisionError):
    pass


class RadiusTooSmall(PrecisionError):
    pass


class NotInSpan(SiegelSignsError):
    pass


class AllTaylorVanish(SiegelSignsError):
    pass


class NotPositiveDefinite(SiegelSignsError, ValueError):
    pass


class NotUnimodular(SiegelSignsError, ValueError):
    pass


class NoNonzeroWithinBound(SiegelSignsError):
    pass
