import logging

from . import log_name

logger = logging.getLogger(f"{log_name}{__name__}")


class ScenvalError(Exception):
    """Base class for every error raised on purpose by scenval.

    ``exit_code`` is what the command line returns when the error escapes a subcommand.
    """

    exit_code = 4

    def __init__(self, mesg="None given", err_type=None):
        super().__init__(mesg)
        self.mesg = mesg
        self.err_type = err_type if err_type is not None else type(self).__name__


# Validation and shape errors. CLI exit code 3.
class InputError(ScenvalError):
    exit_code = 3


class DimensionMismatch(InputError):
    pass


class NonFinite(InputError):
    pass


class TooSmall(InputError):
    pass


class KTooLarge(InputError):
    pass


class UnequalSampleSizes(InputError):
    pass


class InvalidRho(InputError):
    pass


class EmptySchedule(InputError):
    pass


class UnsupportedDimension(InputError):
    pass


# I/O and file content errors. CLI exit code 2.
class ParseError(ScenvalError):
    exit_code = 2


class NumericalError(ScenvalError):
    exit_code = 4

    def __init__(self, mesg="None given", err_type=None, estimate=None, error_estimate=None):
        super().__init__(mesg, err_type)
        logger.error(f"{self.err_type}: {mesg}")
        self.estimate = estimate
        self.error_estimate = error_estimate


class QuadratureNotConverged(NumericalError):
    pass
