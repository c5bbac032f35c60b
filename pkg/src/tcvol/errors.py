"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class TcvolError(Exception):
    exit_code = 1


class ConfigurationError(TcvolError, ValueError):
    """Invalid model, layout or run parameters."""

    exit_code = 2


class DataFormatError(TcvolError, ValueError):
    """Malformed input data (bad header, NaN, uneven spacing)."""

    exit_code = 3


class NumericalDegeneracy(TcvolError, ArithmeticError):
    """The estimate cannot be formed, e.g. a non-positive normalising mean."""

    exit_code = 4


class UnsupportedModelError(TcvolError, NotImplementedError):
    exit_code = 2
