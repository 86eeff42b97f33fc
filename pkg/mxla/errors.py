"""Error hierarchy shared by every module; each class knows its CLI exit code."""


class ArrayModelError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class InvalidIndexError(ArrayModelError, IndexError):
    """Element index outside the symmetric module/antenna grid."""


class DomainError(ArrayModelError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class UndefinedRingError(DomainError):
    """Distance ring requested at θ = ±π/2."""


class SingularGeometryError(ArrayModelError):
    """Observation point coincides with an element or module reference."""


class NotFactorizableError(ArrayModelError):
    """Steering vector is not rank-1 in the module×antenna reshaping."""

    def __init__(self, message: str, singular_ratio: float):
        super().__init__(message)
        self.singular_ratio = singular_ratio


class InsufficientDataError(ArrayModelError):
    """Too few samples for the requested analysis."""


class ConfigError(ArrayModelError):
    """Bad config file, sweep bounds, preset or model name."""

    exit_code = 1


class ExportError(ArrayModelError):
    """Output could not be written."""

    exit_code = 3

    def __init__(self, path, reason: str):
        super().__init__(f"cannot write {path}: {reason}")
        self.path = path
