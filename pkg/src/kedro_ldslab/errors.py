"""Exceptions raised across the package.

Every class carries the exit code the CLI reports for it, so library code only has to raise.
"""


class LdsLabError(Exception):
    exit_code = 3


# Data and validation problems (exit 1)


class DataError(LdsLabError):
    exit_code = 1


class InputNotFoundError(DataError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"input file not found: {path}")


class ParseError(DataError):
    def __init__(self, path, message: str, line: int | None = None):
        self.path = path
        self.line = line
        where = f"{path}:{line}" if line is not None else f"{path}"
        super().__init__(f"{where}: {message}")


class SchemaError(DataError):
    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class DomainError(DataError):
    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class LengthError(DataError):
    pass


class RangeError(DataError):
    pass


class MissingColumnError(DataError):
    pass


class DimensionError(DataError):
    pass


class InvalidK(DataError):
    pass


class MappingMismatch(DataError):
    pass


class NotLds(DataError):
    pass


class MissingDesignated(DataError):
    pass


class InvalidDims(DataError):
    pass


class StepIndexError(DataError, IndexError):
    pass


class IoError(DataError):
    pass


class InvalidInputs(DataError):
    """Raised with the issues of a failed input validation."""

    def __init__(self, issues):
        self.issues = tuple(issues)
        listing = "; ".join(f"{i.code}: {i.message}" for i in self.issues)
        super().__init__(f"invalid inputs ({len(self.issues)} issues): {listing}")


# Model construction and internal invariants (exit 3)


class ModelError(LdsLabError):
    exit_code = 3


class DuplicateName(ModelError):
    pass


class InvertedBounds(ModelError):
    pass


class UnknownVariable(ModelError):
    pass


class EmptyClusterError(ModelError):
    pass


class HandleMismatch(ModelError):
    pass


class InvariantError(ModelError):
    pass


# Solver failures (exit 2)


class SolverError(LdsLabError):
    exit_code = 2


class SizeLimit(SolverError):
    pass


class NumericalError(SolverError):
    pass


class SpawnError(SolverError):
    pass


class ExitCodeError(SolverError):
    def __init__(self, returncode: int, stderr: str):
        self.returncode = returncode
        self.stderr = stderr
        super().__init__(f"solver exited with code {returncode}: {stderr.strip()}")


class SolutionParseError(SolverError):
    pass


class SolverTimeout(SolverError):
    pass


class StatusError(SolverError):
    pass
