"""Exception types shared across the package."""


class BesError(Exception):
    """Base class for all domain errors."""


class ParseError(BesError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class WellFormednessError(BesError):
    """A proposition variable is bound by more than one equation."""


class OpenSystemError(BesError):
    """An operation requiring a closed equation system got an open one."""


class NotBessyError(BesError):
    """A structure graph violates the constraints needed for translation."""


class UnrankedCycleError(BesError):
    """Normalisation found a cycle consisting entirely of unranked nodes."""
