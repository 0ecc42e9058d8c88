"""Exception types shared across the package."""


class PeifferError(ValueError):
    """Base class for input and contract errors."""


class AlphabetMismatch(PeifferError):
    pass


class WordSyntaxError(PeifferError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PresentationSyntaxError(PeifferError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidSequence(PeifferError):
    pass


class MoveError(PeifferError):
    pass


class ClassCountError(PeifferError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration grew past its element cap."""
