__all__ = [
    "CotreeException",
    "BubbleException",
    "WrappedException",
    "InputError",
    "NotInTree",
    "RootReached",
    "PositionOutOfRange",
    "EmptyCode",
    "InvalidCharacter",
    "InvalidPairText",
]


from typing import Any, ClassVar


class CotreeException(Exception):
    """Base class for cotree exceptions."""

    exit_code: ClassVar[int] = 1


class BubbleException(CotreeException):
    """Exceptions inheriting from this class will bubble up through exception wrappers."""


class WrappedException(BubbleException):
    """Raised to wrap an underlying exception."""

    __cause__: Exception
    hide_wrapped_exception: bool

    def __init__(self, *args: object) -> None:
        super().__init__(*args)
        self.hide_wrapped_exception = False


class InputError(CotreeException):
    """Raised when user supplied text or arguments can't be used."""

    exit_code: ClassVar[int] = 2


class NotInTree(CotreeException):
    """Raised when a pair is not a vertex of the tree."""

    pair: Any

    def __init__(self, pair: Any):
        super().__init__(pair)
        self.pair = pair

    def __str__(self) -> str:
        return f"NotInTree: {self.pair} is not a coprime pair [a,b] with 0 < a < b."


class RootReached(CotreeException):
    """Raised when trying to reduce the root of the tree."""

    pair: Any

    def __init__(self, pair: Any):
        super().__init__(pair)
        self.pair = pair

    def __str__(self) -> str:
        return f"RootReached: {self.pair} is the root and has no parent."


class PositionOutOfRange(CotreeException):
    """Raised when a 1-based code position doesn't exist."""

    code: str
    position: int

    def __init__(self, code: str, position: int):
        super().__init__(code, position)
        self.code = code
        self.position = position

    def __str__(self) -> str:
        return (
            f"PositionOutOfRange: position {self.position} is outside "
            f'of code "{self.code}" (length {len(self.code)}).'
        )


class EmptyCode(CotreeException):
    """Raised when a statistic is requested for the empty code."""

    operation: str

    def __init__(self, operation: str):
        super().__init__(operation)
        self.operation = operation

    def __str__(self) -> str:
        return f"EmptyCode: {self.operation} is undefined for the empty code."


class InvalidCharacter(InputError):
    """Raised when parsing a code that contains something other than 0 and 1."""

    text: str
    position: int

    def __init__(self, text: str, position: int):
        super().__init__(text, position)
        self.text = text
        self.position = position

    def __str__(self) -> str:
        char = self.text[self.position - 1]
        return f"InvalidCharacter: {char!r} at position {self.position} in {self.text!r}."


class InvalidPairText(InputError):
    """Raised when a pair argument doesn't hold two positive integers."""

    text: str

    def __init__(self, text: str):
        super().__init__(text)
        self.text = text

    def __str__(self) -> str:
        return f'Expected two positive integers "a,b" or "a b" but got {self.text!r}.'
