"""Exception hierarchy shared by all clubplex modules."""

from typing import Optional


class ClubplexError(Exception):
    """Base class for errors raised by clubplex."""


class ParseError(ClubplexError):
    """Malformed graph, manifest or LP input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractError(ClubplexError, ValueError):
    """A caller broke an operation's precondition."""


class CertificationError(ClubplexError, AssertionError):
    """A solver returned a set that fails its own certificate check."""
