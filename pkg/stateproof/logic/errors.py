"""Exception hierarchy shared by every stateproof module."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .decorations import Kind


class StateProofError(Exception):
    """Base class for all errors raised by stateproof."""


class DuplicateLocation(StateProofError):
    def __init__(self, location: Any):
        super().__init__(f"Location '{location}' is declared more than once")
        self.location = location


class EmptyCarrier(StateProofError):
    def __init__(self, location: Any):
        super().__init__(f"Location '{location}' has an empty carrier")
        self.location = location


class UnknownLocation(StateProofError):
    def __init__(self, location: Any):
        super().__init__(f"Location '{location}' is not declared in the signature")
        self.location = location


class TypeMismatch(StateProofError):
    """Two object types that must agree do not.

    Carries both boundary types and, when raised while elaborating source text, the span
    of the offending fragment.
    """

    def __init__(self, message: str, expected: Any = None, actual: Any = None, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.expected = expected
        self.actual = actual
        self.span = span

    def with_span(self, span: tuple[int, int]) -> TypeMismatch:
        if self.span is None:
            self.span = span
        return self

    def __str__(self) -> str:
        if self.span is None:
            return self.message
        return f"{self.message} (at {self.span[0]}..{self.span[1]})"


class ShapeMismatch(StateProofError):
    """A semantic value does not inhabit the object type it is used at."""


class SideConditionViolated(StateProofError):
    def __init__(self, message: str, required: Kind | None = None, actual: Kind | None = None):
        super().__init__(message)
        self.required = required
        self.actual = actual


class LocationClash(StateProofError):
    def __init__(self, location: Any):
        super().__init__(f"Locations must be distinct, got '{location}' twice")
        self.location = location


class InvalidProof(StateProofError):
    """`conclude` was asked for the conclusion of a proof the kernel rejects."""


class ParseError(StateProofError):
    def __init__(self, message: str, position: int | None = None, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.position = position
        self.line = line
        self.column = column

    def __str__(self) -> str:
        if self.line is None:
            return self.message
        return f"{self.message} (line {self.line}, column {self.column})"


class ScriptError(StateProofError):
    """A proof script is malformed (schema violation, dangling reference, duplicate lemma)."""


class EnumerationTooLarge(StateProofError):
    def __init__(self, cases: int, limit: int):
        super().__init__(f"Semantic check needs {cases} input/store cases, limit is {limit}")
        self.cases = cases
        self.limit = limit


class NoInhabitant(StateProofError):
    """No term of the requested boundary exists within the requested kind."""
