"""Exception hierarchy shared by every module."""

from __future__ import annotations


class UrlIntentError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(UrlIntentError):
    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(where + message)


class FormatError(ParseError):
    """A TREC run/qrels line does not have the expected columns."""


class ValidationError(UrlIntentError):
    pass


class UnknownLabel(UrlIntentError, LookupError):
    pass


class UnknownSourceLabel(UrlIntentError, LookupError):
    pass


class UnknownId(UrlIntentError, LookupError):
    pass


class UnknownDoc(UnknownId):
    pass


class DuplicateId(ValidationError):
    pass


class WrongRaterCount(ValidationError):
    pass


class RaggedMatrix(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class IdMismatch(ValidationError):
    pass


class UniverseMismatch(ValidationError):
    pass
