"""Errors raised by the space catalog."""

from django.core.exceptions import ValidationError


class CatalogError(ValidationError):
    """An invalid constructor argument or a document that breaks a descriptor invariant.

    Raised with a dict keyed by the offending field, e.g.
    ``CatalogError({"flags": "b0-killed is not licensed for BO<8>"})``.
    """


class DocumentParseError(CatalogError):
    """A catalog document that is not well-formed text.

    Attributes
    ----------
    line, column : int or None
        Position of the first syntax error, 1-based.
    """

    def __init__(self, message, line=None, column=None):
        super().__init__({"document": message})
        self.line = line
        self.column = column
