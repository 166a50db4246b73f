"""Errors raised by the graded algebra core."""

from django.core.exceptions import ValidationError


class PresentationError(ValidationError):
    """A presentation, monomial or polynomial string is malformed.

    Raised with a field-keyed message dict, e.g.
    ``PresentationError({"generator": "unknown generator 'b7'"})``.
    """
