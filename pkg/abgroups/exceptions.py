"""Errors raised by the abelian group arithmetic."""

from django.core.exceptions import ValidationError


class AbGroupError(ValidationError):
    """A malformed group description or a value outside the oracle tables."""
