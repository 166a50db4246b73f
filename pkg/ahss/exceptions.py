"""Errors raised by the spectral sequence engine."""

from django.core.exceptions import ValidationError


class AHSSError(ValidationError):
    """Invalid page, twist degree, or a differential that does not square to zero."""
