"""Errors raised by the Steenrod engine."""

from django.core.exceptions import ValidationError


class SteenrodError(ValidationError):
    """A malformed ring, square table or non-homogeneous argument."""
