"""Errors raised by the module engine."""

from django.core.exceptions import ValidationError


class ModuleError(ValidationError):
    """Malformed module data, an invalid character, or an algebra mismatch."""
