"""Errors raised by the universal coefficient engine."""

from django.core.exceptions import ValidationError


class UCTError(ValidationError):
    """A twist that does not fit the space, or arguments outside the computed range."""


class RefusedComputation(UCTError):
    """A verdict whose hypotheses are not available: a missing structural flag,
    a cover theorem whose conditions on n fail, or a module not generated by
    the classes the twist clashes with.
    """
