"""Common utilities for qftlab."""

import os
import sys

FLOAT_DIGITS_ENV = "QFT_LAB_FLOAT_DIGITS"
DEFAULT_FLOAT_DIGITS = 6


def perror(*args, **kwargs):
    """Print error message to stderr.

    Args:
        *args: Arguments to pass to print()
        **kwargs: Keyword arguments to pass to print()
    """
    print(*args, file=sys.stderr, **kwargs)


def float_digits():
    """Significant digits used when printing floats.

    Read from ``QFT_LAB_FLOAT_DIGITS``; a missing, non-integer or non-positive value gives
    the default of 6.
    """
    raw = os.environ.get(FLOAT_DIGITS_ENV)
    if raw is None:
        return DEFAULT_FLOAT_DIGITS
    try:
        digits = int(raw)
    except ValueError:
        digits = 0
    if digits < 1:
        perror(f"Warning: ignoring {FLOAT_DIGITS_ENV}={raw!r}; using {DEFAULT_FLOAT_DIGITS}")
        return DEFAULT_FLOAT_DIGITS
    return digits


def format_float(value, digits=None):
    """Render ``value`` with ``digits`` significant digits, independent of locale."""
    return f"{value:.{digits or float_digits()}g}"
