"""Exception hierarchy. Each class maps to one CLI exit code."""


class PermIndexError(Exception):
    exit_code = 1


class UsageError(PermIndexError):
    exit_code = 2


class FormatError(PermIndexError):
    """Unreadable input: bad magic, truncation, ragged CSV, colour PNM, ..."""

    exit_code = 3


class KeyFormatError(FormatError):
    pass


class ConstraintError(PermIndexError, ValueError):
    """Divisibility, width or range violation."""

    exit_code = 4


class DecodeError(PermIndexError):
    """The compound does not decode under this key (wrong key or corrupt data)."""

    exit_code = 5
