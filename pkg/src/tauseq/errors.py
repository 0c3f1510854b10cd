"""Error types shared across the package.

Every error carries the process exit code used by the command line front end:
1 for file/parse problems, 2 for domain errors (bad names, invalid objects),
3 for enumeration cap overruns.
"""


class TauseqError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 2


class InputError(TauseqError):
    """A file could not be read or parsed."""

    exit_code = 1


class DomainError(TauseqError):
    """A request was well-formed but mathematically invalid here."""

    exit_code = 2


class CapExceededError(TauseqError):
    """Enumeration exceeded the configured cap (algebra may not be finite type)."""

    exit_code = 3
