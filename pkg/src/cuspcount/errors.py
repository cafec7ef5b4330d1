"""Exception types and process exit codes shared across the package."""

from __future__ import annotations


class ValidationError(ValueError):
    """Malformed query, flag combination, key text, or input file."""


class FinitenessError(ValidationError):
    """Condition weight does not match the family dimension, so the count is not a number."""


class ConsistencyError(ArithmeticError):
    """An exactness invariant failed (non-integral division, conflicting stored values)."""


class OracleDataMissingError(LookupError):
    """Raised when required stored counts are absent.

    ``keys`` holds every canonical key the failed computation needed,
    sorted and de-duplicated, so a caller can provision them in one pass.
    """

    def __init__(self, keys):
        self.keys = sorted(set(keys))
        super().__init__("missing oracle data for %d key(s)" % len(self.keys))


EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ORACLE = 3
EXIT_CONSISTENCY = 4
