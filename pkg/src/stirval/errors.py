"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DomainError means the caller asked
for something outside an operation's domain (exit 2), ResourceLimitError
means a configured size cap was exceeded (exit 3), and ConsistencyError
means an internal cross-check failed, which signals a bug rather than
bad input.
"""

from __future__ import annotations


class StirvalError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(StirvalError):
    """An argument lies outside the operation's mathematical domain."""


class ResourceLimitError(StirvalError):
    """A computation would exceed a configured size cap."""


class ConsistencyError(StirvalError):
    """Two routes that must agree produced different answers."""
