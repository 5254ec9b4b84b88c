"""Error types shared across the package.

Every error carries a machine-readable ``kind`` used by the CLI and the
HTTP service when mapping failures to exit codes / status codes.
"""

from __future__ import annotations


class IndigameError(Exception):
    """Base class for all package errors."""

    kind = "error"


class InvalidSpecError(IndigameError):
    """A constructed object violates its own invariants (bad multiplicity, ...)."""

    kind = "invalid_spec"


class ValidationError(IndigameError):
    """Input data is structurally valid JSON but violates a domain contract."""

    kind = "validation"


class PairParseError(IndigameError):
    """Malformed pair/trace file; carries the position of the defect."""

    kind = "parse"

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class PreconditionError(IndigameError):
    """An operation precondition failed; the message names the offender."""

    kind = "precondition"


class ResourceLimitError(IndigameError):
    """A size cap was exceeded.  Never downgraded to an approximation."""

    kind = "resource_limit"


class BudgetExceededError(IndigameError):
    """A wall-clock budget or node budget ran out, or cancellation was requested."""

    kind = "budget"


class NoMoveError(IndigameError):
    """best_move was asked for a move in a terminal position."""

    kind = "no_move"
