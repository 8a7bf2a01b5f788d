"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map
failures to stable exit statuses.
"""

from __future__ import annotations


class DTowerError(Exception):
    code = "ERROR"

    def __init__(self, message: str, ids: tuple = ()) -> None:
        super().__init__(message)
        self.message = message
        self.ids = tuple(ids)


class ComplexParseError(DTowerError):
    """Structurally malformed input: bad JSON, duplicate ids, dangling arrows."""

    code = "PARSE"


class InvalidComplexError(DTowerError):
    """A complex failed validation (d^2 != 0, not filtered, bad gradings)."""

    code = "INVALID"

    def __init__(self, message: str, report=None) -> None:
        ids: tuple = ()
        if report is not None:
            ids = tuple(i for _, group in report.violations for i in group)
        super().__init__(message, ids)
        self.report = report


class SliceRankError(DTowerError):
    code = "SLICE_RANK"


class GradingConflictError(DTowerError):
    code = "GRADING_CONFLICT"


class UngradedTouchedError(DTowerError):
    code = "UNGRADED_TOUCHED"


class KeyOutOfWindowError(DTowerError):
    code = "KEY_OUT_OF_WINDOW"


class NoTowerError(DTowerError):
    code = "NO_TOWER"


class WindowExhaustedError(DTowerError):
    """Raised when a descent runs off the truncation window; callers enlarge it."""

    code = "WINDOW_EXHAUSTED"


class NotACycleError(DTowerError):
    code = "NOT_A_CYCLE"


class PreconditionError(DTowerError):
    code = "PRECONDITION"


class OddSignatureError(DTowerError):
    code = "ODD_SIGNATURE"


class TruncationTooSmallError(DTowerError):
    code = "TRUNCATION_TOO_SMALL"


class UnstableError(DTowerError):
    code = "UNSTABLE"
