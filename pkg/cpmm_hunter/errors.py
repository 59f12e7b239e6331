"""Exception hierarchy."""

from typing import Iterable, List, Optional, Tuple


class CpmmHunterError(Exception):
    """Base class for all errors raised by cpmm-hunter."""


class SpecError(CpmmHunterError):
    """A token specification document failed validation.

    Each issue is a ``(field_path, message)`` pair, where the path is dotted
    (``behavior.0.rate_bps``) so it points at the offending field.
    """

    def __init__(self, issues: Iterable[Tuple[str, str]]):
        self.issues: List[Tuple[str, str]] = list(issues)
        super().__init__("\n".join(f"{path}: {message}" if path else message
                                   for path, message in self.issues))


class CorpusError(CpmmHunterError):
    """A corpus file is malformed or internally inconsistent."""


class UnknownEntityError(CpmmHunterError):
    """A token, pool or hook id does not exist in the world."""


class Revert(CpmmHunterError):
    """A simulated call reverted.

    Reverts are ordinary outcomes of test-case execution. The executor turns
    them into ``TxResult.reverted`` and rolls the state back.
    """

    def __init__(self, reason: str, call_index: Optional[int] = None):
        self.reason = reason
        self.call_index = call_index
        super().__init__(reason)


class ScanTimeout(CpmmHunterError):
    """The per-target deadline passed before the scan finished."""


class ReplayMismatchError(CpmmHunterError):
    """Re-executing a report did not reproduce the recorded result."""
