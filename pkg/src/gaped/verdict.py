"""Shared verdict type for the gap testers."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .alignment import SuccinctAlignment
from .qstring import QueryLedger


class Answer(enum.Enum):
    CLOSE = "close"
    FAR = "far"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a tester run.

    final_a0 is the finishing diagonal's cost counter when the run ended
    (capped at t+1, the far stopping threshold).  mode_transitions counts
    contiguous/sampling switches; the warm-up tester reports 0.  alignment
    is present exactly when the answer is Close and the tester builds
    certificates.  stats carries tester-specific run counters, if any.
    """

    answer: Answer
    final_a0: int
    ledger: QueryLedger
    mode_transitions: int
    alignment: SuccinctAlignment | None = None
    stats: object | None = None

    @property
    def is_close(self) -> bool:
        return self.answer is Answer.CLOSE
