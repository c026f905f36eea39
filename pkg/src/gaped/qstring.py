"""Byte strings instrumented with query accounting.

Every algorithm in this package reads its inputs exclusively through
:class:`QueriedString`, so the number of positions an algorithm looked at is
an observable fact rather than an estimate.  A read inside the string's
bounds returns the byte value and is recorded; a read outside the bounds
returns ``None`` and leaves the ledger untouched.

Out-of-range semantics: a position outside the string compares unequal to
every in-range byte and unequal to other out-of-range positions.  Comparison
sites must therefore go through :func:`bytes_match` instead of ``==`` (two
``None`` results would otherwise compare equal).
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class QueryLedger:
    """Snapshot of query counts for one (x, y) pair.

    distinct counts are the number of distinct positions ever read in each
    string; total_accesses counts every in-range read, repeats included.
    Acceptance bounds are stated over distinct counts.
    """

    distinct_x: int
    distinct_y: int
    total_accesses: int

    @property
    def distinct_total(self) -> int:
        return self.distinct_x + self.distinct_y


class QueriedString:
    """An immutable byte string that counts reads.

    ``read(i)`` returns the byte at ``i`` as an int, or ``None`` when ``i``
    is outside ``[0, len)``.  Distinct and total counts cover in-range reads
    only: an out-of-range read never touches the data and never extends the
    ledger.
    """

    __slots__ = ("data", "_seen", "distinct", "total")

    def __init__(self, data: bytes | bytearray | str):
        if isinstance(data, str):
            data = data.encode("ascii")
        self.data = bytes(data)
        self._seen = bytearray(len(self.data))
        self.distinct = 0
        self.total = 0

    def __len__(self) -> int:
        return len(self.data)

    def read(self, i: int) -> int | None:
        if 0 <= i < len(self.data):
            self.total += 1
            if not self._seen[i]:
                self._seen[i] = 1
                self.distinct += 1
            return self.data[i]
        return None

    def peek(self, i: int) -> int | None:
        """Unmetered read; reserved for oracles and certificate validation."""
        if 0 <= i < len(self.data):
            return self.data[i]
        return None

    def read_all(self) -> bytes:
        """Mark every position read and return the data.

        The exact oracles look at everything by nature; routing them through
        this keeps their ledgers honest.
        """
        n = len(self.data)
        self.total += n
        self._seen = bytearray(b"\x01") * n if n else bytearray()
        self.distinct = n
        return self.data

    def positions_read(self) -> list[int]:
        return [i for i, s in enumerate(self._seen) if s]

    def reset_ledger(self) -> None:
        self._seen = bytearray(len(self.data))
        self.distinct = 0
        self.total = 0


def bytes_match(a: int | None, b: int | None) -> bool:
    """True iff both reads are in range and equal.

    Encodes the out-of-range rule: an out-of-range position mismatches
    everything, including another out-of-range position.
    """
    return a is not None and b is not None and a == b


def as_queried(s: QueriedString | bytes | bytearray | str) -> QueriedString:
    """Wrap raw bytes for callers that do not care about the ledger."""
    return s if isinstance(s, QueriedString) else QueriedString(s)


def ledger_snapshot(x: QueriedString, y: QueriedString) -> QueryLedger:
    """Current counts for the pair, cheap enough to call per row."""
    return QueryLedger(
        distinct_x=x.distinct,
        distinct_y=y.distinct,
        total_accesses=x.total + y.total,
    )
