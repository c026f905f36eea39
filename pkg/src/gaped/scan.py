"""Banded selective scan: exact edit distance by tracking potent diagonals.

The scan walks the grid row by row but touches only an active set of
diagonals.  A diagonal whose cell is *dominated* by a cheaper in-neighbor
only matters when that neighbor is itself potent and about to pay for a
mismatch; everything else can be discarded, because its cost cannot change
on the next row.  Active diagonals are charged exactly when a potent cell
faces a mismatch, so the per-diagonal counters trace true grid costs.

Bookkeeping: each diagonal keeps its counter plus a one-deep history (the
value before its most recent increment, and the row of that increment) and
the last row at which it was judged potent.  That is enough to answer every
query the potency rule makes, since a diagonal changes at most once per row
and the rule only looks one row back.
"""

from __future__ import annotations

import enum
from bisect import insort
from dataclasses import dataclass, field

from .qstring import QueriedString, as_queried, bytes_match


class Domination(enum.Flag):
    NONE = 0
    BY_LEFT = enum.auto()
    BY_UPPER_RIGHT = enum.auto()
    BOTH = BY_LEFT | BY_UPPER_RIGHT


class CostArray:
    """Per-diagonal cost counters over the band [-t, t].

    a[d] starts at |d| (the cost of ever reaching diagonal d).  The last two
    rows of values and the two potency flag rows the update rule needs are
    reconstructed from stamps: `changed_row`/`before` give the value a
    diagonal held before its latest increment, and `potent_row` holds the
    last row at which the diagonal was judged potent (potent at row r iff
    potent_row == r; flags default to not potent).
    """

    __slots__ = ("t", "a", "changed_row", "before", "potent_row")

    def __init__(self, t: int):
        width = 2 * t + 1
        self.t = t
        self.a = [abs(k - t) for k in range(width)]
        self.changed_row = [-3] * width
        self.before = [0] * width
        self.potent_row = [-3] * width

    def cost(self, d: int) -> int:
        return self.a[d + self.t]

    def cost_at_row(self, d: int, row: int) -> int:
        """Value a[d] held at the start of `row`.

        Valid for the current and previous row only: a diagonal increments
        at most once per row, so one level of history suffices.
        """
        k = d + self.t
        if self.changed_row[k] >= row:
            return self.before[k]
        return self.a[k]

    def charge(self, d: int, row: int) -> None:
        k = d + self.t
        self.before[k] = self.a[k]
        self.changed_row[k] = row
        self.a[k] += 1

    def mark_potent(self, d: int, row: int) -> None:
        self.potent_row[d + self.t] = row

    def was_potent(self, d: int, row: int) -> bool:
        return self.potent_row[d + self.t] == row

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.a)


class DiagonalSet:
    """Sorted set of diagonals; scan-time insertions may only land ahead.

    The row scan visits diagonals in increasing order.  While a scan is in
    flight, add() accepts only values at or beyond the cursor, which is the
    only kind of insertion the update rule produces (d+1 after a mismatch).
    """

    __slots__ = ("items", "_cursor")

    def __init__(self, items=()):
        self.items: list[int] = sorted(set(items))
        self._cursor = -1

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __contains__(self, d: int) -> bool:
        lst = self.items
        lo, hi = 0, len(lst)
        while lo < hi:
            mid = (lo + hi) // 2
            if lst[mid] < d:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(lst) and lst[lo] == d

    def add(self, d: int) -> None:
        if d in self:
            return
        if self._cursor >= 0 and self.items and d < self.items[self._cursor]:
            raise ValueError(
                f"insertion of {d} lands behind the scan cursor "
                f"({self.items[self._cursor]})"
            )
        insort(self.items, d)

    def scan(self):
        """Iterate ascending; concurrent add() of values ahead is allowed."""
        self._cursor = 0
        try:
            while self._cursor < len(self.items):
                yield self.items[self._cursor]
                self._cursor += 1
        finally:
            self._cursor = -1


def is_dominated(costs: CostArray, i: int, d: int) -> Domination:
    """Which in-neighbors of (i, d) sit exactly one below its cost.

    Neighbors outside the band, outside the grid, or missing entirely never
    dominate.
    """
    t = costs.t
    h = costs.cost_at_row(d, i)
    dom = Domination.NONE
    if d - 1 >= -t and i + d - 1 >= 0 and costs.cost_at_row(d - 1, i) == h - 1:
        dom |= Domination.BY_LEFT
    if d + 1 <= t and i >= 1 and costs.cost_at_row(d + 1, i - 1) == h - 1:
        dom |= Domination.BY_UPPER_RIGHT
    return dom


def is_potent(
    costs: CostArray, i: int, d: int, x: QueriedString, y: QueriedString
) -> bool:
    """Potency of (i, d) under the counters in `costs`.

    A dominating left neighbor must be potent on this row and face a
    mismatch entering the next one; a dominating upper-right neighbor must
    have been potent on the previous row and face a mismatch entering this
    one.  Undominated cells are potent outright.
    """
    dom = is_dominated(costs, i, d)
    if dom & Domination.BY_LEFT:
        if not costs.was_potent(d - 1, i):
            return False
        if bytes_match(x.read(i), y.read(i + d - 1)):
            return False
    if dom & Domination.BY_UPPER_RIGHT:
        if not costs.was_potent(d + 1, i - 1):
            return False
        if bytes_match(x.read(i - 1), y.read(i + d)):
            return False
    return True


@dataclass
class ScanTrace:
    """Optional scan observer used by the verification suites.

    rows collects (row, active diagonals kept as potent at that row);
    snapshots collects (row, diagonal, counter values after processing that
    diagonal), indexed -t..t left to right.
    """

    rows: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    snapshots: list[tuple[int, int, tuple[int, ...]]] = field(default_factory=list)
    record_snapshots: bool = True


def selective_scan(
    x,
    y,
    t: int,
    *,
    prune: bool = True,
    trace: ScanTrace | None = None,
) -> int | None:
    """Edit distance if it is at most t, else None (exceeds-t).

    With prune=True (default), diagonals whose counter exceeds the budget
    left for returning to the finishing diagonal are dropped, and the scan
    exits early once the active set empties or the finishing diagonal's
    counter passes t.  Dropped diagonals can never participate in a path of
    cost <= t, so the returned cost is unaffected.  prune=False runs every
    active diagonal to the last row; the verification suites use it because
    only the unpruned scan keeps the active sets equal to the true potent
    sets on far inputs.
    """
    x, y = as_queried(x), as_queried(y)
    nx, ny = len(x), len(y)
    d_end = ny - nx
    if abs(d_end) > t:
        return None
    costs = CostArray(t)
    active = DiagonalSet([0])
    for i in range(nx):
        nxt = DiagonalSet()
        kept: list[int] = []
        for d in active.scan():
            if prune and costs.cost(d) > t - abs(d - d_end):
                continue
            if not is_potent(costs, i, d, x, y):
                if trace is not None and trace.record_snapshots:
                    trace.snapshots.append((i, d, costs.snapshot()))
                continue
            costs.mark_potent(d, i)
            kept.append(d)
            nxt.add(d)
            if not bytes_match(x.read(i), y.read(i + d)):
                costs.charge(d, i)
                if d + 1 <= t:
                    active.add(d + 1)
                if d - 1 >= -t:
                    nxt.add(d - 1)
            if trace is not None and trace.record_snapshots:
                trace.snapshots.append((i, d, costs.snapshot()))
        if trace is not None:
            trace.rows.append((i, tuple(kept)))
        if prune and (not nxt.items or costs.cost(d_end) > t):
            return None
        if not nxt.items:
            break
        active = nxt
    final = costs.cost(d_end)
    return final if final <= t else None
