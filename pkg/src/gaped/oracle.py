"""Exact edit-distance oracles over the diagonal grid.

Reference implementations with unrestricted time and queries: the full
dynamic program, a banded variant, grid-cell costs in (row, diagonal)
coordinates, an optimal alignment with a fixed tie-break, and the
brute-force potent-diagonal sets that the selective scan is checked against.

Coordinates are 0-based throughout.  Cell ``(i, d)`` holds the edit distance
between the first ``i`` bytes of ``x`` and the first ``i + d`` bytes of
``y``; the step from row ``i`` to row ``i + 1`` on diagonal ``d`` compares
``x[i]`` with ``y[i + d]``.  Three step kinds exist: staying on the diagonal
(cost 0 on a match, 1 on a substitution), moving to diagonal ``d - 1`` while
advancing the row (deleting ``x[i]``, cost 1), and moving to diagonal
``d + 1`` within the row (inserting ``y[i + d]``, cost 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .qstring import QueriedString, bytes_match

INF = 1 << 28


def _raw(s: QueriedString | bytes | bytearray | str) -> bytes:
    if isinstance(s, QueriedString):
        return s.read_all()
    if isinstance(s, str):
        return s.encode("ascii")
    return bytes(s)


def _as_u8(b: bytes) -> np.ndarray:
    return np.frombuffer(b, dtype=np.uint8)


def edit_distance(x, y) -> int:
    """Exact edit distance by the full DP, two rows at a time.

    Row update: substitutions and deletions vectorize directly; the
    within-row insertion chain is min(tmp[k] + (j - k)) over k <= j, which
    is a running minimum of tmp[k] - k.
    """
    bx, by = _raw(x), _raw(y)
    nx, ny = len(bx), len(by)
    if nx == 0:
        return ny
    if ny == 0:
        return nx
    xa, ya = _as_u8(bx), _as_u8(by)
    idx = np.arange(ny + 1, dtype=np.int32)
    prev = idx.copy()
    tmp = np.empty(ny + 1, dtype=np.int32)
    for i in range(1, nx + 1):
        tmp[0] = i
        np.minimum(prev[:-1] + (ya != xa[i - 1]), prev[1:] + 1, out=tmp[1:])
        prev = np.minimum.accumulate(tmp - idx) + idx
    return int(prev[ny])


def banded_edit_distance(x, y, band: int) -> int | None:
    """Edit distance restricted to diagonals [-band, band].

    Returns the exact edit distance when it is <= band, else None: a None
    proves the true distance exceeds band, because any alignment leaving
    the band already pays more than band.
    """
    bx, by = _raw(x), _raw(y)
    nx, ny = len(bx), len(by)
    if abs(ny - nx) > band:
        return None
    if nx == 0 or ny == 0:
        return max(nx, ny)
    width = 2 * band + 1
    # y padded so the slice y[i-1-band : i-1+band+1] always exists even when
    # x is the longer string; the pad value never equals a byte, and padded
    # cells are invalid anyway.
    ypad = np.full(max(nx, ny) + 2 * band + 2, -1, dtype=np.int16)
    ypad[band : band + ny] = _as_u8(by)
    xa = _as_u8(bx).astype(np.int16)
    offs = np.arange(width, dtype=np.int32)  # column k holds diagonal k - band
    diag = offs - band
    cur = np.where(diag >= 0, diag, INF).astype(np.int32)  # row 0
    tmp = np.empty(width, dtype=np.int32)
    shift = np.empty(width, dtype=np.int32)
    for i in range(1, nx + 1):
        neq = ypad[i - 1 : i - 1 + width] != xa[i - 1]
        np.add(cur, neq, out=tmp)  # stay on diagonal
        shift[:-1] = cur[1:]
        shift[-1] = INF
        np.minimum(tmp, shift + 1, out=tmp)  # delete x[i-1]
        invalid = i + diag < 0
        tmp[invalid] = INF
        cur = np.minimum.accumulate(tmp - offs) + offs  # insertion chain
        cur[invalid] = INF
        cur[i + diag > ny] = INF
        np.minimum(cur, INF, out=cur)
    result = int(cur[(ny - nx) + band])
    return result if result <= band else None


def grid_cost(x, y, i: int, d: int) -> int:
    """Cost of grid cell (i, d): edit distance of x[:i] and y[:i+d]."""
    bx, by = _raw(x), _raw(y)
    if not (0 <= i <= len(bx)):
        raise ValueError(f"row {i} outside [0, {len(bx)}]")
    if not (0 <= i + d <= len(by)):
        raise ValueError(f"diagonal {d} at row {i} leaves y's range")
    return edit_distance(bx[:i], by[: i + d])


def full_cost_table(x, y) -> np.ndarray:
    """The whole (|x|+1) x (|y|+1) DP matrix.  Test-only: desk-scale sizes."""
    bx, by = _raw(x), _raw(y)
    nx, ny = len(bx), len(by)
    m = np.empty((nx + 1, ny + 1), dtype=np.int32)
    idx = np.arange(ny + 1, dtype=np.int32)
    m[0] = idx
    if nx == 0:
        return m
    ya = _as_u8(by)
    xa = _as_u8(bx)
    tmp = np.empty(ny + 1, dtype=np.int32)
    for i in range(1, nx + 1):
        prev = m[i - 1]
        tmp[0] = i
        if ny:
            np.minimum(prev[:-1] + (ya != xa[i - 1]), prev[1:] + 1, out=tmp[1:])
        m[i] = np.minimum.accumulate(tmp - idx) + idx
    return m


# ---------------------------------------------------------------------------
# Optimal alignment with a fixed tie-break.


@dataclass
class Alignment:
    """A sequence of edit operations taking x to y.

    Each op is (kind, i, j): "match"/"sub" consume x[i] and y[j], "del"
    consumes x[i] (j is the y-length consumed so far), "ins" consumes y[j].
    """

    ops: list[tuple[str, int, int]] = field(default_factory=list)

    @property
    def cost(self) -> int:
        return sum(1 for op in self.ops if op[0] != "match")

    def validate(self, x, y) -> int:
        """Replay against the pair; returns the cost, raises on any defect."""
        bx, by = _raw(x), _raw(y)
        i = j = 0
        for kind, oi, oj in self.ops:
            if kind in ("match", "sub"):
                if oi != i or oj != j:
                    raise ValueError(f"op {kind} at ({oi},{oj}), cursor ({i},{j})")
                same = bx[i] == by[j]
                if kind == "match" and not same:
                    raise ValueError(f"match at ({i},{j}) on unequal bytes")
                if kind == "sub" and same:
                    raise ValueError(f"sub at ({i},{j}) on equal bytes")
                i += 1
                j += 1
            elif kind == "del":
                if oi != i:
                    raise ValueError(f"del at {oi}, cursor {i}")
                i += 1
            elif kind == "ins":
                if oj != j:
                    raise ValueError(f"ins at {oj}, cursor {j}")
                j += 1
            else:
                raise ValueError(f"unknown op kind {kind!r}")
        if i != len(bx) or j != len(by):
            raise ValueError(f"alignment consumed ({i},{j}) of ({len(bx)},{len(by)})")
        return self.cost


def optimal_alignment(x, y) -> Alignment:
    """An optimal alignment; ties prefer match/substitute, then delete."""
    bx, by = _raw(x), _raw(y)
    m = full_cost_table(bx, by)
    ops: list[tuple[str, int, int]] = []
    i, j = len(bx), len(by)
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            same = bx[i - 1] == by[j - 1]
            if m[i][j] == m[i - 1][j - 1] + (0 if same else 1):
                ops.append(("match" if same else "sub", i - 1, j - 1))
                i -= 1
                j -= 1
                continue
        if i > 0 and m[i][j] == m[i - 1][j] + 1:
            ops.append(("del", i - 1, j))
            i -= 1
            continue
        ops.append(("ins", i, j - 1))
        j -= 1
    ops.reverse()
    return Alignment(ops)


# ---------------------------------------------------------------------------
# Banded costs and potent sets under the scan's boundary semantics.


def banded_cost_table(x, y, t: int) -> list[list[int]]:
    """Costs of the band-restricted grid the selective scan walks.

    Rows 0..|x|, diagonals -t..t (column d + t).  Cells with i + d < 0 do
    not exist (INF).  Cells reaching past |y| exist with every comparison a
    mismatch (out-of-range rule); they can never reach the sink, since i + d
    never decreases along an edge.  Missing neighbors are skipped.
    """
    bx, by = _raw(x), _raw(y)
    nx, ny = len(bx), len(by)
    width = 2 * t + 1

    def mis(r: int, d: int) -> int:
        a = bx[r] if 0 <= r < nx else None
        c = r + d
        b = by[c] if 0 <= c < ny else None
        return 0 if bytes_match(a, b) else 1

    rows = [[INF] * width for _ in range(nx + 1)]
    for k in range(width):
        d = k - t
        if d >= 0:
            rows[0][k] = d
    for i in range(1, nx + 1):
        prev = rows[i - 1]
        cur = rows[i]
        for k in range(width):
            d = k - t
            if i + d < 0:
                continue
            best = INF
            if prev[k] < INF:
                best = prev[k] + mis(i - 1, d)
            if k + 1 < width and prev[k + 1] < INF:
                best = min(best, prev[k + 1] + 1)
            if k - 1 >= 0 and cur[k - 1] < INF:
                best = min(best, cur[k - 1] + 1)
            cur[k] = best
    return rows


def banded_potent_table(x, y, t: int) -> list[set[int]]:
    """Potent diagonals of every row, by direct evaluation of the definition.

    A cell (i, d) of cost h is dominated by its same-row left neighbor
    (i, d-1) when that neighbor costs h - 1, and by its upper-right neighbor
    (i-1, d+1) under the same condition; missing neighbors never dominate.
    The cell is potent unless some dominating neighbor fails its
    requirement: a left dominator must itself be potent at row i and have a
    mismatch at row i + 1 (bytes x[i], y[i+d-1]); an upper-right dominator
    must be potent at row i - 1 and have a mismatch at row i (bytes x[i-1],
    y[i+d]).  An undominated cell is potent outright.
    """
    bx, by = _raw(x), _raw(y)
    nx, ny = len(bx), len(by)
    costs = banded_cost_table(bx, by, t)
    width = 2 * t + 1

    def mis(r: int, d: int) -> bool:
        a = bx[r] if 0 <= r < nx else None
        c = r + d
        b = by[c] if 0 <= c < ny else None
        return not bytes_match(a, b)

    table: list[set[int]] = []
    prev_potent: set[int] = set()
    for i in range(nx + 1):
        potent: set[int] = set()
        row = costs[i]
        up = costs[i - 1] if i > 0 else None
        for k in range(width):
            d = k - t
            if i + d < 0 or row[k] >= INF:
                continue
            h = row[k]
            ok = True
            if k - 1 >= 0 and i + d - 1 >= 0 and row[k - 1] == h - 1:
                ok = (d - 1) in potent and mis(i, d - 1)
            if ok and up is not None and k + 1 < width and up[k + 1] == h - 1:
                ok = (d + 1) in prev_potent and mis(i - 1, d + 1)
            if ok:
                potent.add(d)
        table.append(potent)
        prev_potent = potent
    return table


def brute_force_potent_set(x, y, t: int, i: int) -> set[int]:
    """Potent diagonals at row i.  Sweeps should use banded_potent_table."""
    return banded_potent_table(x, y, t)[i]
