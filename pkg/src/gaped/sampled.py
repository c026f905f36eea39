"""Row-sampled warm-up tester.

Samples grid rows at rate ~ c_s * ln(n) / t, keeps the band of 2t+1
diagonals at each sampled row, and thresholds the source-to-sink shortest
path at t.  Jumping from one sampled row to the next on the same diagonal
costs only the single character indicator at the departure row; that makes
the path cost a lower bound on any alignment routed through the sampled
rows, so answers of close are never wrong for inputs within the gap.

Queries are asymmetric by design: x is read once per sampled row, while y
reads fan out across the band, so only x enjoys the sublinear bound here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .qstring import as_queried, bytes_match, ledger_snapshot
from .verdict import Answer, Verdict

_INF = 1 << 28


def geometric_gap(rate: float, rng) -> int:
    """Distance to the next kept row when each row is kept w.p. rate.

    Returns k with probability rate * (1-rate)^(k-1), k >= 1; rate >= 1
    returns 1 without consuming randomness.
    """
    if rate >= 1.0:
        return 1
    if rate <= 0.0:
        raise ValueError("sampling rate must be positive")
    u = rng.random()
    return 1 + int(math.log(1.0 - u) / math.log(1.0 - rate))


def sample_rows(n: int, t: int, c_s: float, rng) -> list[int]:
    """Sorted sample: row 0 plus each row in [1..n] kept w.p. c_s*ln(n)/t.

    Generated by geometric gap-skipping, so the cost is proportional to
    the sample size rather than n.
    """
    if t < 1:
        raise ValueError("band radius t must be >= 1")
    p = min(1.0, c_s * math.log(max(n, 2)) / t) if n > 0 else 1.0
    rows = [0]
    if p >= 1.0:
        rows.extend(range(1, n + 1))
        return rows
    r = 0
    while True:
        r += geometric_gap(p, rng)
        if r > n:
            return rows
        rows.append(r)


@dataclass(frozen=True)
class SampledGrid:
    """Sampled row set plus band radius; n is the row dimension (|x|)."""

    rows: tuple[int, ...]
    t: int
    n: int

    def __post_init__(self):
        if not self.rows or self.rows[0] != 0:
            raise ValueError("row 0 must head the sample")
        if any(b <= a for a, b in zip(self.rows, self.rows[1:])):
            raise ValueError("rows must be strictly increasing")
        if self.rows[-1] > self.n:
            raise ValueError("rows must not pass the final row")

    @classmethod
    def build(cls, n: int, t: int, c_s: float, rng) -> "SampledGrid":
        return cls(rows=tuple(sample_rows(n, t, c_s, rng)), t=t, n=n)


def shortest_path_cost(grid: SampledGrid, x, y) -> int:
    """Min-cost path from (0, diagonal 0) to the sink past the last row.

    Per sampled row, in diagonal order: an insertion edge to the next
    diagonal in the same row costs 1, staying on the diagonal to the next
    sampled row costs the mismatch indicator of the departure row's
    characters, and stepping down a diagonal to the next sampled row costs
    1.  From the last sampled row the sink charges the diagonal distance
    to the finishing diagonal.  Insertion edges are skipped on the last
    row; the sink edges subsume them.

    Once every cell of a row costs more than t the final cost must too
    (edge weights are nonnegative), so the scan stops there and returns
    that row's minimum.  Values at most t are always exact; values above
    t are certified lower bounds only.
    """
    x, y = as_queried(x), as_queried(y)
    if grid.n != len(x):
        raise ValueError("grid was built for a different row count")
    t = grid.t
    width = 2 * t + 1
    d_end = len(y) - len(x)
    dist = [_INF] * width
    dist[t] = 0
    rows = grid.rows
    for idx, r in enumerate(rows):
        if idx == len(rows) - 1:
            break
        for k in range(1, width):
            if dist[k - 1] + 1 < dist[k]:
                dist[k] = dist[k - 1] + 1
        nxt = [_INF] * width
        xc = x.read(r)
        for k in range(width):
            dv = dist[k]
            if dv >= _INF:
                continue
            w = 0 if bytes_match(xc, y.read(r + k - t)) else 1
            if dv + w < nxt[k]:
                nxt[k] = dv + w
            if k > 0 and dv + 1 < nxt[k - 1]:
                nxt[k - 1] = dv + 1
        dist = nxt
        floor = min(dist)
        if floor > t:
            return floor
    return min(dv + abs(k - t - d_end) for k, dv in enumerate(dist) if dv < _INF)


def run_sampled_tester(x, y, t: int, c_s: float, rng) -> Verdict:
    """Close iff the sampled-grid shortest path costs at most t.

    Close is reliable whenever the true distance is within t; far is
    correct with constant probability once the true distance passes order
    t^2 (the sampled rows then catch enough forced mismatches).
    """
    x, y = as_queried(x), as_queried(y)
    if abs(len(y) - len(x)) > t:
        return Verdict(Answer.FAR, t + 1, ledger_snapshot(x, y), 0)
    grid = SampledGrid.build(len(x), t, c_s, rng)
    cost = shortest_path_cost(grid, x, y)
    answer = Answer.CLOSE if cost <= t else Answer.FAR
    return Verdict(answer, min(cost, t + 1), ledger_snapshot(x, y), 0)
