"""Row sampling and the warm-up tester built on the sampled grid."""

import math
import random

import pytest

from conftest import mutate, random_bytes, ref_edit_distance
from gaped.qstring import QueriedString
from gaped.sampled import (
    SampledGrid,
    geometric_gap,
    run_sampled_tester,
    sample_rows,
    shortest_path_cost,
)


# ---------------------------------------------------------------------------
# geometric skipping


def test_geometric_gap_rate_one_is_deterministic():
    class Boom:
        def random(self):
            raise AssertionError("rate 1 must not consume randomness")

    assert all(geometric_gap(1.0, Boom()) == 1 for _ in range(5))
    assert geometric_gap(2.5, Boom()) == 1


def test_geometric_gap_rejects_nonpositive_rate():
    with pytest.raises(ValueError):
        geometric_gap(0.0, random.Random(0))
    with pytest.raises(ValueError):
        geometric_gap(-0.5, random.Random(0))


def test_geometric_gap_mean_matches_rate():
    rng = random.Random(11)
    rate = 0.25
    gaps = [geometric_gap(rate, rng) for _ in range(20000)]
    assert all(g >= 1 for g in gaps)
    mean = sum(gaps) / len(gaps)
    assert abs(mean - 1 / rate) < 0.15


# ---------------------------------------------------------------------------
# row choice


def test_sample_rows_always_includes_row_zero_and_stays_sorted():
    rng = random.Random(3)
    rows = sample_rows(5000, 64, 3.0, rng)
    assert rows[0] == 0
    assert all(a < b for a, b in zip(rows, rows[1:]))
    assert rows[-1] <= 5000


def test_sample_rows_rate_clamps_to_every_row():
    # c_s * ln(n) / t >= 1 keeps every row
    rows = sample_rows(200, 2, 3.0, random.Random(0))
    assert rows == list(range(201))


def test_sample_rows_density_tracks_the_rate():
    n, t, c_s = 100000, 64, 3.0
    rate = c_s * math.log(n) / t
    rows = sample_rows(n, t, c_s, random.Random(9))
    assert 0.7 * rate * n <= len(rows) <= 1.3 * rate * n


def test_sample_rows_rejects_bad_threshold():
    with pytest.raises(ValueError):
        sample_rows(100, 0, 3.0, random.Random(0))


# ---------------------------------------------------------------------------
# grid validation


def test_sampled_grid_validates_shape():
    SampledGrid(rows=(0, 3, 7), t=2, n=10)
    with pytest.raises(ValueError):
        SampledGrid(rows=(1, 3), t=2, n=10)  # missing head row
    with pytest.raises(ValueError):
        SampledGrid(rows=(0, 3, 3), t=2, n=10)  # not strictly increasing
    with pytest.raises(ValueError):
        SampledGrid(rows=(0, 11), t=2, n=10)  # row past the string


def test_shortest_path_requires_matching_length():
    grid = SampledGrid(rows=(0, 4), t=2, n=4)
    with pytest.raises(ValueError):
        shortest_path_cost(grid, QueriedString(b"abc"), QueriedString(b"abc"))


# ---------------------------------------------------------------------------
# exactness with every row kept


def test_dense_grid_shortest_path_is_the_edit_distance():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.randrange(0, 60)
        t = rng.choice((2, 4, 8))
        x = random_bytes(rng, n)
        y = mutate(rng, x, rng.randrange(0, t + 3))
        if abs(len(y) - len(x)) > t:
            continue
        grid = SampledGrid(rows=tuple(range(n + 1)), t=t, n=n)
        cost = shortest_path_cost(grid, QueriedString(x), QueriedString(y))
        d = ref_edit_distance(x, y)
        if d <= t:
            assert cost == d
        else:
            assert cost > t


# ---------------------------------------------------------------------------
# tester verdicts


def test_completeness_never_rejects_close_pairs():
    rng = random.Random(5)
    for trial in range(60):
        n = rng.randrange(40, 400)
        t = rng.choice((4, 8, 16))
        x = random_bytes(rng, n)
        y = mutate(rng, x, rng.randrange(0, t // 2 + 1))
        for seed in range(3):
            v = run_sampled_tester(
                QueriedString(x), QueriedString(y), t, 3.0, random.Random(seed)
            )
            assert v.is_close, (trial, seed)
            assert v.final_a0 <= t


def test_close_verdict_reports_the_exact_cost_at_full_rate():
    rng = random.Random(8)
    x = random_bytes(rng, 150)
    y = mutate(rng, x, 3)
    d = ref_edit_distance(x, y)
    # n=150, t=4: rate = 3 ln 150 / 4 > 1, every row sampled
    v = run_sampled_tester(QueriedString(x), QueriedString(y), 4, 3.0, random.Random(0))
    assert v.is_close and v.final_a0 == d
    assert v.mode_transitions == 0


def test_far_pairs_are_usually_rejected():
    rng = random.Random(2)
    x = random_bytes(rng, 1 << 12, b"abcdefgh")
    y = random_bytes(rng, 1 << 12, b"abcdefgh")
    t = 4
    rejections = sum(
        not run_sampled_tester(
            QueriedString(x), QueriedString(y), t, 3.0, random.Random(s)
        ).is_close
        for s in range(30)
    )
    assert rejections >= 24


def test_length_gap_shortcircuits_without_reads():
    x, y = QueriedString(b"a" * 100), QueriedString(b"a" * 80)
    v = run_sampled_tester(x, y, 8, 3.0, random.Random(0))
    assert not v.is_close
    assert v.final_a0 == 9
    assert x.total == 0 and y.total == 0


def test_low_rate_reads_sublinearly_many_x_positions():
    n = 1 << 15
    t = 256
    x = QueriedString(b"ab" * (n // 2))
    y = QueriedString(b"ab" * (n // 2))
    v = run_sampled_tester(x, y, t, 3.0, random.Random(7))
    assert v.is_close and v.final_a0 == 0
    rate = 3.0 * math.log(n) / t
    assert rate < 0.2
    # x is read only on sampled rows
    assert x.distinct <= 2 * rate * n
