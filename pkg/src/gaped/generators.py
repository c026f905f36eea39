"""Reproducible instance families.

Each family targets a regime the testers must handle:

- random_edits: y is x after k random edits, so the true distance is at
  most k; feeds the completeness suites.
- block_shift: every length-n/t block of x is circularly shifted by one
  position in y.  Distance stays within 2t, yet uniform row samples see
  almost-everywhere disagreement on the unshifted diagonal; the classic
  adversary for non-adaptive sampling.
- periodic_splice: x follows a g-periodic stream with planted pattern
  changes, and y lags the same stream by one period.  Diagonal g matches
  everywhere, diagonal 0 matches except around the changes, so a tester
  settles on the diagonal pair {0, g} and every planted change exercises
  the transition search.  The first change is an opener that walks the
  active diagonals up to g; the remaining num_transitions changes are the
  ones a trace should count.
- independent_random: unrelated uniform strings, the far-instance source.

Same spec (family, n, params, seed) always reproduces byte-identical
strings.  Instances serialize as raw x.bin/y.bin plus a JSON sidecar with
the certified distance when the exact oracle is affordable.
"""

from __future__ import annotations

import json
import logging
import math
import random
from dataclasses import dataclass, field
from pathlib import Path

from .oracle import banded_edit_distance, edit_distance

log = logging.getLogger(__name__)

ORACLE_CEILING = 4096
FAMILIES = ("random_edits", "block_shift", "periodic_splice", "independent_random")
_LETTERS = b"abcdefghijklmnopqrstuvwxyz"


def _alphabet(sigma: int) -> bytes:
    if not 2 <= sigma <= 26:
        raise ValueError("alphabet size must be in [2, 26]")
    return _LETTERS[:sigma]


def gen_random_edits(n: int, k: int, seed: int, *, sigma: int = 4) -> tuple[bytes, bytes]:
    """Uniform x and y = x after k random edits; distance at most k."""
    if k > n:
        raise ValueError("edit budget cannot exceed the string length")
    rng = random.Random(seed)
    alpha = _alphabet(sigma)
    x = bytes(rng.choices(alpha, k=n))
    y = bytearray(x)
    for _ in range(k):
        op = rng.randrange(3)
        if not y:
            op = 1
        if op == 0:
            pos = rng.randrange(len(y))
            y[pos] = rng.choice([c for c in alpha if c != y[pos]])
        elif op == 1:
            pos = rng.randrange(len(y) + 1)
            y.insert(pos, rng.choice(alpha))
        else:
            del y[rng.randrange(len(y))]
    return x, bytes(y)


def gen_block_shift(n: int, t: int, seed: int, *, sigma: int = 4) -> tuple[bytes, bytes]:
    """y rotates each of t blocks of x left by one; distance at most 2t."""
    if t < 1:
        raise ValueError("block count must be positive")
    rng = random.Random(seed)
    x = bytes(rng.choices(_alphabet(sigma), k=n))
    block = max(1, math.ceil(n / t))
    parts = []
    for b in range(0, n, block):
        blk = x[b:b + block]
        parts.append(blk[1:] + blk[:1])
    return x, b"".join(parts)


def _next_pattern(rng, alpha: bytes, prev: bytes) -> bytes:
    """A pattern differing from prev in every slot, so any row inside a
    change window deviates and detection never depends on slot luck."""
    return bytes(rng.choice([c for c in alpha if c != pc]) for pc in prev)


def _tile(out: bytearray, lo: int, hi: int, pat: bytes) -> None:
    """out[i] = pat[i % len(pat)] over [lo, hi); phase anchored at 0."""
    g = len(pat)
    rep = pat * ((hi - lo) // g + 2)
    phase = lo % g
    out[lo:hi] = rep[phase:phase + (hi - lo)]


def gen_periodic_splice(
    n: int,
    g: int,
    num_transitions: int,
    seed: int,
    *,
    y_only: bool = False,
    sigma: int = 4,
) -> tuple[bytes, bytes]:
    """Periodic pair with planted period-pattern changes.

    Both strings follow one g-periodic pattern schedule, y running one
    period behind x, so diagonals 0 and g match everywhere between
    changes.  At each planted change x switches pattern at position s and
    y at s + g/2: the two diagonals then face equal-length mismatch
    windows (g/2 on the lag diagonal just before s, then g/2 on the main
    one just after), their counters rise in lockstep, and both survive
    as active diagonals into the next stretch.  num_transitions > 0 plants that
    many counted changes plus one opener that first builds the
    two-diagonal state.  With y_only the counted changes become
    temporary excursions of y to a foreign pattern (x never changes
    after the opener), so every counted deviation is visible on the y
    side alone.
    """
    if g < 2 or g % 2:
        raise ValueError("period must be even and at least 2")
    if num_transitions < 0:
        raise ValueError("transition count cannot be negative")
    events = num_transitions + 1 if num_transitions > 0 else 0
    spacing = n // (events + 1)
    if spacing < 6 * g + 48:
        raise ValueError("transitions too dense for the string length")
    rng = random.Random(seed)
    alpha = _alphabet(sigma)
    half = g // 2
    starts = [(j + 1) * spacing for j in range(events)]
    base = bytes(rng.choices(alpha, k=g))
    x_out = bytearray(n)
    y_out = bytearray(n)
    if not y_only:
        pats = [base]
        for _ in starts:
            pats.append(_next_pattern(rng, alpha, pats[-1]))
        for out, shift in ((x_out, 0), (y_out, half)):
            bounds = [0] + [s + shift for s in starts] + [n]
            for k in range(len(bounds) - 1):
                _tile(out, bounds[k], bounds[k + 1], pats[k])
    else:
        after = _next_pattern(rng, alpha, base) if starts else base
        _tile(x_out, 0, min(starts[0], n) if starts else n, base)
        if starts:
            _tile(x_out, starts[0], n, after)
            _tile(y_out, 0, starts[0] + half, base)
            _tile(y_out, starts[0] + half, n, after)
            for s in starts[1:]:
                exc = _next_pattern(rng, alpha, after)
                _tile(y_out, s, min(s + g, n), exc)
        else:
            _tile(y_out, 0, n, base)
    return bytes(x_out), bytes(y_out)


def gen_independent_random(n: int, seed: int, *, sigma: int = 4) -> tuple[bytes, bytes]:
    """Two independent uniform strings over the alphabet."""
    rng = random.Random(seed)
    alpha = _alphabet(sigma)
    x = bytes(rng.choices(alpha, k=n))
    y = bytes(rng.choices(alpha, k=n))
    return x, y


_GENERATORS = {
    "random_edits": gen_random_edits,
    "block_shift": gen_block_shift,
    "periodic_splice": gen_periodic_splice,
    "independent_random": gen_independent_random,
}


@dataclass(frozen=True)
class InstanceSpec:
    """Serializable recipe for one instance: same spec, same bytes."""

    family: str
    n: int
    seed: int
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def to_json(self) -> str:
        return json.dumps(
            {"family": self.family, "n": self.n, "seed": self.seed,
             "params": self.params},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "InstanceSpec":
        obj = json.loads(text)
        return cls(family=obj["family"], n=obj["n"], seed=obj["seed"],
                   params=dict(obj.get("params", {})))


def instantiate(spec: InstanceSpec) -> tuple[bytes, bytes]:
    fn = _GENERATORS[spec.family]
    return fn(spec.n, seed=spec.seed, **spec.params)


def certified_delta(x: bytes, y: bytes, *, ceiling: int = ORACLE_CEILING) -> int | None:
    """Exact distance when the full DP is affordable, else None."""
    if max(len(x), len(y)) <= ceiling:
        return edit_distance(x, y)
    return None


def certify_far(x: bytes, y: bytes, threshold: int) -> bool:
    """Exact certificate that the distance exceeds threshold.

    Uses the full oracle at desk scale and the banded oracle above it (a
    banded pass that finds no path within the band proves the bound).
    """
    if max(len(x), len(y)) <= ORACLE_CEILING:
        return edit_distance(x, y) > threshold
    return banded_edit_distance(x, y, threshold) is None


def gen_certified_far(
    n: int,
    t: int,
    seed: int,
    *,
    far_factor: float = 13.0,
    exponent: float = 2.0,
    sigma: int = 4,
    max_tries: int = 32,
) -> tuple[bytes, bytes, int]:
    """Independent-random pair certified beyond far_factor * t**exponent.

    Candidates failing certification are logged and resampled with the
    next seed, so acceptance corpora never rest on a probabilistic
    assumption about the generator.
    """
    threshold = int(far_factor * t ** exponent)
    for attempt in range(max_tries):
        x, y = gen_independent_random(n, seed + attempt, sigma=sigma)
        if certify_far(x, y, threshold):
            if attempt:
                log.info("far instance certified after %d resample(s)", attempt)
            return x, y, threshold
        log.info("far candidate (seed %d) failed certification; resampling",
                 seed + attempt)
    raise RuntimeError(
        f"no instance beyond threshold {threshold} in {max_tries} attempts"
    )


def write_instance(directory, x: bytes, y: bytes, meta: dict) -> None:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    (d / "x.bin").write_bytes(x)
    (d / "y.bin").write_bytes(y)
    (d / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def read_instance(directory) -> tuple[bytes, bytes, dict]:
    d = Path(directory)
    x = (d / "x.bin").read_bytes()
    y = (d / "y.bin").read_bytes()
    meta = json.loads((d / "meta.json").read_text())
    return x, y, meta
