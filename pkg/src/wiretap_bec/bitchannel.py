"""Bit-channel erasure/TVD profiles: Monte-Carlo estimation and exact routes.

A bit-channel here is the synthetic channel from one input bit to Eve's
observation plus a conditioning set of already-revealed input bits (all
earlier inputs for "full past", earlier message bits for "message past").
Over a BEC every bit-channel is again a BEC, so a profile is fully
described by per-index erasure probabilities; the average TVD of a
BEC(e) bit-channel is (1 - e) / 2.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels, codes, oracle
from .codes import CodeSpec

DEFAULT_TRIALS = 200_000  # channel realizations used for the reference figures
CHUNK = 1024

FULL_PAST = "full-past"
MESSAGE_PAST = "message-past"


@dataclass(frozen=True)
class PastMode:
    """Conditioning convention for bit-channels."""

    kind: str
    positions: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in (FULL_PAST, MESSAGE_PAST):
            raise ValueError("unknown past mode %r" % (self.kind,))
        if self.kind == MESSAGE_PAST:
            if self.positions is None:
                raise ValueError("message-past mode needs positions")
            if list(self.positions) != sorted(set(self.positions)):
                raise ValueError("positions must be strictly increasing")

    @classmethod
    def full_past(cls) -> "PastMode":
        return cls(FULL_PAST)

    @classmethod
    def message_past(cls, positions: Sequence[int]) -> "PastMode":
        return cls(MESSAGE_PAST, tuple(positions))


@dataclass(frozen=True)
class BitChannelProfile:
    """Erasure probabilities and TVDs of Eve's bit-channels.

    ``indices`` are the target input positions (all of 0..n-1 under full
    past, the message positions under message past).  ``trials`` = 0 marks
    an exact profile.
    """

    n: int
    p: float
    mode: PastMode
    indices: tuple[int, ...]
    erasure: tuple[float, ...]
    tvd: tuple[float, ...]
    stderr: tuple[float, ...]
    trials: int
    seed: Optional[int]


def tvd_from_erasure(p_i):
    """Average TVD of a BEC bit-channel with erasure probability p_i."""
    if not 0 <= p_i <= 1:
        raise ValueError("erasure probability must be in [0, 1]")
    return (1 - p_i) / 2


def packed_columns(code: CodeSpec) -> np.ndarray:
    """Generator columns packed into uint64 words, bit j = row j."""
    n = code.n
    words = (n + 63) // 64
    out = np.zeros((n, words), dtype=np.uint64)
    for c in range(n):
        col = code.generator.column_bits(c)
        for w in range(words):
            out[c, w] = (col >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def pattern_chunk(n: int, p: float, seed: int, chunk_index: int,
                  size: int) -> np.ndarray:
    """Erasure patterns for one chunk of trials (True = erased).

    Trial ``t`` always lives in chunk ``t // CHUNK`` at row ``t % CHUNK``
    and each chunk has its own (seed, chunk) stream, so patterns are a
    deterministic function of (seed, trial index) no matter how chunks are
    scheduled across threads.
    """
    rng = np.random.default_rng([seed, chunk_index])
    pats = rng.random((CHUNK, n)) < p
    return pats[:size]


def _accumulate(kernel_args_for_chunk, trials: int, workers: Optional[int]):
    """Run a per-chunk kernel closure over all chunks, summing counts."""
    nchunks = (trials + CHUNK - 1) // CHUNK
    sizes = [min(CHUNK, trials - c * CHUNK) for c in range(nchunks)]
    if workers is None or workers <= 1:
        results = [kernel_args_for_chunk(c, sizes[c]) for c in range(nchunks)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(kernel_args_for_chunk, range(nchunks), sizes))
    total = results[0]
    for r in results[1:]:
        total = total + r
    return total


def mc_erasure_profile(code: CodeSpec, p: float, mode: PastMode,
                       trials: int = DEFAULT_TRIALS, seed: int = 0,
                       workers: Optional[int] = None) -> BitChannelProfile:
    """Monte-Carlo erasure estimates for the requested bit-channels.

    Each trial samples an erasure pattern, strikes the erased columns from
    the generator and tests which targets are uniquely determined given the
    mode's conditioning bits.  The result depends only on
    (code, p, mode, trials, seed), not on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    cols = packed_columns(code)
    n = code.n
    if mode.kind == FULL_PAST:
        targets = tuple(range(n))

        def run(chunk_index, size):
            counts = np.zeros(n, dtype=np.int64)
            pats = pattern_chunk(n, p, seed, chunk_index, size)
            _kernels.full_past_counts(cols, pats, counts)
            return counts
    else:
        targets = mode.positions
        tarr = np.asarray(targets, dtype=np.int64)

        def run(chunk_index, size):
            counts = np.zeros(len(targets), dtype=np.int64)
            pats = pattern_chunk(n, p, seed, chunk_index, size)
            _kernels.chain_counts(cols, pats, tarr, True, counts)
            return counts

    counts = _accumulate(run, trials, workers)
    erasure = tuple(c / trials for c in counts)
    return BitChannelProfile(
        n=n, p=p, mode=mode, indices=targets,
        erasure=erasure,
        tvd=tuple(tvd_from_erasure(e) for e in erasure),
        stderr=tuple(math.sqrt(e * (1 - e) / trials) for e in erasure),
        trials=trials, seed=seed)


def exactness_upgrade(code: CodeSpec, p: float, mode: PastMode) -> BitChannelProfile:
    """Exact profile where available: polar closed form, else enumeration.

    Full-past polar profiles use the erasure recursion; any code small
    enough for the exhaustive oracle is enumerated.  Otherwise a
    ValueError points the caller at mc_erasure_profile.
    """
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    n = code.n
    if code.family == codes.POLAR and mode.kind == FULL_PAST:
        erasure = tuple(codes.polar_bitchannel_erasure(code.m, p))
        targets = tuple(range(n))
    elif n <= oracle.ERASURE_LIMIT:
        if mode.kind == FULL_PAST:
            targets = tuple(range(n))
            knowns = [tuple(range(i)) for i in targets]
        else:
            targets = mode.positions
            knowns = [targets[:j] for j in range(len(targets))]
        erasure = tuple(
            oracle.exact_bitchannel_erasure(code.generator, kn, t, p)
            for kn, t in zip(knowns, targets))
    else:
        raise ValueError("no exact method available at this blocklength; "
                         "use mc_erasure_profile")
    return BitChannelProfile(
        n=n, p=p, mode=mode, indices=targets, erasure=erasure,
        tvd=tuple(tvd_from_erasure(e) for e in erasure),
        stderr=(0.0,) * len(targets), trials=0, seed=None)
