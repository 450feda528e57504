"""Secrecy-leakage bounds, rate searches and the second-order benchmark.

Two upper bounds on the TVD between (message, Eve's view) and an ideal
uniform-message product are provided: a sum of message-past bit-channel
TVDs (bound 1, tighter, Monte-Carlo) and a sum of full-past bit-channel
TVDs (bound 2, looser, closed form for polar codes).  ``max_rate`` turns
either bound into an achievable-rate lower bound for a TVD budget delta;
``second_order_rate`` is the information-theoretic benchmark it is
compared against.  All rates and information quantities are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels, bitchannel, codes
from .bitchannel import BitChannelProfile, PastMode, tvd_from_erasure
from .codes import CodeSpec

BOUND1 = "bound1"
BOUND2 = "bound2"
SECOND_ORDER = "second-order"

_SCAN_WINDOW = 16


@dataclass(frozen=True)
class SecrecyBudget:
    """TVD budget delta; the reliability budget epsilon is pinned to 0."""

    delta: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0 < self.delta < 1:
            raise ValueError("delta must be in (0, 1)")
        if self.epsilon != 0:
            raise ValueError("only the perfect-reliability case epsilon=0 "
                             "is supported")


@dataclass(frozen=True)
class RateResult:
    """One point of a rate curve."""

    n: int
    k: int
    rate: float
    bound: str
    delta: float
    tvd_sum: Optional[float]
    trials: int
    seed: Optional[int]


def inverse_q(x: float) -> float:
    """Inverse of the Gaussian tail Q(y) = erfc(y / sqrt 2) / 2.

    Bracketing bisection to 1e-9 absolute accuracy; Q is strictly
    decreasing, so the bracket is unambiguous.
    """
    if not 0 < x < 1:
        raise ValueError("argument must be in (0, 1)")
    lo, hi = -40.0, 40.0
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if 0.5 * math.erfc(mid / math.sqrt(2)) > x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def second_order_rate(n: int, p: float, budget: SecrecyBudget) -> float:
    """Second-order achievable-rate benchmark C_s - sqrt(V_s/n) Q^-1(delta).

    For the noiseless-main / BEC(p)-eavesdropper channel C_s = p and
    V_s = p(1-p).  The O(log n / n) remainder is dropped.  The value may
    be negative at very small n and is returned as-is.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    if p in (0.0, 1.0):
        return p
    return p - math.sqrt(p * (1 - p) / n) * inverse_q(budget.delta)


def conditional_variance(channel: Sequence[Sequence[float]],
                         input_dist: Sequence[float]) -> float:
    """Conditional variance of the information density, in bits^2.

    ``channel[x][z]`` is P(z|x); ``input_dist[x]`` is P(x).  Rows and the
    input distribution must be normalized.
    """
    W = np.asarray(channel, dtype=float)
    px = np.asarray(input_dist, dtype=float)
    if W.ndim != 2 or px.ndim != 1 or W.shape[0] != px.shape[0]:
        raise ValueError("shape mismatch between channel and input")
    if np.any(W < 0) or np.any(px < 0):
        raise ValueError("probabilities must be nonnegative")
    if not math.isclose(px.sum(), 1.0, abs_tol=1e-9):
        raise ValueError("input distribution is not normalized")
    if not np.allclose(W.sum(axis=1), 1.0, atol=1e-9):
        raise ValueError("channel rows are not normalized")
    pz = px @ W
    total = 0.0
    for x in range(W.shape[0]):
        if px[x] == 0:
            continue
        second = 0.0
        mean = 0.0
        for z in range(W.shape[1]):
            if W[x, z] == 0:
                continue
            ratio = math.log2(W[x, z] / pz[z])
            second += W[x, z] * ratio * ratio
            mean += W[x, z] * ratio
        total += px[x] * (second - mean * mean)
    return total


def bound2_tvd(code: CodeSpec, p: float, profile: BitChannelProfile):
    """Sum of full-past bit-channel TVDs over the code's message positions."""
    if profile.n != code.n or profile.mode.kind != bitchannel.FULL_PAST:
        raise ValueError("profile must be full-past and match the code")
    if profile.trials == 0 and profile.p != p:
        raise ValueError("profile was computed for a different p")
    return sum(profile.tvd[i] for i in code.message_positions)


def bound1_terms(code: CodeSpec, p: float, trials: int = bitchannel.DEFAULT_TRIALS,
                 seed: int = 0, workers: Optional[int] = None) -> BitChannelProfile:
    """Message-past bit-channel profile over the code's message positions."""
    if code.k < 1:
        raise ValueError("bound 1 needs at least one message bit")
    mode = PastMode.message_past(code.message_positions)
    return bitchannel.mc_erasure_profile(code, p, mode, trials, seed, workers)


def bound1_tvd(code: CodeSpec, p: float, trials: int = bitchannel.DEFAULT_TRIALS,
               seed: int = 0, workers: Optional[int] = None) -> float:
    """Monte-Carlo estimate of the message-past TVD sum (bound 1)."""
    return sum(bound1_terms(code, p, trials, seed, workers).tvd)


def _priority_order(family: str, m: int, p: float) -> list[int]:
    """Message-position preference order; prefixes give positions for any k."""
    n = 1 << m
    if family == codes.REED_MULLER:
        return list(range(n))
    erasure = codes.polar_bitchannel_erasure(m, p)
    return sorted(range(n), key=lambda i: (-erasure[i], i))


def _full_past_profile(family: str, m: int, p: float, trials: int, seed: int,
                       workers: Optional[int]) -> BitChannelProfile:
    code = codes.make_code(family, m, 0, p)
    if family == codes.POLAR:
        return bitchannel.exactness_upgrade(code, p, PastMode.full_past())
    return bitchannel.mc_erasure_profile(code, p, PastMode.full_past(),
                                         trials, seed, workers)


def _bound1_sums(family: str, m: int, p: float, ks: Sequence[int], trials: int,
                 seed: int, workers: Optional[int]) -> list[float]:
    """Bound-1 TVD sums for several candidate k over shared erasure patterns.

    Every candidate's message set is re-derived and its chain of
    message-past terms recomputed; only the sampled patterns are shared.
    """
    n = 1 << m
    pos_lists = [codes.message_positions(family, m, k, p) for k in ks]
    offsets = np.cumsum([0] + [len(pl) for pl in pos_lists]).astype(np.int64)
    flat = np.asarray([t for pl in pos_lists for t in pl], dtype=np.int64)
    code = codes.make_code(family, m, 0, p)
    cols = bitchannel.packed_columns(code)

    def run(chunk_index, size):
        counts = np.zeros(len(flat), dtype=np.int64)
        pats = bitchannel.pattern_chunk(n, p, seed, chunk_index, size)
        _kernels.multi_chain_counts(cols, pats, flat, offsets, counts)
        return counts

    counts = bitchannel._accumulate(run, trials, workers)
    sums = []
    for c in range(len(ks)):
        terms = counts[offsets[c]:offsets[c + 1]]
        sums.append(sum(tvd_from_erasure(x / trials) for x in terms))
    return sums


def _max_rate_bound2(family: str, m: int, p: float, budget: SecrecyBudget,
                     trials: int, seed: int, workers: Optional[int]) -> RateResult:
    n = 1 << m
    profile = _full_past_profile(family, m, p, trials, seed, workers)
    order = _priority_order(family, m, p)
    best_k, best_sum, acc = 0, 0.0, 0.0
    for k, idx in enumerate(order, start=1):
        acc += profile.tvd[idx]
        if acc <= budget.delta:
            best_k, best_sum = k, acc
        else:
            break
    return RateResult(n=n, k=best_k, rate=best_k / n, bound=BOUND2,
                      delta=budget.delta, tvd_sum=best_sum,
                      trials=profile.trials, seed=profile.seed)


def _max_rate_bound1(family: str, m: int, p: float, budget: SecrecyBudget,
                     trials: int, seed: int, workers: Optional[int]) -> RateResult:
    n = 1 << m
    start = _max_rate_bound2(family, m, p, budget, trials, seed, workers).k
    best_k, best_sum = 0, 0.0

    def sums_for(ks):
        return _bound1_sums(family, m, p, ks, trials, seed, workers)

    # scan upward from the bound-2 answer (bound 1 is tighter, so its
    # feasible k can only be larger up to Monte-Carlo noise)
    k = max(start, 1)
    found_infeasible = False
    while k <= n and not found_infeasible:
        ks = list(range(k, min(n, k + _SCAN_WINDOW - 1) + 1))
        for kk, s in zip(ks, sums_for(ks)):
            if s <= budget.delta:
                best_k, best_sum = kk, s
            else:
                found_infeasible = True
                break
        k = ks[-1] + 1
    if best_k == 0 and start > 0:
        # noise made the starting point infeasible; scan downward
        for kk in range(start - 1, 0, -1):
            s = sums_for([kk])[0]
            if s <= budget.delta:
                best_k, best_sum = kk, s
                break
    return RateResult(n=n, k=best_k, rate=best_k / n, bound=BOUND1,
                      delta=budget.delta, tvd_sum=best_sum,
                      trials=trials, seed=seed)


def max_rate(family: str, m: int, p: float, budget: SecrecyBudget,
             bound: str = BOUND2, trials: int = bitchannel.DEFAULT_TRIALS,
             seed: int = 0, workers: Optional[int] = None) -> RateResult:
    """Largest k (and rate k/n) whose bound TVD sum stays within delta.

    The message positions are re-derived for every candidate k.  Bound 2
    admits a prefix-sum search over a single full-past profile; bound 1
    recomputes its message-past chain per candidate.
    """
    if family not in codes.FAMILIES:
        raise ValueError("unknown family %r" % (family,))
    if bound == BOUND2:
        return _max_rate_bound2(family, m, p, budget, trials, seed, workers)
    if bound == BOUND1:
        return _max_rate_bound1(family, m, p, budget, trials, seed, workers)
    raise ValueError("unknown bound kind %r" % (bound,))
