"""Exhaustive small-blocklength ground truth by erasure-pattern enumeration.

Every quantity here is an exact expectation over all 2^n erasure patterns.
For a linear code over a BEC, conditioned on the pattern the posterior of
the input bits is uniform over an affine set, so each pattern contributes
through rank arithmetic only; the reduction is itself cross-checked against
direct distribution enumeration in the test suite.

Pattern counts are aggregated per Hamming weight, so results for several
erasure probabilities reuse one enumeration.  Passing ``p`` as a
``fractions.Fraction`` yields exact rational results (used by the
zero-tolerance sandwich checks).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import gf2
from .gf2 import BitMatrix

ERASURE_LIMIT = 20  # 2^n eliminations
JOINT_LIMIT = 12


def _pattern_probability(p, n: int, weight: int):
    return p ** weight * (1 - p) ** (n - weight)


def _basis_for_pattern(cols: tuple[int, ...], pattern: int,
                       knowns: tuple[int, ...]) -> dict[int, int]:
    basis: dict[int, int] = {}
    for c, col in enumerate(cols):
        if not (pattern >> c) & 1:
            gf2._rref_insert(basis, col)
    for j in knowns:
        gf2._rref_insert(basis, 1 << j)
    return basis


def _is_solvable(basis: dict[int, int], target: int) -> bool:
    return basis.get(target) == 1 << target


@lru_cache(maxsize=None)
def _unsolvable_weight_counts(G: BitMatrix, knowns: tuple[int, ...],
                              target: int) -> tuple[int, ...]:
    """counts[w] = number of weight-w erasure patterns leaving target unsolvable."""
    n = G.rows
    cols = tuple(G.column_bits(c) for c in range(G.cols))
    counts = [0] * (n + 1)
    for pattern in range(1 << n):
        basis = _basis_for_pattern(cols, pattern, knowns)
        if not _is_solvable(basis, target):
            counts[bin(pattern).count("1")] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def _pinned_weight_counts(G: BitMatrix,
                          positions: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """counts[w][r] = weight-w patterns pinning r independent message combos.

    r is the number of independent linear functionals of the message bits
    determined by the unerased coordinates: the observation leaves the
    message uniform on an affine set of dimension k - r.  Counting bits
    individually would undercount (Eve may learn an XOR of two message
    bits without learning either), so r is the rank gained by adjoining
    the message unit vectors to the unerased column span.
    """
    n = G.rows
    cols = tuple(G.column_bits(c) for c in range(G.cols))
    k = len(positions)
    counts = [[0] * (k + 1) for _ in range(n + 1)]
    for pattern in range(1 << n):
        basis = _basis_for_pattern(cols, pattern, ())
        pinned = 0
        for j in positions:
            if gf2._rref_insert(basis, 1 << j) < 0:
                pinned += 1
        counts[bin(pattern).count("1")][pinned] += 1
    return tuple(tuple(row) for row in counts)


def exact_bitchannel_erasure(G: BitMatrix, known, target: int, p):
    """Pr[target bit not solvable from unerased coordinates + known bits]."""
    n = G.rows
    if n > ERASURE_LIMIT:
        raise ValueError("blocklength %d exceeds exact enumeration limit %d"
                         % (n, ERASURE_LIMIT))
    if not 0 <= target < G.cols:
        raise ValueError("target out of range")
    knowns = tuple(sorted(set(known)))
    counts = _unsolvable_weight_counts(G, knowns, target)
    return sum(c * _pattern_probability(p, n, w)
               for w, c in enumerate(counts) if c)


def exact_joint_tvd(G: BitMatrix, message_positions, p):
    """Exact TVD between (message, Eve's view) and uniform x Eve's marginal.

    Conditioned on a pattern pinning r message bits, the posterior on the
    2^k messages is uniform over a coset of size 2^(k-r); its TVD from the
    uniform distribution is 1 - 2^(-r).
    """
    n = G.rows
    if n > JOINT_LIMIT:
        raise ValueError("blocklength %d exceeds exact enumeration limit %d"
                         % (n, JOINT_LIMIT))
    positions = tuple(message_positions)
    counts = _pinned_weight_counts(G, positions)
    exact = isinstance(p, Fraction)
    total = 0
    for w, row in enumerate(counts):
        for r, c in enumerate(row):
            if not c or r == 0:
                continue
            gap = 1 - (Fraction(1, 1 << r) if exact else 2.0 ** -r)
            total += c * _pattern_probability(p, n, w) * gap
    return total


def exact_leakage(G: BitMatrix, message_positions, p):
    """Exact I(message; Eve's view) in bits: the expected pinned-bit count."""
    n = G.rows
    if n > JOINT_LIMIT:
        raise ValueError("blocklength %d exceeds exact enumeration limit %d"
                         % (n, JOINT_LIMIT))
    positions = tuple(message_positions)
    counts = _pinned_weight_counts(G, positions)
    return sum(c * r * _pattern_probability(p, n, w)
               for w, row in enumerate(counts)
               for r, c in enumerate(row) if c and r)
