"""Polar and Reed-Muller generator matrices and message-position selection.

Both families share the wiretap convention used throughout this package:
the k message bits ride on the rows whose bit-channels are worst for the
eavesdropper, and the remaining rows carry uniform random fill.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import gf2
from .gf2 import BitMatrix

POLAR = "polar"
REED_MULLER = "reed-muller"
FAMILIES = (POLAR, REED_MULLER)

_KERNEL = BitMatrix.from_rows([[1, 0], [1, 1]])


@dataclass(frozen=True)
class CodeSpec:
    """A wiretap code: family, blocklength, generator, message positions."""

    family: str
    m: int
    n: int
    generator: BitMatrix
    k: int
    message_positions: tuple[int, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown family %r" % (self.family,))
        if self.n != 1 << self.m:
            raise ValueError("n must equal 2^m")
        if not 0 <= self.k <= self.n:
            raise ValueError("k out of range")
        if len(self.message_positions) != self.k:
            raise ValueError("message position count must equal k")
        if list(self.message_positions) != sorted(set(self.message_positions)):
            raise ValueError("message positions must be strictly increasing")
        if self.message_positions and not (
                0 <= self.message_positions[0]
                and self.message_positions[-1] < self.n):
            raise ValueError("message positions out of range")


def polar_generator(m: int) -> BitMatrix:
    """Kronecker power of the 2x2 polar kernel (no bit-reversal)."""
    return gf2.kron_power(_KERNEL, m)


def _rm_basis_vector(m: int, i: int) -> int:
    """v_i: 2^(i-1) repetitions of [2^(m-i) ones, 2^(m-i) zeros]; v_0 all ones."""
    n = 1 << m
    if i == 0:
        return (1 << n) - 1
    block = 1 << (m - i)
    ones = (1 << block) - 1
    acc = 0
    for r in range(1 << (i - 1)):
        acc |= ones << (r * 2 * block)
    return acc


@lru_cache(maxsize=None)
def rm_generator(m: int) -> BitMatrix:
    """All monomial rows (Boolean products of subsets of v_1..v_m).

    Rows are listed degree-descending and, within a degree, in
    lexicographically descending subset order, then stable-sorted by
    Hamming weight ascending (a no-op reordering, kept for clarity: a
    degree-d product has weight 2^(m-d)).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 1 << m
    rows = []
    for deg in range(m, -1, -1):
        for subset in sorted(itertools.combinations(range(1, m + 1), deg),
                             reverse=True):
            acc = (1 << n) - 1
            for i in subset:
                acc &= _rm_basis_vector(m, i)
            rows.append(acc)
    rows.sort(key=lambda r: bin(r).count("1"))  # stable
    return BitMatrix(n, n, tuple(rows))


def polar_bitchannel_erasure(m: int, p: float) -> list[float]:
    """Exact erasure probabilities of the n polar bit-channels over BEC(p).

    One recursion step maps p to (2p - p^2, p^2); channel index i applies
    the steps along its binary digits, most significant first, with digit 0
    taking the first branch.  The resulting indexing matches the
    no-bit-reversal transform (validated against exhaustive enumeration in
    the test suite).
    """
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    probs = [p]
    for _ in range(m):
        nxt = []
        for q in probs:
            nxt.append(2 * q - q * q)
            nxt.append(q * q)
        probs = nxt
    return probs


def message_positions(family: str, m: int, k: int, eve_p: float) -> list[int]:
    """Row indices carrying the message, sorted ascending.

    Polar: the k bit-channels with highest erasure probability under
    BEC(eve_p) (for a BEC the Bhattacharyya parameter is the erasure
    probability); equal probabilities break toward the lower index.
    Reed-Muller: the first k rows (lowest Hamming weights).
    """
    n = 1 << m
    if not 0 <= k <= n:
        raise ValueError("k out of range")
    if family == REED_MULLER:
        return list(range(k))
    if family != POLAR:
        raise ValueError("unknown family %r" % (family,))
    erasure = polar_bitchannel_erasure(m, eve_p)
    order = sorted(range(n), key=lambda i: (-erasure[i], i))
    return sorted(order[:k])


def make_code(family: str, m: int, k: int, eve_p: float) -> CodeSpec:
    """Assemble a CodeSpec for the given family and message length."""
    if family == POLAR:
        gen = polar_generator(m)
    elif family == REED_MULLER:
        gen = rm_generator(m)
    else:
        raise ValueError("unknown family %r" % (family,))
    pos = tuple(message_positions(family, m, k, eve_p))
    return CodeSpec(family, m, 1 << m, gen, k, pos)
