"""End-to-end wiretap transmission: encoder, channels, Bob's decoder.

Alice places the message on the code's message positions and fills the
remaining input bits with fresh uniform bits; Bob sees the codeword
noiselessly and inverts the generator; Eve sees it through a BEC.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels, bitchannel, gf2
from .codes import CodeSpec
from .gf2 import BitMatrix, BitVector

ERASED = -1  # Eve's erasure symbol; kept out of the {0,1} bit alphabet


@dataclass(frozen=True)
class Codeword:
    """Input vector u (message + random fill) and codeword x = u G."""

    u: BitVector
    x: BitVector


@dataclass(frozen=True)
class EveObservation:
    """Eve's view: int8 array over {0, 1, ERASED}."""

    z: np.ndarray


@lru_cache(maxsize=None)
def _inverse(generator: BitMatrix) -> BitMatrix:
    return gf2.invert(generator)


def encode(message: BitVector, code: CodeSpec,
           rng: np.random.Generator) -> Codeword:
    """Embed the message, draw the random fill from rng, multiply by G."""
    if len(message) != code.k:
        raise ValueError("message length %d != k=%d" % (len(message), code.k))
    fill_positions = [i for i in range(code.n) if i not in set(code.message_positions)]
    fill = rng.integers(0, 2, size=len(fill_positions))
    u = 0
    for j, pos in enumerate(code.message_positions):
        u |= message[j] << pos
    for b, pos in zip(fill, fill_positions):
        u |= int(b) << pos
    uv = BitVector(code.n, u)
    return Codeword(u=uv, x=code.generator.vec_mul(uv))


def bob_decode(y: BitVector, code: CodeSpec) -> BitVector:
    """Recover the message from a noiseless observation: u = y G^-1."""
    if len(y) != code.n:
        raise ValueError("observation length mismatch")
    u = _inverse(code.generator).vec_mul(y)
    if code.k == 0:
        raise ValueError("code carries no message bits")
    bits = 0
    for j, pos in enumerate(code.message_positions):
        bits |= u[pos] << j
    return BitVector(code.k, bits)


def eve_channel(x: BitVector, p: float, rng: np.random.Generator) -> EveObservation:
    """Erase each codeword coordinate independently with probability p."""
    if not 0 <= p <= 1:
        raise ValueError("p must be in [0, 1]")
    bits = np.array(x.to_list(), dtype=np.int8)
    erased = rng.random(len(bits)) < p
    z = np.where(erased, np.int8(ERASED), bits)
    return EveObservation(z=z)


def empirical_pinned_bits(code: CodeSpec, p: float, trials: int = 10_000,
                          seed: int = 0, workers=None) -> float:
    """Mean fraction of message bits Eve can pin down per transmission.

    A message bit counts as pinned when it is determined by the unerased
    codeword coordinates together with the earlier message bits, i.e. the
    count per trial is the number of independent message degrees of
    freedom Eve resolves (its expectation is the exact leakage divided by
    k).  Only the erasure pattern matters for a linear code over a BEC,
    so no input bits are sampled; the result is deterministic in
    (code, p, trials, seed).
    """
    if code.k < 1:
        raise ValueError("need at least one message bit")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    cols = bitchannel.packed_columns(code)
    targets = np.asarray(code.message_positions, dtype=np.int64)

    def run(chunk_index, size):
        counts = np.zeros(len(targets), dtype=np.int64)
        pats = bitchannel.pattern_chunk(code.n, p, seed, chunk_index, size)
        _kernels.chain_counts(cols, pats, targets, True, counts)
        return counts

    fails = bitchannel._accumulate(run, trials, workers)
    return float(sum(trials - c for c in fails)) / (code.k * trials)
