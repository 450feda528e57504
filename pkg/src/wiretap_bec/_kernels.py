"""Bit-packed GF(2) solvability kernels for Monte-Carlo estimation.

The generator matrix is passed as packed columns: ``colmasks[c, w]`` holds
bits 64w..64w+63 of column c, where bit j is row j of the generator.  One
erasure pattern costs a single echelon reduction of the unerased columns;
pivoting on the highest set row index makes the pivot set equal to the set
of full-past solvable inputs, so all n bit-channels are settled per trial.

All kernels accumulate integer failure counts, so aggregation across
pattern chunks is exact and commutative (deterministic for any thread
count).
"""

import numpy as np
from numba import njit

_ZERO = np.uint64(0)


@njit(cache=True, nogil=True, inline="always")
def _top_bit(v, W):
    for w in range(W - 1, -1, -1):
        x = v[w]
        if x != _ZERO:
            b = 0
            while x > np.uint64(1):
                x >>= np.uint64(1)
                b += 1
            return w * 64 + b
    return -1


@njit(cache=True, nogil=True, inline="always")
def _reduce_top(v, basis, present, W):
    """Reduce v against the basis; return its new top bit, or -1 if spanned."""
    while True:
        b = _top_bit(v, W)
        if b < 0:
            return -1
        if present[b]:
            hw = b // 64
            for w in range(hw + 1):
                v[w] ^= basis[b, w]
        else:
            return b


@njit(cache=True, nogil=True, inline="always")
def _build_basis(colmasks, pats, t, basis, present, v, n, W):
    for i in range(n):
        present[i] = False
    for c in range(n):
        if not pats[t, c]:
            for w in range(W):
                v[w] = colmasks[c, w]
            b = _reduce_top(v, basis, present, W)
            if b >= 0:
                for w in range(W):
                    basis[b, w] = v[w]
                present[b] = True


@njit(cache=True, nogil=True)
def full_past_counts(colmasks, pats, counts):
    """Add per-index full-past unsolvability counts over a pattern chunk."""
    n, W = colmasks.shape
    basis = np.zeros((n, W), np.uint64)
    present = np.zeros(n, np.bool_)
    v = np.empty(W, np.uint64)
    for t in range(pats.shape[0]):
        _build_basis(colmasks, pats, t, basis, present, v, n, W)
        for i in range(n):
            if not present[i]:
                counts[i] += 1


@njit(cache=True, nogil=True, inline="always")
def _chain_step(basis, present, v, target, insert_known, W):
    """Test one target against the basis; returns True when unsolvable."""
    for w in range(W):
        v[w] = _ZERO
    v[target // 64] = np.uint64(1) << np.uint64(target % 64)
    b = _reduce_top(v, basis, present, W)
    if b < 0:
        return False
    if insert_known:
        for w in range(W):
            basis[b, w] = v[w]
        present[b] = True
    return True


@njit(cache=True, nogil=True)
def chain_counts(colmasks, pats, targets, insert_knowns, counts):
    """Per-target unsolvability counts with the preceding targets as knowns.

    With ``insert_knowns`` False the targets are tested independently
    against the observation alone (pinned-bit statistic).
    """
    n, W = colmasks.shape
    basis = np.zeros((n, W), np.uint64)
    present = np.zeros(n, np.bool_)
    v = np.empty(W, np.uint64)
    for t in range(pats.shape[0]):
        _build_basis(colmasks, pats, t, basis, present, v, n, W)
        for j in range(targets.shape[0]):
            if _chain_step(basis, present, v, targets[j], insert_knowns, W):
                counts[j] += 1


@njit(cache=True, nogil=True)
def multi_chain_counts(colmasks, pats, targets_flat, offsets, counts_flat):
    """chain_counts for several candidate target lists sharing the patterns.

    Candidate c owns targets_flat[offsets[c]:offsets[c+1]].  The erasure
    pattern's echelon basis is built once per trial and copied per
    candidate, so every candidate's estimate uses identical channel
    realizations.
    """
    n, W = colmasks.shape
    basis0 = np.zeros((n, W), np.uint64)
    present0 = np.zeros(n, np.bool_)
    basis = np.zeros((n, W), np.uint64)
    present = np.zeros(n, np.bool_)
    v = np.empty(W, np.uint64)
    ncand = offsets.shape[0] - 1
    for t in range(pats.shape[0]):
        _build_basis(colmasks, pats, t, basis0, present0, v, n, W)
        for c in range(ncand):
            for i in range(n):
                present[i] = present0[i]
                if present0[i]:
                    for w in range(W):
                        basis[i, w] = basis0[i, w]
            for j in range(offsets[c], offsets[c + 1]):
                if _chain_step(basis, present, v, targets_flat[j], True, W):
                    counts_flat[j] += 1
