import math
from collections import defaultdict
from fractions import Fraction

import pytest

from wiretap_bec import codes, oracle
from wiretap_bec.gf2 import BitMatrix


def brute_joint(G: BitMatrix, positions, p: Fraction):
    """Distribution of (message, Eve's view) by direct enumeration.

    No rank shortcuts: every input vector and erasure pattern is walked and
    the observation tallied symbol by symbol.
    """
    n = G.rows
    k = len(positions)
    joint = defaultdict(Fraction)
    input_prob = Fraction(1, 1 << n)
    for pattern in range(1 << n):
        w = bin(pattern).count("1")
        pat_prob = p ** w * (1 - p) ** (n - w)
        if pat_prob == 0:
            continue
        for u in range(1 << n):
            x = 0
            uu = u
            while uu:
                j = (uu & -uu).bit_length() - 1
                x ^= G.data[j]
                uu &= uu - 1
            msg = 0
            for j, pos in enumerate(positions):
                msg |= ((u >> pos) & 1) << j
            z = tuple("e" if (pattern >> c) & 1 else (x >> c) & 1
                      for c in range(n))
            joint[(msg, z)] += input_prob * pat_prob
    return joint


def brute_tvd(joint, k):
    pz = defaultdict(Fraction)
    for (_, z), pr in joint.items():
        pz[z] += pr
    uniform = Fraction(1, 1 << k)
    total = Fraction(0)
    for msg in range(1 << k):
        for z, przz in pz.items():
            total += abs(joint.get((msg, z), Fraction(0)) - uniform * przz)
    return total / 2


def brute_leakage(joint, k):
    pz = defaultdict(Fraction)
    for (_, z), pr in joint.items():
        pz[z] += pr
    uniform = Fraction(1, 1 << k)
    total = 0.0
    for (msg, z), pr in joint.items():
        if pr:
            total += float(pr) * math.log2(pr / (uniform * pz[z]))
    return total


BOOTSTRAP_CASES = [
    (codes.POLAR, 2, 1, Fraction(1, 2)),
    (codes.POLAR, 2, 2, Fraction(1, 3)),
    (codes.POLAR, 2, 4, Fraction(1, 2)),
    (codes.REED_MULLER, 2, 2, Fraction(1, 2)),
    (codes.REED_MULLER, 2, 3, Fraction(1, 4)),
    (codes.REED_MULLER, 3, 3, Fraction(1, 2)),
]


class TestBootstrap:
    """The rank-arithmetic reduction against direct distribution enumeration."""

    @pytest.mark.parametrize("family,m,k,p", BOOTSTRAP_CASES)
    def test_joint_tvd(self, family, m, k, p):
        code = codes.make_code(family, m, k, float(p))
        joint = brute_joint(code.generator, code.message_positions, p)
        assert brute_tvd(joint, k) == \
            oracle.exact_joint_tvd(code.generator, code.message_positions, p)

    @pytest.mark.parametrize("family,m,k,p", BOOTSTRAP_CASES)
    def test_leakage(self, family, m, k, p):
        code = codes.make_code(family, m, k, float(p))
        joint = brute_joint(code.generator, code.message_positions, p)
        exact = oracle.exact_leakage(code.generator, code.message_positions, p)
        assert math.isclose(brute_leakage(joint, k), float(exact), abs_tol=1e-9)


class TestBitchannelErasure:
    def test_identity_code(self):
        # with G = I bit i is readable iff coordinate i survives
        G = BitMatrix.identity(4)
        for p in (Fraction(0), Fraction(3, 10), Fraction(1)):
            for i in range(4):
                assert oracle.exact_bitchannel_erasure(G, (), i, p) == p

    def test_repetition_pair(self):
        # u0 is repeated in both coordinates: lost only if both are erased
        G = BitMatrix.from_rows([[1, 1], [0, 0]])
        p = Fraction(1, 3)
        assert oracle.exact_bitchannel_erasure(G, (), 0, p) == p * p

    def test_knowns_help_monotonically(self):
        G = codes.rm_generator(3)
        for t in range(8):
            prev = 1
            for extra in range(t):
                e = oracle.exact_bitchannel_erasure(G, range(extra + 1), t, 0.5)
                assert e <= prev + 1e-15
                prev = e

    def test_limit_enforced(self):
        G = BitMatrix.identity(32)
        with pytest.raises(ValueError):
            oracle.exact_bitchannel_erasure(G, (), 0, 0.5)


class TestJointTvd:
    @pytest.mark.parametrize("family", codes.FAMILIES)
    def test_degenerate_p(self, family):
        code = codes.make_code(family, 3, 3, 0.5)
        G, pos = code.generator, code.message_positions
        assert oracle.exact_joint_tvd(G, pos, Fraction(1)) == 0
        assert oracle.exact_joint_tvd(G, pos, Fraction(0)) == \
            1 - Fraction(1, 8)

    def test_empty_message(self):
        assert oracle.exact_joint_tvd(BitMatrix.identity(4), (), 0.5) == 0

    @pytest.mark.parametrize("family", codes.FAMILIES)
    @pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2)])
    def test_k1_is_half_readability(self, family, p):
        # single message bit: TVD = (1 - erasure) / 2 for its bit-channel
        for m in (2, 3):
            code = codes.make_code(family, m, 1, float(p))
            tvd = oracle.exact_joint_tvd(code.generator,
                                         code.message_positions, p)
            e = oracle.exact_bitchannel_erasure(
                code.generator, (), code.message_positions[0], p)
            assert tvd == (1 - e) / 2

    def test_monotone_in_p(self):
        code = codes.make_code(codes.REED_MULLER, 3, 4, 0.5)
        vals = [oracle.exact_joint_tvd(code.generator, code.message_positions,
                                       Fraction(i, 10)) for i in range(11)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


class TestLeakage:
    @pytest.mark.parametrize("family", codes.FAMILIES)
    def test_degenerate_p(self, family):
        code = codes.make_code(family, 3, 5, 0.5)
        G, pos = code.generator, code.message_positions
        assert oracle.exact_leakage(G, pos, Fraction(1)) == 0
        assert oracle.exact_leakage(G, pos, Fraction(0)) == 5

    def test_identity_code_single_bit(self):
        G = BitMatrix.identity(2)
        assert oracle.exact_leakage(G, (0,), Fraction(1, 2)) == Fraction(1, 2)

    def test_monotone_in_p(self):
        code = codes.make_code(codes.POLAR, 3, 4, 0.5)
        vals = [oracle.exact_leakage(code.generator, code.message_positions,
                                     Fraction(i, 10)) for i in range(11)]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_bounded_by_k(self):
        code = codes.make_code(codes.REED_MULLER, 3, 6, 0.5)
        leak = oracle.exact_leakage(code.generator, code.message_positions,
                                    Fraction(1, 2))
        assert 0 <= leak <= 6
