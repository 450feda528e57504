import math
from collections import Counter

import pytest

from wiretap_bec import codes, gf2, oracle


class TestPolarGenerator:
    def test_m2(self):
        assert codes.polar_generator(2).to_lists() == [
            [1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]]

    @pytest.mark.parametrize("m", [1, 2, 3, 6, 10])
    def test_involution(self, m):
        G = codes.polar_generator(m)
        assert G.mat_mul(G) == gf2.BitMatrix.identity(1 << m)

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_row_weights(self, m):
        # row i of the m-fold kernel power has weight 2^(ones in binary i)
        G = codes.polar_generator(m)
        for i in range(1 << m):
            assert G.row(i).weight() == 1 << bin(i).count("1")


class TestRmGenerator:
    def test_m2(self):
        assert codes.rm_generator(2).to_lists() == [
            [1, 0, 0, 0], [1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 1]]

    def test_m3_extremes(self):
        G = codes.rm_generator(3)
        assert G.row(0).weight() == 1
        assert G.row(7).to_list() == [1] * 8

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_weight_multiset(self, m):
        G = codes.rm_generator(m)
        got = Counter(G.row(i).weight() for i in range(1 << m))
        want = Counter()
        for d in range(m + 1):
            want[1 << (m - d)] += math.comb(m, d)
        assert got == want

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
    def test_full_rank_and_sorted(self, m):
        G = codes.rm_generator(m)
        assert gf2.rank(G) == 1 << m
        weights = [G.row(i).weight() for i in range(1 << m)]
        assert weights == sorted(weights)

    def test_rejects_m0(self):
        with pytest.raises(ValueError):
            codes.rm_generator(0)


class TestPolarBitchannelErasure:
    def test_m1(self):
        assert codes.polar_bitchannel_erasure(1, 0.5) == [0.75, 0.25]

    def test_m2(self):
        assert codes.polar_bitchannel_erasure(2, 0.5) == \
            [0.9375, 0.5625, 0.4375, 0.0625]

    def test_degenerate_p(self):
        assert codes.polar_bitchannel_erasure(3, 0.0) == [0.0] * 8
        assert codes.polar_bitchannel_erasure(3, 1.0) == [1.0] * 8

    @pytest.mark.parametrize("m", [1, 2, 4, 6, 8])
    @pytest.mark.parametrize("p", [0.1, 0.4, 0.9])
    def test_capacity_preserved(self, m, p):
        # the transform is rate-preserving: mean erasure stays p
        probs = codes.polar_bitchannel_erasure(m, p)
        assert all(0 <= q <= 1 for q in probs)
        assert math.isclose(sum(probs) / len(probs), p, abs_tol=1e-12)

    def test_invalid_p(self):
        with pytest.raises(ValueError):
            codes.polar_bitchannel_erasure(2, 1.5)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    @pytest.mark.parametrize("p", [0.25, 0.5, 0.75])
    def test_matches_exhaustive_oracle(self, m, p):
        # the closed-form recursion and its index convention against
        # pattern enumeration: channel i conditions on all earlier inputs
        G = codes.polar_generator(m)
        closed = codes.polar_bitchannel_erasure(m, p)
        for i in range(1 << m):
            exact = oracle.exact_bitchannel_erasure(G, range(i), i, p)
            assert math.isclose(closed[i], exact, abs_tol=1e-12)


class TestMessagePositions:
    def test_rm_prefix(self):
        assert codes.message_positions(codes.REED_MULLER, 7, 3, 0.4) == [0, 1, 2]
        assert codes.message_positions(codes.REED_MULLER, 3, 0, 0.4) == []

    def test_polar_worst_channels(self):
        assert codes.message_positions(codes.POLAR, 2, 1, 0.5) == [0]
        assert codes.message_positions(codes.POLAR, 2, 2, 0.5) == [0, 1]

    def test_polar_tie_break_low_index(self):
        # p = 1 makes every channel erasure 1; ties break to low indices
        assert codes.message_positions(codes.POLAR, 2, 2, 1.0) == [0, 1]

    def test_errors(self):
        with pytest.raises(ValueError):
            codes.message_positions(codes.POLAR, 2, 5, 0.5)
        with pytest.raises(ValueError):
            codes.message_positions("bch", 2, 1, 0.5)


class TestMakeCode:
    @pytest.mark.parametrize("family", codes.FAMILIES)
    def test_consistency(self, family):
        code = codes.make_code(family, 4, 5, 0.4)
        assert (code.n, code.k) == (16, 5)
        assert len(code.message_positions) == 5
        assert code.generator.rows == 16

    def test_spec_validation(self):
        G = codes.polar_generator(2)
        with pytest.raises(ValueError):
            codes.CodeSpec("polar", 2, 5, G, 1, (0,))
        with pytest.raises(ValueError):
            codes.CodeSpec("polar", 2, 4, G, 2, (2, 1))
        with pytest.raises(ValueError):
            codes.CodeSpec("polar", 2, 4, G, 1, (4,))
