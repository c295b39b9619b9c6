import itertools
import math
import random
from fractions import Fraction

import pytest

import coversieve as cs

from conftest import random_system


class TestAlpha:
    def test_worked_product(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (4, 1), (3, 0)])
        assert cs.alpha(system) == Fraction(1, 4)

    def test_interval_telescopes(self):
        # over (N, KN] the product collapses to N / KN
        S = cs.ModuliSet.from_iterable(range(11, 31))
        assert cs.alpha(S) == Fraction(10, 30)

    def test_modulus_one_kills_product(self):
        assert cs.alpha(cs.ResidueSystem.from_pairs([(1, 0)])) == 0

    def test_depends_only_on_moduli(self):
        rnd = random.Random(30)
        for _ in range(40):
            system = random_system(rnd, max_classes=5)
            perm = list(system.classes)
            rnd.shuffle(perm)
            assert cs.alpha(system) == cs.alpha(cs.ResidueSystem(tuple(perm)))


class TestBeta:
    def test_single_noncoprime_pair(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (4, 1), (3, 0)])
        assert cs.beta(system) == Fraction(1, 8)

    def test_coprime_is_zero(self):
        assert cs.beta(cs.ResidueSystem.from_pairs([(2, 0), (3, 1)])) == 0

    def test_multiset_pairs_counted(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (2, 1), (4, 3)])
        assert cs.beta(system) == Fraction(1, 2)

    def test_nonnegative_zero_iff_pairwise_coprime(self):
        rnd = random.Random(31)
        for _ in range(120):
            system = random_system(rnd, max_classes=5)
            b = cs.beta(system)
            assert b >= 0
            mods = [c.modulus for c in system.classes]
            coprime = all(
                math.gcd(mods[i], mods[j]) == 1
                for i in range(len(mods))
                for j in range(i + 1, len(mods))
            )
            assert (b == 0) == coprime


class TestPairCorrectionBound:
    def test_plain_worked(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (4, 1), (3, 0)])
        cert = cs.pair_correction_bound(system)
        assert cert.lower_bound == Fraction(1, 8)
        assert cert.kind == "pair-correction"
        assert cert.conclusion == "positive"
        assert cert.lower_bound <= cs.exact_density(system).value

    def test_refined_worked_is_tight_here(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (4, 1), (3, 0)])
        cert = cs.pair_correction_bound(system, refined=True)
        assert cert.lower_bound == Fraction(1, 6)
        assert cert.lower_bound == cs.exact_density(system).value

    def test_coprime_certificate_is_alpha(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (3, 1), (5, 2)])
        cert = cs.pair_correction_bound(system, refined=True)
        assert cert.lower_bound == cs.alpha(system)
        assert cert.components["beta"] == 0

    def test_plain_equals_alpha_minus_beta(self):
        rnd = random.Random(32)
        for _ in range(80):
            system = random_system(rnd)
            cert = cs.pair_correction_bound(system)
            assert cert.lower_bound == cs.alpha(system) - cs.beta(system)

    def test_refined_at_least_plain(self):
        rnd = random.Random(33)
        for _ in range(120):
            system = random_system(rnd)
            assert (
                cs.pair_correction_bound(system, refined=True).lower_bound
                >= cs.pair_correction_bound(system).lower_bound
            )

    def test_refined_below_delta_under_any_order(self):
        rnd = random.Random(34)
        for _ in range(25):
            system = random_system(rnd, max_classes=4)
            delta = cs.exact_density(system).value
            for perm in itertools.permutations(system.classes):
                cert = cs.pair_correction_bound(cs.ResidueSystem(perm), refined=True)
                assert cert.lower_bound <= delta

    def test_sort_desc_toggle_still_sound(self):
        rnd = random.Random(35)
        for _ in range(60):
            system = random_system(rnd)
            cert = cs.pair_correction_bound(system, refined=True, sort_desc=True)
            assert cert.lower_bound <= cs.exact_density(system).value


class TestSmoothTailSum:
    def test_three_smooth_tail(self):
        tail = cs.smooth_tail_sum(10, 3)
        assert tail.value == Fraction(37, 72)

    def test_powers_of_two(self):
        tail = cs.smooth_tail_sum(1, 2)
        assert tail.value == 1

    def test_five_smooth_below_full_product(self):
        tail = cs.smooth_tail_sum(100, 5)
        assert tail.value == Fraction(5503, 25920)
        assert tail.value < cs.euler_product(5) == Fraction(15, 4)

    def test_monotonicity(self):
        assert cs.smooth_tail_sum(10, 3).value > cs.smooth_tail_sum(50, 3).value
        assert cs.smooth_tail_sum(50, 3).value < cs.smooth_tail_sum(50, 5).value

    def test_segment_identity(self):
        # tail(N) - tail(10N) must equal the directly enumerated segment
        for N, Q in [(10, 3), (30, 5), (12, 7)]:
            seg = sum(
                (Fraction(1, n) for n in cs.smooth_numbers(10 * N, Q) if n > N),
                Fraction(0),
            )
            assert cs.smooth_tail_sum(N, Q).value - cs.smooth_tail_sum(10 * N, Q).value == seg

    def test_shape_fields(self):
        tail = cs.smooth_tail_sum(1000, 10)
        assert tail.u == pytest.approx(3.0, abs=1e-12)
        assert tail.asymptotic_shape > 0

    def test_rejects_q_below_two(self):
        with pytest.raises(ValueError):
            cs.smooth_tail_sum(10, 1.5)


class TestLThreshold:
    def test_million(self):
        assert cs.reciprocal_sum_threshold(10**6, 1) == pytest.approx(160.6657, abs=0.001)

    def test_small_n_direct(self):
        x = math.log(20)
        expected = math.exp(math.log(20) * math.log(math.log(x)) / math.log(x))
        assert cs.reciprocal_sum_threshold(20, 1) == pytest.approx(expected, rel=1e-12)

    def test_decreasing_in_s(self):
        vals = [cs.reciprocal_sum_threshold(10**6, s) for s in (1, 10, 100)]
        assert vals[0] > vals[1] > vals[2]

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            cs.reciprocal_sum_threshold(19, 1)
        with pytest.raises(ValueError):
            cs.reciprocal_sum_threshold(10**6, 0)
