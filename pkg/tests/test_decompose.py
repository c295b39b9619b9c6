import math
import random
from fractions import Fraction

import pytest

import coversieve as cs
from coversieve.core import GuardExceeded
from coversieve.decompose import SmoothCoverError

from conftest import random_system

WORKED = cs.ResidueSystem.from_pairs([(2, 0), (3, 1), (6, 5)])


class TestDecompose:
    def test_worked_example(self):
        dec = cs.decompose(WORKED, 2)
        assert dec.M == 2
        assert dec.subsystem_at(0).pairs() == [(1, 0), (3, 1)]
        assert dec.subsystem_at(1).pairs() == [(3, 1), (3, 2)]
        by_rep = {g.representative: g for g in dec.groups}
        assert by_rep[0].subsystem.pairs() == [(1, 0), (3, 1)]
        assert by_rep[1].subsystem.pairs() == [(3, 1), (3, 2)]

    def test_all_rough_moduli(self):
        system = cs.ResidueSystem.from_pairs([(7, 3), (11, 5), (13, 1)])
        dec = cs.decompose(system, 5)
        assert dec.M == 1
        assert len(dec.groups) == 1
        assert dec.groups[0].subsystem.pairs() == sorted(system.pairs())

    def test_fully_smooth_modulus(self):
        dec = cs.decompose(cs.ResidueSystem.from_pairs([(4, 1)]), 2)
        assert dec.M == 4
        assert dec.subsystem_at(1).pairs() == [(1, 0)]
        for h in (0, 2, 3):
            assert dec.subsystem_at(h).pairs() == []

    def test_rough_moduli_coprime_to_m(self):
        rnd = random.Random(40)
        for _ in range(60):
            system = random_system(rnd, max_classes=5)
            Q = rnd.choice([2, 3, 5, 7])
            dec = cs.decompose(system, Q)
            for g in dec.groups:
                for c in g.subsystem.classes:
                    assert math.gcd(c.modulus, dec.M) == 1

    def test_membership_rule_at_every_h(self):
        rnd = random.Random(41)
        for _ in range(25):
            system = random_system(rnd, max_classes=4)
            Q = rnd.choice([2, 3, 5])
            dec = cs.decompose(system, Q)
            covered_h = 0
            for g in dec.groups:
                direct = dec.subsystem_at(g.representative)
                assert direct.pairs() == g.subsystem.pairs()
                covered_h += g.count
            assert covered_h == dec.M

    def test_landing_conservation(self):
        # each class admits exactly M / smooth-part of the h values
        rnd = random.Random(42)
        for _ in range(40):
            system = random_system(rnd, max_classes=5)
            dec = cs.decompose(system, 3)
            landings = sum(g.count * len(g.class_indices) for g in dec.groups)
            assert landings == sum(dec.M // s for s, _ in dec.splits)

    def test_merged_duplicates_counted_once(self):
        # (3,1) and (6,4) agree mod 3 and collide in the even subsystems
        dec = cs.decompose(cs.ResidueSystem.from_pairs([(3, 1), (6, 4)]), 2)
        assert dec.M == 2
        even = dec.subsystem_at(0)
        assert even.pairs() == [(3, 1)]
        group = {g.representative: g for g in dec.groups}[0]
        assert len(group.class_indices) == 2 and len(group.subsystem) == 1

    def test_guard(self):
        system = cs.ResidueSystem.from_pairs([(2**20, 1), (3**13, 2)])
        with pytest.raises(GuardExceeded):
            cs.decompose(system, 3, guard_m=10**6)

    def test_q_below_two_rejected(self):
        with pytest.raises(ValueError):
            cs.decompose(WORKED, 1.5)


class TestDecompositionIdentity:
    def test_worked_example(self):
        rep = cs.decomposition_identity(WORKED, 2)
        assert rep.lhs == Fraction(1, 6)
        assert rep.rhs == Fraction(1, 6)
        assert rep.equal

    def test_trivial_when_m_is_one(self):
        system = cs.ResidueSystem.from_pairs([(7, 3), (11, 5)])
        rep = cs.decomposition_identity(system, 5)
        assert rep.M == 1 and rep.equal

    def test_randomized_exact(self):
        rnd = random.Random(43)
        for _ in range(80):
            system = random_system(rnd, max_classes=5, allow_unit=True)
            Q = rnd.choice([2, 3, 5])
            rep = cs.decomposition_identity(system, Q)
            assert rep.equal, f"{system} Q={Q}: {rep.lhs} != {rep.rhs}"

    def test_density_decomposed_report(self):
        rep = cs.density_decomposed(WORKED, 2)
        assert rep.method == "decomposition"
        assert rep.value == Fraction(1, 6)
        assert rep.value == Fraction(rep.uncovered_count, rep.period)

    def test_density_decomposed_works_past_scan_guard(self):
        # full period 144144 exceeds a 1e5 scan guard, but M = 144 and the
        # rough subsystems live on {7, 11, 13}; the unrestricted scan is the
        # independent cross-check
        system = cs.ResidueSystem.from_pairs([(84, 5), (132, 17), (234, 8), (112, 51)])
        with pytest.raises(GuardExceeded):
            cs.exact_density(system, guard=10**5)
        rep = cs.density_decomposed(system, 5, density_guard=10**5)
        assert rep.value == cs.exact_density(system).value


class TestAveragedBeta:
    def test_worked_example(self):
        avg = cs.averaged_beta(WORKED, 2)
        assert avg.value == Fraction(1, 18)
        assert avg.diagnostic_shape > 0

    def test_zero_when_rough_parts_coprime(self):
        system = cs.ResidueSystem.from_pairs([(6, 1), (10, 3), (21, 2)])
        # rough parts for Q=3 are 1, 5, 7: pairwise coprime in every subsystem
        assert cs.averaged_beta(system, 3).value == 0

    def test_matches_direct_per_h_average(self):
        rnd = random.Random(44)
        for _ in range(30):
            system = random_system(rnd, max_classes=4)
            Q = rnd.choice([2, 3, 5])
            dec = cs.decompose(system, Q)
            direct = sum(
                (cs.beta(dec.subsystem_at(h)) for h in range(dec.M)), Fraction(0)
            ) / dec.M
            assert cs.averaged_beta(system, Q).value == direct


class TestAveragedAlphaFloor:
    def test_worked_example(self):
        res = cs.averaged_alpha_floor(WORKED, 2)
        assert res.avg_alpha == Fraction(2, 9)
        assert res.delta_smooth == Fraction(1, 2)
        assert res.floor == pytest.approx(float(Fraction(5, 18) ** 3), rel=1e-12)
        assert res.holds

    def test_m_one_floor_below_alpha(self):
        system = cs.ResidueSystem.from_pairs([(7, 3), (11, 5)])
        res = cs.averaged_alpha_floor(system, 5)
        assert res.avg_alpha == cs.alpha(system)
        assert res.floor <= float(res.avg_alpha) + 1e-12
        assert res.holds

    def test_smooth_cover_error(self):
        system = cs.ResidueSystem.from_pairs([(2, 0), (2, 1), (5, 2)])
        with pytest.raises(SmoothCoverError):
            cs.averaged_alpha_floor(system, 2)

    def test_holds_on_randomized_systems(self):
        rnd = random.Random(45)
        checked = 0
        while checked < 60:
            system = random_system(rnd, max_classes=5)
            Q = rnd.choice([2, 3, 5])
            try:
                res = cs.averaged_alpha_floor(system, Q)
            except SmoothCoverError:
                continue
            assert res.holds, f"{system} Q={Q}"
            checked += 1


class TestPositivityCertificate:
    def test_worked_example_tight(self):
        cert = cs.positivity_certificate(WORKED, 2)
        assert cert.lower_bound == Fraction(1, 6)
        assert cert.conclusion == "positive"
        assert cert.kind == "decomposed"

    def test_never_positive_on_exact_covers(self):
        for pairs in (
            [(2, 0), (2, 1)],
            [(2, 0), (4, 1), (4, 3)],
            [(2, 0), (3, 0), (4, 1), (6, 1), (12, 11)],
        ):
            system = cs.ResidueSystem.from_pairs(pairs)
            for Q in (2, 3, 5):
                cert = cs.positivity_certificate(system, Q)
                assert cert.conclusion == "inconclusive"
                assert cert.lower_bound <= 0

    def test_sound_against_scan(self):
        rnd = random.Random(46)
        for _ in range(100):
            system = random_system(rnd, max_classes=5)
            Q = rnd.choice([2, 3, 5, 7])
            cert = cs.positivity_certificate(system, Q)
            assert cert.lower_bound <= cs.exact_density(system).value

    def test_reduces_to_plain_bound_when_m_one(self):
        system = cs.ResidueSystem.from_pairs([(7, 3), (77, 5), (13, 1)])
        cert = cs.positivity_certificate(system, 5)
        plain = cs.pair_correction_bound(system).lower_bound
        assert cert.components["M"] == 1
        assert cert.lower_bound == max(Fraction(0), plain)

    def test_audit_totals(self):
        cert = cs.positivity_certificate(WORKED, 2)
        per = cert.components["per_pattern"]
        total = sum((row["h_count"] * row["term"] for row in per), Fraction(0))
        assert total / cert.components["M"] == cert.lower_bound


class TestSuggestQ:
    def test_largest_prime_below_sqrt(self):
        system = cs.ResidueSystem.from_pairs([(100, 1)])
        assert cs.suggest_Q(system) == 7
        assert cs.suggest_Q(cs.ResidueSystem.from_pairs([(4, 1)])) == 2
