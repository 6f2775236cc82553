"""Kemeny solver against exhaustive search, plus displacement metrics."""

import itertools
import random
from fractions import Fraction

import pytest

from seqrank.core import Profile, Ranking, swap_distance
from seqrank.errors import ResourceLimitError
from seqrank.kemeny import (
    disagreement_matrix,
    kemeny_ranking_tiebroken,
    kemeny_rankings,
    kemeny_total_distance,
    position_displacement,
)
from seqrank.majority import weighted_majority_graph


def exhaustive_kemeny(profile):
    """Independent oracle: scan all m! rankings."""
    best = None
    arg = []
    for perm in itertools.permutations(range(profile.m)):
        r = Ranking(perm)
        total = kemeny_total_distance(r, profile)
        if best is None or total < best:
            best, arg = total, [r]
        elif total == best:
            arg.append(r)
    return frozenset(arg), best


def random_profile(rng, m_max=7, n_max=8):
    m = rng.randint(2, m_max)
    groups = [
        (rng.randint(1, 3), Ranking(rng.sample(range(m), m)))
        for _ in range(rng.randint(1, n_max))
    ]
    return Profile(m, groups)


class TestTotalDistance:
    def test_worked_values(self, p0):
        assert kemeny_total_distance(Ranking([1, 2, 0]), p0) == 8
        assert kemeny_total_distance(Ranking([1, 0, 2]), p0) == 9

    def test_unanimous_zero(self):
        profile = Profile(4, [(6, [3, 1, 0, 2])])
        assert kemeny_total_distance(Ranking([3, 1, 0, 2]), profile) == 0


class TestSolver:
    def test_worked_example(self, p0):
        selected, optimum = kemeny_rankings(p0)
        assert selected == {Ranking([1, 2, 0])}
        assert optimum == 8

    def test_unanimous(self):
        profile = Profile(5, [(4, [2, 4, 0, 1, 3])])
        selected, optimum = kemeny_rankings(profile)
        assert selected == {Ranking([2, 4, 0, 1, 3])} and optimum == 0

    def test_single_voter(self):
        rng = random.Random(0)
        for _ in range(10):
            m = rng.randint(2, 6)
            r = Ranking(rng.sample(range(m), m))
            selected, optimum = kemeny_rankings(Profile(m, [(1, r)]))
            assert r in selected and optimum == 0

    def test_matches_exhaustive(self):
        rng = random.Random(1)
        for _ in range(100):
            profile = random_profile(rng)
            got_set, got_opt = kemeny_rankings(profile)
            want_set, want_opt = exhaustive_kemeny(profile)
            assert got_opt == want_opt
            assert got_set == want_set

    def test_bound(self):
        profile = Profile(17, [(1, list(range(17)))])
        with pytest.raises(ResourceLimitError):
            kemeny_rankings(profile)

    def test_reversal_symmetry(self):
        rng = random.Random(2)
        for _ in range(30):
            profile = random_profile(rng, m_max=6)
            direct, opt1 = kemeny_rankings(profile)
            mirrored, opt2 = kemeny_rankings(profile.reverse())
            assert opt1 == opt2
            assert direct == {r.reverse() for r in mirrored}

    def test_condorcet_winner_placed_first(self):
        rng = random.Random(3)
        found = 0
        while found < 30:
            profile = random_profile(rng, m_max=6)
            w = weighted_majority_graph(profile).weights
            cw = next(
                (
                    c
                    for c in range(profile.m)
                    if all(w[c, d] > 0 for d in range(profile.m) if d != c)
                ),
                None,
            )
            if cw is None:
                continue
            found += 1
            selected, _ = kemeny_rankings(profile)
            assert all(r.candidate_at(1) == cw for r in selected)


class TestTiebroken:
    def test_picks_lexicographic_minimum_by_priority(self):
        rng = random.Random(4)
        for _ in range(40):
            profile = random_profile(rng, m_max=6)
            tie = Ranking(rng.sample(range(profile.m), profile.m))
            selected, _ = kemeny_rankings(profile)
            chosen = kemeny_ranking_tiebroken(profile, tie)
            assert chosen in selected
            key = lambda r: tuple(tie.position(c) for c in r.order)
            assert key(chosen) == min(key(r) for r in selected)


class TestDisagreementMatrix:
    def test_invariants(self, p0):
        mat = disagreement_matrix(p0)
        n = p0.n
        for c in range(3):
            assert mat[c, c] == 0
            for d in range(3):
                if c != d:
                    assert mat[c, d] + mat[d, c] == n

    def test_entry_meaning(self, p0):
        mat = disagreement_matrix(p0)
        # 4 voters prefer b over a: cost of ranking a above b
        assert mat[0, 1] == 4


class TestPositionDisplacement:
    def test_worked_values(self):
        r1 = Ranking([0, 1, 2, 3])
        r2 = Ranking([3, 2, 0, 1])
        assert position_displacement(r1, r2, 1) == Fraction(5, 2)
        assert position_displacement(r1, r2, 2) == Fraction(3, 2)

    def test_identical(self):
        r = Ranking([2, 0, 1])
        for i in (1, 2, 3):
            assert position_displacement(r, r, i) == 0

    def test_out_of_range(self):
        r = Ranking([0, 1])
        with pytest.raises(ValueError):
            position_displacement(r, r, 3)

    def test_symmetric(self):
        rng = random.Random(5)
        for _ in range(50):
            m = rng.randint(2, 8)
            r1 = Ranking(rng.sample(range(m), m))
            r2 = Ranking(rng.sample(range(m), m))
            i = rng.randint(1, m)
            assert position_displacement(r1, r2, i) == position_displacement(r2, r1, i)
