"""Core data model: distances, scoring systems, profile round-trips."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqrank.core import (
    BORDA,
    HALF,
    PLURALITY,
    VETO,
    Profile,
    Ranking,
    ScoringSystem,
    losers,
    normalized_swap_distance,
    parse_profile,
    reverse_profile,
    reverse_ranking,
    reversed_system,
    scores,
    scoring_vector,
    serialize_profile,
    swap_distance,
    winners,
)
from seqrank.errors import ProfileParseError

rankings = st.integers(2, 7).flatmap(
    lambda m: st.permutations(list(range(m))).map(Ranking)
)


def brute_swap_distance(r1: Ranking, r2: Ranking) -> int:
    """Independent oracle: count disagreeing pairs directly."""
    m = r1.m
    return sum(
        1
        for c, d in itertools.combinations(range(m), 2)
        if r1.prefers(c, d) != r2.prefers(c, d)
    )


class TestSwapDistance:
    def test_identity(self):
        r = Ranking([0, 1, 2])
        assert swap_distance(r, r) == 0

    def test_reversal_attains_maximum(self):
        r = Ranking([0, 1, 2])
        assert swap_distance(r, r.reverse()) == 3

    def test_four_candidates(self):
        # brute force over all 6 pairs gives 5
        r1 = Ranking([0, 1, 2, 3])
        r2 = Ranking([3, 2, 0, 1])
        assert brute_swap_distance(r1, r2) == 5
        assert swap_distance(r1, r2) == 5

    def test_mismatched_lengths(self):
        with pytest.raises(ValueError):
            swap_distance(Ranking([0, 1]), Ranking([0, 1, 2]))

    @given(rankings, st.randoms())
    @settings(max_examples=200)
    def test_matches_brute_force(self, r1, rnd):
        order = list(r1.order)
        rnd.shuffle(order)
        r2 = Ranking(order)
        assert swap_distance(r1, r2) == brute_swap_distance(r1, r2)

    @given(rankings, st.randoms())
    @settings(max_examples=100)
    def test_symmetry_and_reversal(self, r1, rnd):
        order = list(r1.order)
        rnd.shuffle(order)
        r2 = Ranking(order)
        assert swap_distance(r1, r2) == swap_distance(r2, r1)
        m = r1.m
        assert swap_distance(r1, r1.reverse()) == m * (m - 1) // 2

    def test_triangle_inequality_on_random_triples(self):
        import random

        rng = random.Random(5)
        for _ in range(200):
            m = rng.randint(2, 8)
            a, b, c = (
                Ranking(rng.sample(range(m), m)),
                Ranking(rng.sample(range(m), m)),
                Ranking(rng.sample(range(m), m)),
            )
            assert swap_distance(a, c) <= swap_distance(a, b) + swap_distance(b, c)


class TestNormalizedSwapDistance:
    def test_extremes(self):
        r = Ranking([0, 1, 2])
        assert normalized_swap_distance(r, r.reverse()) == 1
        assert normalized_swap_distance(r, r) == 0

    def test_one_third(self):
        assert normalized_swap_distance(Ranking([0, 1, 2]), Ranking([0, 2, 1])) == Fraction(1, 3)

    def test_single_candidate_rejected(self):
        with pytest.raises(ValueError):
            normalized_swap_distance(Ranking([0]), Ranking([0]))


class TestReverse:
    def test_simple(self):
        assert reverse_ranking(Ranking([0, 1, 2])) == Ranking([2, 1, 0])

    @given(rankings)
    @settings(max_examples=50)
    def test_involution(self, r):
        assert reverse_ranking(reverse_ranking(r)) == r

    def test_reverse_profile(self, p0):
        rev = reverse_profile(p0)
        assert rev.groups == (
            (3, Ranking([2, 1, 0])),
            (2, Ranking([0, 2, 1])),
            (2, Ranking([0, 1, 2])),
        )


class TestRestrict:
    def test_single_ranking(self):
        assert Ranking([0, 1, 2]).restrict({0, 2}) == Ranking([0, 1])

    def test_profile(self, p0):
        restricted, remap = p0.restrict({1, 2})
        assert remap == {1: 0, 2: 1}
        assert restricted.groups == (
            (3, Ranking([0, 1])),
            (2, Ranking([0, 1])),
            (2, Ranking([1, 0])),
        )

    def test_full_set_is_identity(self, p0):
        restricted, remap = p0.restrict({0, 1, 2})
        assert restricted == p0
        assert remap == {0: 0, 1: 1, 2: 2}

    def test_empty_rejected(self, p0):
        with pytest.raises(ValueError):
            p0.restrict(set())

    def test_preserves_pairwise_order(self):
        import random

        rng = random.Random(11)
        for _ in range(100):
            m = rng.randint(3, 8)
            r = Ranking(rng.sample(range(m), m))
            keep = rng.sample(range(m), rng.randint(2, m))
            from seqrank.core import restriction_map

            remap = restriction_map(m, keep)
            restricted = r.restrict(keep)
            for c, d in itertools.combinations(keep, 2):
                assert r.prefers(c, d) == restricted.prefers(remap[c], remap[d])


class TestScoringSystems:
    def test_builtin_vectors(self):
        assert scoring_vector(VETO, 3) == (0, 0, -1)
        assert scoring_vector(HALF, 5) == (1, 1, 0, 0, 0)
        assert scoring_vector(BORDA, 1) == (1,)
        assert scoring_vector(PLURALITY, 4) == (1, 0, 0, 0)
        assert scoring_vector(HALF, 1) == (0,)

    def test_custom_requires_vector(self):
        custom = ScoringSystem.custom(vectors={3: [2, 1, 0]})
        assert scoring_vector(custom, 3) == (2, 1, 0)
        with pytest.raises(ValueError):
            scoring_vector(custom, 4)

    def test_scores_on_worked_profile(self, p0):
        assert scores(p0, PLURALITY) == (3, 2, 2)
        assert scores(p0, BORDA) == (13, 16, 13)
        assert scores(p0, VETO) == (-4, 0, -3)

    def test_winner_loser_sets(self, p0):
        assert winners(p0, PLURALITY) == {0}
        assert losers(p0, PLURALITY) == {1, 2}

    def test_reversed_builtins(self):
        assert reversed_system(PLURALITY).vector(4) == VETO.vector(4)
        assert reversed_system(VETO).vector(4) == PLURALITY.vector(4)
        assert reversed_system(BORDA).vector(3) == (-1, -2, -3)

    def test_reversed_is_involution(self):
        for system in (PLURALITY, VETO, BORDA, HALF):
            twice = reversed_system(reversed_system(system))
            for m in range(1, 6):
                assert twice.vector(m) == system.vector(m)

    def test_affine_equivalent_systems_share_winners(self, p0):
        # Borda* is Borda shifted by -(m+1): same argmax/argmin sets.
        shifted = ScoringSystem.custom(generator=lambda m: [-(m - i) for i in range(m)])
        assert winners(p0, BORDA) == losers(p0, shifted) == {1}

    def test_reversal_negates_scores(self, p0):
        import random

        rng = random.Random(3)
        profiles = [p0]
        for _ in range(20):
            m = rng.randint(2, 6)
            groups = [
                (rng.randint(1, 4), Ranking(rng.sample(range(m), m)))
                for _ in range(rng.randint(1, 5))
            ]
            profiles.append(Profile(m, groups))
        for profile in profiles:
            for system in (PLURALITY, VETO, BORDA, HALF):
                direct = scores(profile, system)
                mirrored = scores(profile.reverse(), reversed_system(system))
                assert all(a == -b for a, b in zip(direct, mirrored))


class TestProfileFormat:
    def test_parse_worked_example(self, p0):
        text = "3 3\n3: 0 1 2\n2: 1 2 0\n2: 2 1 0"
        assert parse_profile(text) == p0

    def test_single_candidate(self):
        profile = parse_profile("1 1\n1: 0")
        assert profile.m == 1 and profile.n == 1

    def test_not_a_permutation(self):
        with pytest.raises(ProfileParseError) as err:
            parse_profile("3 1\n2: 0 0 1")
        assert err.value.line == 2

    def test_bad_count(self):
        with pytest.raises(ProfileParseError):
            parse_profile("3 1\n0: 0 1 2")

    def test_index_out_of_range(self):
        with pytest.raises(ProfileParseError):
            parse_profile("3 1\n1: 0 1 3")

    def test_round_trip_is_canonical(self, p0):
        doubled = Profile(3, list(p0.groups) + [(1, Ranking([0, 1, 2]))])
        text = serialize_profile(doubled)
        again = parse_profile(text)
        assert again == doubled.canonicalize()
        assert serialize_profile(again) == text

    def test_names_round_trip(self):
        text = "# hello\n2 1\nnames: left right\n3: 1 0"
        profile = parse_profile(text)
        assert profile.names == ("left", "right")
        assert parse_profile(serialize_profile(profile)).names == ("left", "right")

    def test_comments_and_blank_lines(self):
        profile = parse_profile("# c\n\n2 2\n1: 0 1\n\n1: 1 0\n")
        assert profile.n == 2
