import random
from itertools import combinations, permutations, product

import pytest

from conftest import random_sequence
from seqext.checks import (
    alternation_length,
    avoids_all_formations,
    brute_formation_length,
    contains_pattern,
    formation_length,
    is_ds,
    is_sparse,
    max_alternation,
    max_formation_length,
)
from seqext.errors import CapExceededError
from seqext.sequences import PatternSequence, Sequence, parse_pattern, parse_sequence

T232 = parse_sequence("1 2 1 2 1 3 1 3 2 3 2 3")  # the r=2, x=3, t=2 base witness


def seq(text):
    return parse_sequence(text)


class TestSparse:
    def test_examples(self):
        assert is_sparse(seq("1 2 1 2"), 2)
        assert not is_sparse(seq("1 1"), 2)
        assert is_sparse(T232, 2)

    def test_monotone_in_j(self):
        rng = random.Random(11)
        for _ in range(100):
            s = random_sequence(rng)
            for j in range(5, 1, -1):
                if is_sparse(s, j):
                    assert is_sparse(s, j - 1)

    def test_j_validation(self):
        with pytest.raises(ValueError):
            is_sparse(seq("1"), 0)


class TestAlternation:
    def test_examples(self):
        assert alternation_length(seq("1 2 1 2 1"), 1, 2) == 5
        assert alternation_length(seq("1 1 2 2"), 1, 2) == 2
        assert alternation_length(seq("1 2 3 4 3 2 1 2 3 4"), 1, 4) == 4

    def test_absent_letters(self):
        assert alternation_length(seq("3 3"), 1, 2) == 0
        assert alternation_length(seq("1 3"), 1, 2) == 1

    def test_equal_letters_rejected(self):
        with pytest.raises(ValueError):
            alternation_length(seq("1 2"), 1, 1)

    def test_max_alternation_examples(self):
        assert max_alternation(seq("1 2 1 2")) == 4
        assert max_alternation(seq("1")) == 0
        assert max_alternation(seq("1 2 1 3 1")) == 3

    def test_max_matches_pairwise_scan(self):
        rng = random.Random(13)
        for _ in range(200):
            s = random_sequence(rng)
            letters = sorted(s.alphabet)
            expect = 0
            for a, b in combinations(letters, 2):
                expect = max(expect, alternation_length(s, a, b))
            assert max_alternation(s) == expect


class TestDs:
    def test_examples(self):
        assert is_ds(seq("1 2 1 3 1"), 2)
        assert not is_ds(seq("1 1"), 3)
        assert not is_ds(seq("1 2 1 2 1"), 2)

    def test_pattern_characterization(self):
        # DS of order s <=> no adjacent equals and no alternation pattern of length s+2
        rng = random.Random(17)
        for _ in range(150):
            s = random_sequence(rng, max_alpha=4, max_len=12)
            toks = s.tokens
            adjacent_ok = all(toks[i] != toks[i + 1] for i in range(len(toks) - 1))
            for order in (1, 2, 3):
                alt = PatternSequence(tuple((i % 2) + 1 for i in range(order + 2)))
                expect = adjacent_ok and not contains_pattern(s, alt)
                assert is_ds(s, order) == expect


class TestFormationLength:
    def test_examples(self):
        assert formation_length(seq("1 2 1 2 1 2"), (1, 2)) == 3
        assert formation_length(seq("1 2 3"), (1, 2)) == 1
        assert formation_length(seq("1 2 1 2 1 1 2 2"), (1, 2)) == 3

    def test_absent_letter_gives_zero(self):
        assert formation_length(seq("1 2 1 2"), (1, 3)) == 0

    def test_single_letter_counts_occurrences(self):
        assert formation_length(seq("1 2 1 1"), (1,)) == 3

    def test_distinctness_validation(self):
        with pytest.raises(ValueError):
            formation_length(seq("1 2"), (1, 1))
        with pytest.raises(ValueError):
            formation_length(seq("1 2"), ())

    def test_brute_examples(self):
        assert brute_formation_length(seq("1 2 1 2 1 2"), (1, 2)) == 3
        assert brute_formation_length(seq("1 2 2 1"), (1, 2)) == 2

    def test_brute_cap(self):
        long = Sequence(tuple([1, 2] * 13))
        with pytest.raises(CapExceededError):
            brute_formation_length(long, (1, 2), cap=24)

    def test_greedy_equals_brute_on_random(self):
        rng = random.Random(500)
        for _ in range(500):
            s = random_sequence(rng)
            letters = sorted(s.alphabet)
            if not letters:
                continue
            r = rng.randint(1, len(letters))
            query = tuple(rng.sample(letters, r))
            assert formation_length(s, query) == brute_formation_length(s, query)

    def test_monotone_under_append(self):
        rng = random.Random(23)
        for _ in range(100):
            s = random_sequence(rng, max_alpha=4, max_len=12)
            query = (1, 2)
            prev = -1
            for L in range(len(s) + 1):
                cur = formation_length(Sequence(s.tokens[:L]), query)
                assert cur >= prev
                prev = cur


class TestMaxFormation:
    def test_base_witness(self):
        assert max_formation_length(T232, 2) == 3
        assert max_formation_length(T232, 2) < 2 * 2 + 2 + 1

    def test_small_alphabets(self):
        assert max_formation_length(seq("1 2 3"), 3) == 1
        assert max_formation_length(seq("1 2"), 3) == 0

    def test_subset_cap(self):
        s = Sequence(tuple(range(1, 30)))
        with pytest.raises(CapExceededError):
            max_formation_length(s, 3, subset_cap=10)

    def test_avoids_all_formations(self):
        assert avoids_all_formations(T232, 2, 7)
        assert not avoids_all_formations(T232, 2, 3)

    def test_prune_matches_full_scan(self):
        rng = random.Random(29)
        for _ in range(100):
            s = random_sequence(rng, max_alpha=5, max_len=14)
            if len(s.alphabet) < 2:
                continue
            r = rng.randint(1, min(3, len(s.alphabet)))
            full = max(
                formation_length(s, combo)
                for combo in combinations(sorted(s.alphabet), r)
            )
            assert max_formation_length(s, r) == full


class TestContainsPattern:
    def test_examples(self):
        assert contains_pattern(seq("1 2 1 2"), parse_pattern("a b a b"))
        assert not contains_pattern(seq("1 2 3"), parse_pattern("a a"))

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            contains_pattern(seq("1"), Sequence())

    def test_every_24_formation_contains_abab(self):
        abab = parse_pattern("a b a b")
        for blocks in product(list(permutations((1, 2))), repeat=4):
            formation = Sequence(tuple(tok for block in blocks for tok in block))
            assert contains_pattern(formation, abab)

    def test_alternation_pattern_iff_max_alternation(self):
        rng = random.Random(31)
        for _ in range(150):
            s = random_sequence(rng, max_alpha=4, max_len=12)
            for L in (2, 3, 4, 5):
                alt = PatternSequence(tuple((i % 2) + 1 for i in range(L)))
                assert contains_pattern(s, alt) == (max_alternation(s) >= L)


def _formations(r, s):
    """All (r, s)-formations over letters 1..r."""
    for blocks in product(list(permutations(range(1, r + 1))), repeat=s):
        yield Sequence(tuple(tok for block in blocks for tok in block))


def _canonical_formations(r, s):
    """Formations with the first permutation fixed to identity; containment of a
    normalized pattern is invariant under relabeling, so this loses nothing."""
    ident = (tuple(range(1, r + 1)),)
    for rest in product(list(permutations(range(1, r + 1))), repeat=s - 1):
        yield Sequence(tuple(tok for block in ident + rest for tok in block))


class TestFormationContainsFormation:
    """Every (r, r*s)-formation contains every (r, s)-formation pattern."""

    @pytest.mark.parametrize("r,s", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
    def test_exhaustive(self, r, s):
        patterns = [PatternSequence.from_sequence(u) for u in _canonical_formations(r, s)]
        for big in _canonical_formations(r, r * s):
            for u in patterns:
                assert contains_pattern(big, u)

    def test_sampled_r3_s3(self):
        rng = random.Random(37)
        patterns = [
            PatternSequence.from_sequence(u) for u in _canonical_formations(3, 3)
        ]
        perms = list(permutations((1, 2, 3)))
        for _ in range(200):
            blocks = [rng.choice(perms) for _ in range(9)]
            big = Sequence(tuple(tok for block in blocks for tok in block))
            for u in patterns:
                assert contains_pattern(big, u)
