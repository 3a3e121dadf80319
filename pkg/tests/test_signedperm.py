import math

import pytest
from hypothesis import given, strategies as st

from nilhecke.signedperm import (SignedPermutation, all_signed_permutations, apply_right, avoiding_formula,
                                 bn_basis_crosscheck, count_avoiding, count_avoiding_bruteforce, descents,
                                 from_word, has_bad_pair, length, negated_reversal, reduced_word)


def signed_perms(max_n=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        perm = draw(st.permutations(range(1, n + 1)))
        signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
        return SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))
    return build()


def inversion_length(w):
    """Type B length from the window: inversions, negative-sum pairs and negative entries."""
    a = w.window
    n = len(a)
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if a[i] > a[j])
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if a[i] + a[j] < 0)
    neg = sum(1 for x in a if x < 0)
    return inv + nsp + neg


class TestBasics:
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            SignedPermutation((1, 1))

    def test_apply_right(self):
        w = SignedPermutation((2, -1, 3))
        assert apply_right(w, 0).window == (-2, -1, 3)
        assert apply_right(w, 2).window == (2, 3, -1)
        with pytest.raises(IndexError):
            apply_right(w, 3)

    def test_negated_reversal(self):
        w = negated_reversal(4)
        assert w.window == (-4, -3, -2, -1)
        assert length(w) == 10 and not has_bad_pair(w)
        assert length(SignedPermutation((-1, -2, -3, -4))) == 16

    @pytest.mark.parametrize("window,bad", [((-1, -2), True), ((-2, -1), False), ((3, -1, 2), False)])
    def test_bad_pair(self, window, bad):
        assert has_bad_pair(SignedPermutation(window)) is bad


class TestCounts:
    @pytest.mark.parametrize("n,count", [(1, 2), (2, 7), (3, 34), (4, 209), (5, 1546)])
    def test_count(self, n, count):
        assert count_avoiding(n) == count == avoiding_formula(n)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_bruteforce(self, n):
        assert count_avoiding_bruteforce(n) == count_avoiding(n)

    def test_limit(self):
        with pytest.raises(OverflowError):
            count_avoiding(12, max_rank=9)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_crosscheck(self, n):
        assert bn_basis_crosscheck(n)

    def test_total(self):
        assert sum(1 for _ in all_signed_permutations(4)) == 2 ** 4 * math.factorial(4)


@given(signed_perms())
def test_length_matches_inversion_statistic(w):
    assert length(w) == inversion_length(w)


@given(signed_perms())
def test_greedy_word_choice_irrelevant(w):
    assert from_word(w.n, reduced_word(w, min)) == w
    assert from_word(w.n, reduced_word(w, max)) == w
    assert len(reduced_word(w, min)) == len(reduced_word(w, max))


@given(signed_perms(), st.data())
def test_descent_lowers_length(w, data):
    i = data.draw(st.integers(0, w.n - 1))
    step = -1 if i in descents(w) else 1
    assert inversion_length(apply_right(w, i)) == inversion_length(w) + step
