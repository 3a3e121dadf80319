import itertools

import pytest
from hypothesis import given, strategies as st

from nilhecke.coxsys import CoxeterMatrix, Cutoff, NilHeckeParams, compile_presentation, params
from nilhecke.wordengine import (Budget, BudgetExceeded, canonical, class_closure, dimension, enumerate_basis,
                                 enumerate_basis_naive, forbidden_substrings)


def pres(name, d=None, k=float("inf")):
    return compile_presentation(params(name, d=d, k=k))


def brute_force_classes(p, max_len):
    """Nonzero classes of all words up to max_len, by union over explicit closures."""
    killed = set(p.killed_words)

    def dead(w):
        return any(w[s:s + len(x)] == x for x in killed for s in range(len(w) - len(x) + 1))

    classes = set()
    for L in range(max_len + 1):
        for w in itertools.product(range(1, p.generator_count + 1), repeat=L):
            seen, todo = {w}, [w]
            while todo:
                u = todo.pop()
                for lhs, rhs in p.kept_relations:
                    for a, b in ((lhs, rhs), (rhs, lhs)):
                        for s in range(len(u) - len(a) + 1):
                            if u[s:s + len(a)] == a:
                                v = u[:s] + b + u[s + len(a):]
                                if v not in seen:
                                    seen.add(v)
                                    todo.append(v)
            if not any(dead(u) for u in seen):
                classes.add(frozenset(seen))
    return classes


class TestForbidden:
    def test_a1_cube(self):
        assert forbidden_substrings(pres("A1", d=(3,))) == [(1, 1, 1)]

    def test_i2_4_k4(self):
        assert forbidden_substrings(pres("I2(4)", k=4)) == [(1, 1), (2, 2), (1, 2, 1, 2), (2, 1, 2, 1)]

    def test_a2_k2(self):
        assert forbidden_substrings(pres("A2", k=2)) == [(1, 1), (2, 2), (1, 2, 1), (2, 1, 2)]


class TestClosure:
    def test_braid_move(self):
        c = class_closure((1, 2, 1), pres("A2"))
        assert c.members == {(1, 2, 1), (2, 1, 2)} and c.canonical == (1, 2, 1)

    def test_commutation(self):
        c = class_closure((1, 3), pres("A3"))
        assert c.members == {(1, 3), (3, 1)} and c.canonical == (1, 3)

    def test_rejected_when_forbidden(self):
        assert class_closure((1, 2, 1), pres("A2", k=3)) is None

    def test_rejected_through_a_move(self):
        # 1 2 1 2 ~ 1 1 2 1 in A2, which contains 11
        assert class_closure((1, 2, 1, 2), pres("A2")) is None

    def test_canonical(self):
        assert canonical((2, 1, 2), pres("A2")) == (1, 2, 1)
        assert canonical((1, 1), pres("A3")) is None
        assert canonical((), pres("A3")) == ()

    def test_class_size_budget(self):
        with pytest.raises(BudgetExceeded):
            class_closure((1, 2, 3, 1, 2, 1), pres("A3"), Budget(max_class_size=3))


class TestEnumeration:
    def test_a2(self):
        e = enumerate_basis(pres("A2"))
        assert e.words == [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)]

    def test_i2_5_k2(self):
        e = enumerate_basis(pres("I2(5)", k=2))
        assert sorted(e.words) == sorted([(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1), (2, 1, 2),
                                          (1, 2, 1, 2), (2, 1, 2, 1)])

    def test_f4_k4(self):
        assert dimension(pres("F4", k=4)) == 304

    @pytest.mark.parametrize("k", [2, 3, 7])
    def test_a1_power(self, k):
        assert dimension(pres("A1", d=(5,), k=k)) == 5

    def test_h3_k4(self):
        assert dimension(pres("H3", k=4)) == 76

    def test_a3_322_k3(self):
        assert dimension(pres("A3", d=(3, 2, 2), k=3)) == 27

    def test_a3_322_k6(self):
        assert dimension(pres("A3", d=(3, 2, 2), k=6)) == 42

    def test_h4_k4(self):
        assert dimension(pres("H4", k=4)) == 1460

    def test_infinite_reports_budget(self):
        p = compile_presentation(NilHeckeParams(CoxeterMatrix.from_rows([[1, "inf"], ["inf", 1]]), (2, 2)))
        e = enumerate_basis(p, Budget(max_word_length=12))
        assert not e.complete and e.at_length == 13
        assert e.frontier_sizes() == [1, 2] + [2] * 11
        with pytest.raises(BudgetExceeded):
            dimension(p, Budget(max_word_length=12))

    def test_class_count_budget(self):
        e = enumerate_basis(pres("A4"), Budget(max_class_count=20))
        assert not e.complete

    def test_class_of_folds_right_multiplication(self):
        e = enumerate_basis(pres("A3"))
        assert e.canonical_of((3, 2, 1, 2)) == e.canonical_of((3, 1, 2, 1))
        assert e.canonical_of((2, 2)) is None

    def test_json_is_stable(self):
        a = enumerate_basis(pres("B3", k=4)).dumps()
        b = enumerate_basis(pres("B3", k=4)).dumps()
        assert a == b and '"dimension": 34' in a


labels = st.sampled_from([2, 3, 4, 5, 6, float("inf")])


@st.composite
def small_systems(draw):
    n = draw(st.integers(1, 3))
    rows = [[1] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = draw(labels)
    d = tuple(draw(st.integers(2, 3)) for _ in range(n))
    k = draw(st.sampled_from([2, 3, 4, 5, float("inf")]))
    return NilHeckeParams(CoxeterMatrix.from_rows(rows), d, Cutoff(k))


@given(small_systems())
def test_fast_enumerator_matches_naive(p):
    pr = compile_presentation(p)
    budget = Budget(max_word_length=9, max_class_count=3000)
    fast = enumerate_basis(pr, budget)
    try:
        naive = enumerate_basis_naive(pr, budget)
    except BudgetExceeded as exc:
        assert not fast.complete
        naive = exc.partial
    fast_levels = fast.classes_by_length
    for ell, words in naive.items():
        if ell in fast_levels and (fast.complete or ell < fast.max_length):
            assert fast_levels[ell] == words


@given(small_systems())
def test_enumerator_matches_brute_force_on_short_words(p):
    pr = compile_presentation(p)
    L = 5 if p.rank <= 2 else 4
    want = {}
    for cls in brute_force_classes(pr, L):
        want.setdefault(len(next(iter(cls))), set()).add(min(cls))
    e = enumerate_basis(pr, Budget(max_word_length=L + 1, max_class_count=10**5))
    got = e.classes_by_length
    for ell in range(L + 1):
        assert set(got.get(ell, [])) == want.get(ell, set())


@given(small_systems(), st.lists(st.integers(1, 3), max_size=7))
def test_canonical_is_class_invariant(p, word):
    pr = compile_presentation(p)
    word = tuple(a for a in word if a <= p.rank)
    c = class_closure(word, pr)
    if c is not None:
        for member in c.members:
            assert canonical(member, pr) == c.canonical
