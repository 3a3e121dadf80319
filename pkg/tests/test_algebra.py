from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from nilhecke.algebra import (ZERO, AlgElement, build_table, frobenius_decision, frobenius_predicate,
                              frobenius_randomized, kernel_dimension, leftright_symmetry_check, mult,
                              nilpotency_index, primitive_spaces, table_for, word_element)
from nilhecke.coxsys import CoxeterMatrix, Cutoff, NilHeckeParams, compile_presentation, params


def tab(name, d=None, k=float("inf")):
    return table_for(params(name, d=d, k=k))


class TestTable:
    def test_a1_cube(self):
        t = tab("A1", d=(3,))
        assert t.words == [(), (1,), (1, 1)]
        assert [t.rmul[c][0] for c in range(3)] == [1, 2, ZERO]

    def test_a2_is_nil_coxeter_monoid(self):
        t = tab("A2")
        assert t.dim == 6
        assert t.words[t.class_of((2, 1, 2))] == (1, 2, 1)
        assert t.class_of((1, 2, 1, 1)) == ZERO

    def test_i2_4_k4(self):
        t = tab("I2(4)", k=4)
        assert t.dim == 7
        assert t.class_of((1, 2, 1, 2)) == ZERO

    def test_left_table_consistent(self):
        t = tab("B3", k=4)
        for c, w in enumerate(t.words):
            for i in range(1, 4):
                assert t.lmul[c][i - 1] == t.class_of((i,) + w)


class TestMult:
    def test_example(self):
        t = tab("A2")
        assert mult(t, word_element(t, (1, 2)), word_element(t, (1,))) == word_element(t, (1, 2, 1))
        assert mult(t, word_element(t, (1, 2, 1)), word_element(t, (1,))) == AlgElement()

    def test_linear_combination(self):
        t = tab("A2")
        a = word_element(t, (1,)).add(word_element(t, (2,)).scale(2))
        got = mult(t, a, a)
        assert got == word_element(t, (1, 2)).scale(2).add(word_element(t, (2, 1)).scale(2))

    def test_product_row(self):
        t = tab("H3", k=4)
        for u in range(0, t.dim, 7):
            assert t.product_row(u) == [t.mono_mult(u, v) for v in range(t.dim)]


class TestNilpotency:
    @pytest.mark.parametrize("d", [2, 3, 6])
    def test_a1(self, d):
        assert nilpotency_index(tab("A1", d=(d,))) == d

    def test_a2(self):
        assert nilpotency_index(tab("A2")) == 4

    def test_i2_5_k2(self):
        assert nilpotency_index(tab("I2(5)", k=2)) == 5


class TestPrimitives:
    def test_a1_d4(self):
        t = tab("A1", d=(4,))
        rep = primitive_spaces(t)
        assert (rep.left_dim, rep.right_dim, rep.two_sided_dim) == (1, 1, 1)
        assert [t.words[c] for c in rep.primitive_monomials] == [(1, 1, 1)]

    def test_i2_4_right_primitive(self):
        t = tab("I2(4)", k=4)
        rep = primitive_spaces(t)
        words = {t.words[c] for c in rep.right_monomials}
        assert {(1, 2, 1), (2, 1, 2)} <= words

    def test_h3_k3(self):
        assert primitive_spaces(tab("H3", k=3)).two_sided_dim == 1

    def test_nil_coxeter_socle_is_longest_element(self):
        t = tab("B3")
        rep = primitive_spaces(t)
        assert rep.two_sided_dim == 1 and len(t.words[rep.primitive_monomials[0]]) == 9

    @pytest.mark.parametrize("case", [("A1", (3,), 3), ("F4", None, 4), ("A3", (3, 2, 2), 3), ("B3", None, 2),
                                      ("H3", None, 5)])
    def test_leftright_symmetry(self, case):
        name, d, k = case
        assert leftright_symmetry_check(tab(name, d=d, k=k))


class TestKernel:
    @given(st.integers(1, 6), st.lists(st.dictionaries(st.integers(0, 5), st.integers(-3, 3), max_size=4),
                                       max_size=6))
    def test_matches_sympy_rank(self, n, rows):
        rows = [{c: x for c, x in r.items() if c < n and x} for r in rows]
        M = sympy.Matrix([[r.get(c, 0) for c in range(n)] for r in rows]) if rows else sympy.zeros(0, n)
        assert kernel_dimension(n, rows) == n - M.rank()


class TestFrobenius:
    def test_a2_untruncated(self):
        assert frobenius_predicate(params("A2"))
        assert frobenius_randomized(tab("A2"))

    def test_a2_k3(self):
        assert not frobenius_predicate(params("A2", k=3))
        assert not frobenius_randomized(tab("A2", k=3), trials=5)

    def test_a1_d7(self):
        assert frobenius_predicate(params("A1", d=(7,), k=3))
        assert frobenius_randomized(tab("A1", d=(7,)))

    def test_dimension_one_algebra(self):
        from nilhecke.coxsys import GeneralPresentation
        t = build_table(GeneralPresentation(1, (1,), (), ((1,),)))
        assert t.dim == 1
        assert frobenius_randomized(t)

    def test_small_prime_rejected(self):
        with pytest.raises(ValueError):
            frobenius_randomized(tab("A2"), prime=31)

    def test_product_of_truncated_polynomials(self):
        p = NilHeckeParams(CoxeterMatrix.from_edges(2, {}), (3, 3), Cutoff(3))
        assert frobenius_decision(p)

    def test_killed_commutation_breaks_frobenius(self):
        p = NilHeckeParams(CoxeterMatrix.from_edges(2, {}), (2, 2), Cutoff(2))
        assert frobenius_decision(p) is False

    @pytest.mark.parametrize("name,k", [("B3", 4), ("H3", 6), ("D4", 3), ("I2(5)", 2), ("F4", 5)])
    def test_agreement(self, name, k):
        p = params(name, k=k)
        assert frobenius_predicate(p) == frobenius_randomized(table_for(p))


def _elements(t, draw):
    coeffs = draw(st.lists(st.tuples(st.integers(0, t.dim - 1), st.integers(-4, 4)), max_size=6))
    out = AlgElement()
    for c, x in coeffs:
        out = out.add(AlgElement.monomial(c, x))
    return out


@pytest.mark.parametrize("case", [("A3", None, 3), ("B3", None, 4), ("A2", (3, 2), 3), ("H3", None, 4)])
@given(data=st.data())
def test_associative(case, data):
    name, d, k = case
    t = tab(name, d=d, k=k)
    a, b, c = (_elements(t, data.draw) for _ in range(3))
    assert mult(t, mult(t, a, b), c) == mult(t, a, mult(t, b, c))


@pytest.mark.parametrize("case", [("A3", None, 3), ("B3", None, 4), ("A3", (3, 2, 2), 3)])
@given(data=st.data())
def test_grade_additive(case, data):
    name, d, k = case
    t = tab(name, d=d, k=k)
    u = data.draw(st.integers(0, t.dim - 1))
    v = data.draw(st.integers(0, t.dim - 1))
    c = t.mono_mult(u, v)
    if c != ZERO:
        assert len(t.words[c]) == len(t.words[u]) + len(t.words[v])


def test_unit():
    t = tab("D4", k=3)
    one = AlgElement.monomial(0)
    for c in range(t.dim):
        x = AlgElement.monomial(c, Fraction(3, 2))
        assert mult(t, one, x) == x == mult(t, x, one)
