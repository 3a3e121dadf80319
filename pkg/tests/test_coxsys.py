import json

import pytest
from hypothesis import given, strategies as st

from nilhecke.coxsys import (INF, CoxeterMatrix, Cutoff, DisconnectedSystem, ExplicitJ0, NilHeckeParams,
                             ParameterError, StandardFamily, braid_relations, compile_presentation,
                             components, g29_presentation, params, recognize_type, standard_system,
                             system_from_dict, system_to_dict)


def fam(text):
    return StandardFamily.parse(text)


class TestMatrix:
    def test_rejects_non_symmetric(self):
        with pytest.raises(ParameterError):
            CoxeterMatrix(((1, 3), (2, 1)))

    def test_rejects_bad_diagonal(self):
        with pytest.raises(ParameterError):
            CoxeterMatrix(((2, 3), (3, 1)))

    def test_rejects_label_one_off_diagonal(self):
        with pytest.raises(ParameterError):
            CoxeterMatrix(((1, 1), (1, 1)))

    def test_infinity_spellings(self):
        m = CoxeterMatrix.from_rows([[1, "infinity"], ["inf", 1]])
        assert m.m(1, 2) == INF
        assert m.to_json() == [[1, "infinity"], ["infinity", 1]]

    def test_components(self):
        m = CoxeterMatrix.from_edges(4, {(1, 2): 3})
        assert components(m) == [[1, 2], [3], [4]]


class TestStandardSystem:
    def test_i2_5(self):
        assert standard_system(fam("I2(5)")).entries == ((1, 5), (5, 1))

    def test_a3_path(self):
        m = standard_system(fam("A3"))
        assert (m.m(1, 2), m.m(2, 3), m.m(1, 3)) == (3, 3, 2)

    def test_f4_double_edge_in_middle(self):
        m = standard_system(fam("F4"))
        assert (m.m(1, 2), m.m(2, 3), m.m(3, 4)) == (3, 4, 3)
        assert m.m(1, 3) == m.m(1, 4) == m.m(2, 4) == 2

    @pytest.mark.parametrize("bad", [("B", 1), ("D", 3), ("E", 5), ("F", 3), ("H", 2), ("Q", 3)])
    def test_out_of_range(self, bad):
        with pytest.raises(ParameterError):
            StandardFamily(*bad)


class TestBraidRelations:
    def test_a2(self):
        assert braid_relations(standard_system(fam("A2"))) == [((1, 2), (1, 2, 1), (2, 1, 2))]

    def test_i2_4(self):
        assert braid_relations(standard_system(fam("I2(4)"))) == [((1, 2), (1, 2, 1, 2), (2, 1, 2, 1))]

    def test_commutation_in_a3(self):
        rels = {pair: (l, r) for pair, l, r in braid_relations(standard_system(fam("A3")))}
        assert rels[(1, 3)] == ((1, 3), (3, 1))

    def test_infinite_label_has_no_relation(self):
        assert braid_relations(CoxeterMatrix.from_rows([[1, "inf"], ["inf", 1]])) == []


class TestCompile:
    def test_a2_untruncated(self):
        p = compile_presentation(params("A2"))
        assert p.kept_relations == (((1, 2, 1), (2, 1, 2)),)
        assert set(p.killed_words) == {(1, 1), (2, 2)}

    def test_a2_k2_kills_everything(self):
        p = compile_presentation(params("A2", k=2))
        assert p.kept_relations == ()
        assert set(p.killed_words) == {(1, 1), (2, 2), (1, 2, 1), (2, 1, 2)}

    def test_h3_k4(self):
        p = compile_presentation(params("H3", k=4))
        kept = set(p.kept_relations)
        assert ((2, 3, 2), (3, 2, 3)) in kept
        assert ((1, 3), (3, 1)) in kept
        assert {(1, 2, 1, 2, 1), (2, 1, 2, 1, 2)} <= set(p.killed_words)

    def test_explicit_j0_equals_cutoff(self):
        m = standard_system(fam("B3"))
        by_k = compile_presentation(NilHeckeParams(m, (2, 2, 2), Cutoff(4)))
        by_j0 = compile_presentation(NilHeckeParams(m, (2, 2, 2), ExplicitJ0(frozenset({(1, 3), (3, 2)}))))
        assert set(by_k.kept_relations) == set(by_j0.kept_relations)

    @pytest.mark.parametrize("d", [(1, 2), (2,), (2, 2, 2)])
    def test_bad_exponents(self, d):
        with pytest.raises(ParameterError):
            NilHeckeParams(standard_system(fam("A2")), d)

    @pytest.mark.parametrize("k", [0, -1, 2.5])
    def test_bad_cutoff(self, k):
        with pytest.raises(ParameterError):
            Cutoff(k)

    def test_j0_with_infinite_label_rejected(self):
        m = CoxeterMatrix.from_rows([[1, "inf"], ["inf", 1]])
        with pytest.raises(ParameterError):
            NilHeckeParams(m, (2, 2), ExplicitJ0(frozenset({(1, 2)})))

    @given(st.integers(2, 7), st.sampled_from([2, 3, 4, 5, 6, INF]))
    def test_kept_relations_shorter_than_cutoff(self, m, k):
        p = compile_presentation(NilHeckeParams(CoxeterMatrix.from_edges(2, {(1, 2): m}) if m > 2
                                                else CoxeterMatrix.from_edges(2, {}), (2, 2), Cutoff(k)))
        assert all(len(lhs) < k for lhs, _ in p.kept_relations)
        assert all(len(w) >= k or len(w) == 2 and w[0] == w[1] for w in p.killed_words)


class TestRecognize:
    def test_i2_5(self):
        f, mapping = recognize_type(CoxeterMatrix(((1, 5), (5, 1))))
        assert str(f) == "I2(5)" and mapping == {1: 1, 2: 2}

    def test_reversed_a4(self):
        m = standard_system(fam("A4")).relabel({1: 4, 2: 3, 3: 2, 4: 1})
        f, mapping = recognize_type(m)
        assert str(f) == "A4"
        assert m.relabel(mapping) == standard_system(f)

    def test_four_cycle_unrecognized(self):
        m = CoxeterMatrix.from_edges(4, {(1, 2): 3, (2, 3): 3, (3, 4): 3, (1, 4): 3})
        assert recognize_type(m) is None

    def test_disconnected_raises(self):
        with pytest.raises(DisconnectedSystem):
            recognize_type(CoxeterMatrix.from_edges(3, {(1, 2): 3}))

    @pytest.mark.parametrize("name", ["A1", "A5", "B4", "D5", "E6", "E7", "E8", "F4", "H3", "H4", "I2(7)"])
    @given(data=st.data())
    def test_recognizes_relabeled_standard(self, name, data):
        std = standard_system(fam(name))
        perm = data.draw(st.permutations(range(1, std.rank + 1)))
        m = std.relabel({i + 1: perm[i] for i in range(std.rank)})
        f, mapping = recognize_type(m)
        assert f == fam(name)
        assert m.relabel(mapping) == std


class TestG29:
    def test_k3(self):
        p = g29_presentation((2, 2, 2, 2), 3)
        assert set(p.kept_relations) == {((1, 4), (4, 1)), ((1, 3), (3, 1))}
        killed = [w for w in p.killed_words if len(w) > 2]
        assert sorted(len(w) for w in killed) == [3] * 6 + [4] * 2 + [6] * 2

    def test_k5(self):
        p = g29_presentation((2, 2, 2, 2), 5)
        assert sorted(len(l) for l, _ in p.kept_relations) == [2, 2, 3, 3, 3, 4]
        assert max(len(w) for w in p.killed_words) == 6

    def test_k7(self):
        p = g29_presentation((2, 2, 2, 2), 7)
        assert len(p.kept_relations) == 7
        assert set(p.killed_words) == {(i, i) for i in range(1, 5)}

    def test_rejects_small_cutoff(self):
        with pytest.raises(ParameterError):
            g29_presentation((2, 2, 2, 2), 2)


class TestSystemFiles:
    def test_roundtrip(self):
        p = params("B3", d=(3, 2, 2), k=4)
        again = system_from_dict(json.loads(json.dumps(system_to_dict(p))))
        assert again == p

    def test_standard_form(self):
        p = system_from_dict({"coxeter": {"standard": {"family": "F", "rank": 4}}, "truncation": {"k": 4}})
        assert p == params("F4", k=4)

    def test_missing_coxeter(self):
        with pytest.raises(ParameterError):
            system_from_dict({"d": [2]})
