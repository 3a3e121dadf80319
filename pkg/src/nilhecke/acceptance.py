"""Acceptance criteria 1-12 as runnable checks.

Each criterion returns a :class:`CriterionResult` made of named sub-checks.
The same runners back ``tests/test_acceptance.py`` and ``nilhecke regress``.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

from . import algebra, classifier, diagmod, groupmodel, signedperm, wordengine
from .coxsys import (INF, CoxeterMatrix, Cutoff, NilHeckeParams, StandardFamily, compile_presentation,
                     kept_pairs, params, standard_system)
from .wordengine import Budget, BudgetExceeded


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)
    elapsed: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def failed_checks(self) -> list:
        return [c for c in self.checks if not c.passed]

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        n_ok = sum(c.passed for c in self.checks)
        line = f"[{status}] criterion {self.number:2d}: {self.title} ({n_ok}/{len(self.checks)} checks, {self.elapsed:.1f}s)"
        bad = self.failed_checks()
        if bad:
            line += " | failing: " + "; ".join(f"{c.name} ({c.detail})" if c.detail else c.name for c in bad[:6])
            if len(bad) > 6:
                line += f"; ... {len(bad) - 6} more"
        return line

    def to_json(self) -> dict:
        return {
            "number": self.number,
            "title": self.title,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------- helpers

def system(n: int, labels: dict, d=None, k=INF) -> NilHeckeParams:
    matrix = CoxeterMatrix.from_edges(n, labels)
    return NilHeckeParams(matrix, tuple(d) if d is not None else (2,) * n, Cutoff(k))


def path_system(n: int, d=None, k=INF) -> NilHeckeParams:
    return system(n, {(a, a + 1): 3 for a in range(1, n)}, d, k)


def a_series(n: int, dd: int, k) -> NilHeckeParams:
    return params(f"A{n}", d=(dd,) + (2,) * (n - 1), k=k)


def dihedral(m: int, k, d=(2, 2)) -> NilHeckeParams:
    return system(2, {(1, 2): m}, d, k)


def describe(p) -> str:
    if not isinstance(p, NilHeckeParams):
        return repr(p)
    k = p.truncation.k if isinstance(p.truncation, Cutoff) else "J0"
    labels = ",".join(f"{i}{j}:{p.matrix.m(i, j)}" for i, j in p.matrix.pairs() if p.matrix.m(i, j) != 2)
    return f"rank{p.rank}[{labels}] d={''.join(map(str, p.d))} k={k}"


def words_dim(p, budget: Budget = wordengine.DEFAULT_BUDGET) -> int:
    return wordengine.dimension(compile_presentation(p), budget)


def group_dim(p: NilHeckeParams, budget: Budget = wordengine.DEFAULT_BUDGET) -> int:
    res = groupmodel.wj0_basis(p.matrix, kept_pairs(p.matrix, p.truncation), budget)
    if not res.complete:
        raise BudgetExceeded("group backend hit the budget", at_length=res.at_length)
    return res.count


@lru_cache(maxsize=None)
def _table(p) -> algebra.BasisTable:
    return algebra.table_for(p)


def table(p) -> algebra.BasisTable:
    return _table(p)


def _timed(fn: Callable):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def _eq_check(name, got, want) -> Check:
    return Check(name, got == want, "" if got == want else f"got {got}, expected {want}")


# ---------------------------------------------------------------- systems per criterion

def criterion1_systems():
    return [("F4", 4, 304, 30.0), ("H3", 4, 76, 10.0), ("H3", 5, 76, 10.0),
            ("H4", 4, 1460, 300.0), ("H4", 5, 1460, 300.0)]


def criterion2_systems():
    return [params(f"B{n}", k=4) for n in range(2, 6)]


def criterion3_systems():
    return [a_series(n, dd, 3) for n in range(1, 7) for dd in range(2, 5)]


def criterion4_systems():
    return [a_series(n, dd, k) for n in range(1, 6) for dd in range(2, 5) for k in (4, 5, 6, INF)]


def criterion5_systems():
    return [dihedral(m, k) for m in range(2, 13) for k in (2, 3, 4, 5, 6, 7, 8, INF)]


def criterion6_systems():
    out = []
    for n in range(1, 6):
        pendants = sorted({1, n})
        for i0 in pendants:
            for dd in (2, 3, 4):
                d = [2] * n
                d[i0 - 1] = dd
                out.append((path_system(n, d, 2), i0))
    return out


def finite_systems_1_to_6() -> list:
    out = [params(name, k=k) for name, k, _, _ in criterion1_systems()]
    out += criterion2_systems() + criterion3_systems() + criterion4_systems()
    out += [p for p in criterion5_systems() if not (p.truncation.k == 2 and p.matrix.m(1, 2) == 2)]
    out += [p for p, _ in criterion6_systems()]
    seen, uniq = set(), []
    for p in out:
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    return uniq


def frobenius_sweep() -> list:
    """Finite systems used for the Frobenius and backend-agreement sweeps."""
    s = [
        params("A1"), params("A1", d=(3,)), params("A1", d=(5,), k=3), params("A1", d=(4,), k=2),
        params("A2"), params("A2", k=3), params("A2", k=2), params("A2", d=(3, 2), k=3),
        params("A2", d=(3, 2), k=2), params("A2", d=(3, 2), k=5),
        params("A3"), params("A3", k=3), params("A3", k=4), params("A3", d=(3, 2, 2), k=4),
        params("A4", k=3), params("A4"),
        params("B2"), params("B2", k=4), params("B2", k=3), params("B2", k=2),
        params("B3"), params("B3", k=4), params("B3", k=3), params("B3", k=2), params("B4", k=4),
        params("D4"), params("D4", k=3), params("D4", k=4), params("D5", k=3),
        params("E6", k=3), params("D5", k=4),
        params("F4"), params("F4", k=5), params("F4", k=4), params("F4", k=3),
        params("H3"), params("H3", k=5), params("H3", k=4), params("H3", k=3), params("H3", k=6),
        params("H4", k=4), params("H4", k=3),
        dihedral(5, 6), dihedral(5, 5), dihedral(6, 4), dihedral(7, INF), dihedral(8, 3), dihedral(4, 2),
        system(2, {}, (2, 2), INF), system(2, {}, (3, 3), 3), system(2, {}, (2, 3), INF),
        system(2, {}, (2, 2), 2), system(3, {(1, 2): 3}, (2, 2, 2), INF),
        system(3, {(1, 2): 4}, (2, 2, 2), 3),
    ]
    return s


# ---------------------------------------------------------------- criterion 1

def criterion_1() -> CriterionResult:
    res = CriterionResult(1, "exceptional constants F4/H3/H4 on both backends")
    for name, k, want, limit in criterion1_systems():
        p = params(name, k=k)
        wordengine.clear_cache()
        got_w, tw = _timed(lambda: words_dim(p))
        res.checks.append(_eq_check(f"{name} k={k} words", got_w, want))
        res.checks.append(Check(f"{name} k={k} words time", tw < limit, f"{tw:.2f}s (limit {limit:.0f}s)"))
        groupmodel.group_model.cache_clear()
        got_g, tg = _timed(lambda: group_dim(p))
        res.checks.append(_eq_check(f"{name} k={k} group", got_g, want))
        res.checks.append(Check(f"{name} k={k} group time", tg < limit, f"{tg:.2f}s (limit {limit:.0f}s)"))
    return res


# ---------------------------------------------------------------- criterion 2

def criterion_2() -> CriterionResult:
    res = CriterionResult(2, "type B series at k=4 vs sum C(n,j)^2 j! and bad-pair-free count")
    t0 = time.perf_counter()
    for p in criterion2_systems():
        n = p.rank
        formula = signedperm.avoiding_formula(n)
        res.checks.append(_eq_check(f"B{n} words", words_dim(p), formula))
        res.checks.append(_eq_check(f"B{n} group", group_dim(p), formula))
        res.checks.append(_eq_check(f"B{n} signed count", signedperm.count_avoiding(n), formula))
    res.checks.append(_eq_check("B5 value", signedperm.avoiding_formula(5), 1546))
    el = time.perf_counter() - t0
    res.checks.append(Check("total time", el < 60, f"{el:.1f}s (limit 60s)"))
    return res


# ---------------------------------------------------------------- criterion 3

def criterion_3() -> CriterionResult:
    res = CriterionResult(3, "A_n (d,2,...,2) k=3 vs Catalan-type closed forms")
    res.notes.append("the Catalan-sum expression undercounts for n >= 4, d >= 3; those sub-checks are expected "
                     "to fail, and (d-1)C_(n+1)-(d-2) is checked alongside")
    t0 = time.perf_counter()
    for p in criterion3_systems():
        n, dd = p.rank, p.d[0]
        got = words_dim(p)
        res.checks.append(_eq_check(f"A{n} d={dd} vs Catalan-sum formula", got, classifier.catalan_sum_rank(n, dd)))
        res.checks.append(_eq_check(f"A{n} d={dd} vs (d-1)C_(n+1)-(d-2)", got, classifier.one_big_end_rank(n, dd)))
        if dd == 2:
            res.checks.append(_eq_check(f"A{n} d=2 Catalan", got, classifier.catalan(n + 1)))
    res.checks.append(_eq_check("A6 d=2 value", words_dim(a_series(6, 2, 3)), 429))
    el = time.perf_counter() - t0
    res.checks.append(Check("total time", el < 60, f"{el:.1f}s (limit 60s)"))
    return res


# ---------------------------------------------------------------- criterion 4

def criterion_4() -> CriterionResult:
    res = CriterionResult(4, "A_n (d,2,...,2), k in {4,5,6,inf} vs n!(1+n(d-1))")
    t0 = time.perf_counter()
    for p in criterion4_systems():
        n, dd, k = p.rank, p.d[0], p.truncation.k
        res.checks.append(_eq_check(f"A{n} d={dd} k={k}", words_dim(p), classifier.nc_a(n, dd)))
    el = time.perf_counter() - t0
    res.checks.append(Check("total time", el < 120, f"{el:.1f}s (limit 120s)"))
    return res


# ---------------------------------------------------------------- criterion 5

def criterion_5() -> CriterionResult:
    res = CriterionResult(5, "dihedral piecewise table and the k=2 edge-removal formula")
    t0 = time.perf_counter()
    for p in criterion5_systems():
        m, k = p.matrix.m(1, 2), p.truncation.k
        got = words_dim(p)
        if k == 2:
            if m == 2:
                continue  # disconnected graph: outside the k<=2 classification
            want = classifier.classify(p, with_witness=False).dim
            res.checks.append(_eq_check(f"I2({m}) k=2 vs classifier", got, want))
            res.checks.append(_eq_check(f"I2({m}) k=2 vs 2m-1", got, 2 * m - 1))
        else:
            res.checks.append(_eq_check(f"I2({m}) k={k}", got, 2 * m if m < k else 2 * m - 1))
    res.checks.append(_eq_check("I2(4) k=2 value", words_dim(dihedral(4, 2)), 7))
    res.checks.append(_eq_check("I2(5) k=2 value", words_dim(dihedral(5, 2)), 9))
    el = time.perf_counter() - t0
    res.checks.append(Check("total time", el < 30, f"{el:.1f}s (limit 30s)"))
    return res


# ---------------------------------------------------------------- criterion 6

def path_word(s: int, t: int) -> tuple:
    step = 1 if t >= s else -1
    return tuple(range(s, t + step, step))


def k2_spanning_set(n: int, i0: int, d0: int) -> set:
    """{1} together with s_[s,t] and s_[s,i0] s_i0^(j-2) s_[i0,t] for 2 <= j <= d0-1, on a path."""
    out = {()}
    for s in range(1, n + 1):
        for t in range(1, n + 1):
            out.add(path_word(s, t))
            for j in range(2, d0):
                out.add(path_word(s, i0) + (i0,) * (j - 2) + path_word(i0, t))
    return out


def criterion_6() -> CriterionResult:
    res = CriterionResult(6, "k=2 simply laced paths: 1 + |I|^2 (d-1) and the spanning set")
    t0 = time.perf_counter()
    for p, i0 in criterion6_systems():
        n, d0 = p.rank, p.d[i0 - 1]
        enum = wordengine.enumerate_basis(compile_presentation(p))
        tag = f"A{n} i0={i0} d={d0}"
        res.checks.append(_eq_check(f"{tag} dim", enum.dimension, 1 + n * n * (d0 - 1)))
        basis = {tuple(w) for w in enum.words}
        span = k2_spanning_set(n, i0, d0)
        res.checks.append(Check(f"{tag} spanning set = basis", basis == span,
                                "" if basis == span else f"{len(basis ^ span)} words differ"))
    el = time.perf_counter() - t0
    res.checks.append(Check("total time", el < 30, f"{el:.1f}s (limit 30s)"))
    return res


# ---------------------------------------------------------------- criterion 7

def criterion_7() -> CriterionResult:
    res = CriterionResult(7, "nilpotency index = max length + 1 on every finite system of 1-6")
    for p in finite_systems_1_to_6():
        t = table(p)
        top = max(t.lengths())
        try:
            N = algebra.nilpotency_index(t)
            ok = N == top + 1
            detail = "" if ok else f"N={N}, top={top}"
        except AssertionError as exc:
            ok, detail = False, str(exc)
        # m^(N-1) != 0: a top-length canonical word is a nonzero product of N-1 generators
        witness = next(w for w in t.words if len(w) == top)
        ok = ok and t.class_of(witness) != algebra.ZERO
        res.checks.append(Check(describe(p), ok, detail))
    return res


# ---------------------------------------------------------------- criterion 8

def _alt(a: int, b: int, length: int) -> tuple:
    return tuple(a if t % 2 == 0 else b for t in range(length))


def _down(a: int, b: int) -> tuple:
    return tuple(range(a, b - 1, -1))


def _up(a: int, b: int) -> tuple:
    return tuple(range(a, b + 1))


def e_table_system(n: int) -> NilHeckeParams:
    """E_n with chain 1..n-1 and n attached to 3."""
    labels = {(a, a + 1): 3 for a in range(1, n - 1)}
    labels[(3, n)] = 3
    return system(n, labels, None, 3)


def k3_monomial_table() -> list:
    """(label, system, [monomials]) for the k=3 table, instantiated at small ranks."""
    out = []
    for n in (2, 3, 4, 5):
        out.append((f"A{n}", params(f"A{n}", k=3), [_up(1, n), _down(n, 1)]))
    for n in (3, 4):
        out.append((f"B{n}", params(f"B{n}", k=3),
                    [_down(n, 2) + (1,) + _up(2, n), _down(n - 1, 1) + (n,) + _up(2, n - 1)]))
    for n in (3, 4):  # D_{n+1}: chain 1..n, n+1 attached to n-1
        np_ = n + 1
        out.append((f"D{n + 1}", params(f"D{n + 1}", k=3),
                    [_up(1, n) + (np_,) + _down(n - 1, 1), _up(2, n) + (1, np_) + _down(n - 1, 2)]))
    out.append(("E6", e_table_system(6),
                [(5, 4, 3, 2, 6, 3, 1, 6, 2, 3, 4, 5), (1, 2, 3, 4, 6, 3, 5, 6, 4, 3, 2, 1)]))
    for n in (7, 8):
        out.append((f"E{n}", e_table_system(n),
                    [_down(n - 1, 2) + (n, 1, 3, n) + _up(2, n - 1),
                     _down(n - 2, 2) + (n, 1, n - 1, 3, n) + _up(2, n - 2)]))
    out.append(("F4", params("F4", k=3), [(4, 3, 2, 1, 3, 2, 3, 4), (1, 2, 3, 4, 2, 3, 2, 1)]))
    for n in (5,):
        out.append((f"F{n}", params(f"F{n}", k=3),
                    [_down(n, 1) + (3, 2) + _up(3, n), _down(n - 1, 1) + (n, 3, 2) + _up(3, n - 1)]))
    out.append(("H4", params("H4", k=3),
                [(4, 3, 2, 1, 2, 1, 3, 2, 1, 2, 4, 3), (4, 3, 2, 1, 2, 1, 3, 2, 1, 2, 3, 4)]))
    for n in (5,):
        out.append((f"H{n}", params(f"H{n}", k=3),
                    [_down(n, 1) + (2, 1, 3, 2, 1, 2) + _up(3, n),
                     _down(n - 1, 1) + (2, 1, n, 3, 2, 1, 2) + _up(3, n - 1)]))
    for m in (4, 5, 6, 7):
        out.append((f"I2({m})", dihedral(m, 3), [_alt(1, 2, m - 1), _alt(2, 1, m - 1)]))
    for n in (3, 4, 5):
        for dd in (3, 4):
            out.append((f"A{n} d={dd}", a_series(n, dd, 3),
                        [_down(n, 1) + _up(1, n), _down(n - 1, 1) + (n,) + _up(1, n - 1)]))
    for dd in (4, 5):
        out.append((f"A2 d={dd}", a_series(2, dd, 3), [(2, 1, 1, 2), (2, 1, 1, 1, 2)]))
    return out


def k4_monomial_table() -> list:
    out = [
        ("F4", params("F4", k=4), [(1, 2, 3, 4, 1, 2, 3, 1, 2, 1), (3, 4, 3, 2, 3, 1, 2, 3, 4, 3)]),
        ("H3", params("H3", k=4), [(3, 2, 1, 2, 1, 3, 2, 1, 2, 3), (1, 2, 1, 3, 2, 1, 3, 2, 1, 3, 2, 1)]),
        ("H4", params("H4", k=4),
         [(4, 3, 2, 1, 2, 1, 3, 2, 1, 4, 3, 2, 1, 3, 2, 1, 3, 2, 1, 4, 3, 2, 1, 2, 3, 4),
          (1, 2, 1, 3, 2, 1, 4, 3, 2, 1, 4, 3, 2, 1, 4, 3, 2, 1, 4, 3, 2, 1)]),
    ]
    for m in (4, 5, 6, 7):
        out.append((f"I2({m})", dihedral(m, 4), [_alt(1, 2, m - 1), _alt(2, 1, m - 1)]))
    for n in (2, 3, 4):
        wp = signedperm.negated_reversal(n)
        w = signedperm.SignedPermutation(tuple(range(n - 1, 0, -1)) + (-n,))
        words = [signedperm.to_repo_word(signedperm.reduced_word(x)) for x in (wp, w)]
        out.append((f"B{n} signed", params(f"B{n}", k=4), words))
    return out


def one_dim_socle_cases() -> list:
    return [
        ("A1 d=2", params("A1")), ("A1 d=3", params("A1", d=(3,))), ("A1 d=5 k=3", params("A1", d=(5,), k=3)),
        ("A1 d=4 k=2", params("A1", d=(4,), k=2)),
        ("B2 k=2", params("B2", k=2)), ("B3 k=2", params("B3", k=2)), ("B4 k=2", params("B4", k=2)),
        ("H3 k=3", params("H3", k=3)),
        ("A2 d=(3,2) k=3", params("A2", d=(3, 2), k=3)),
    ]


def large_socle_cases() -> list:
    return [
        ("A3 k=3", params("A3", k=3)), ("D4 k=3", params("D4", k=3)), ("F4 k=4", params("F4", k=4)),
        ("H3 k=4", params("H3", k=4)), ("I2(6) k=4", dihedral(6, 4)), ("A3 d=(3,2,2) k=3", a_series(3, 3, 3)),
        ("A2 k=2", params("A2", k=2)), ("B3 k=3", params("B3", k=3)),
    ]


def one_dim_right_socle_cases() -> list:
    return [
        ("A1 d=2", params("A1")), ("A1 d=4", params("A1", d=(4,))), ("A1 d=3 k=2", params("A1", d=(3,), k=2)),
        ("A3", params("A3")), ("A3 k=4", params("A3", k=4)), ("B3", params("B3")), ("B3 k=5", params("B3", k=5)),
        ("D4 k=4", params("D4", k=4)), ("F4 k=5", params("F4", k=5)), ("H3", params("H3")),
        ("I2(5) k=6", dihedral(5, 6)), ("I2(7)", dihedral(7, INF)),
    ]


def criterion_8() -> CriterionResult:
    res = CriterionResult(8, "primitive monomials of both tables and primitive-space dimensions")
    for tabname, entries in (("k=3", k3_monomial_table()), ("k=4", k4_monomial_table())):
        for label, p, monos in entries:
            t = table(p)
            for w in monos:
                ok = algebra.is_primitive_word(t, w)
                res.checks.append(Check(f"{tabname} {label} {''.join(map(str, w))} primitive", ok))
            if len(monos) == 2:
                distinct = t.class_of(monos[0]) != t.class_of(monos[1])
                res.checks.append(Check(f"{tabname} {label} monomials distinct", distinct))
    for label, p in one_dim_socle_cases():
        got = algebra.primitive_spaces(table(p)).two_sided_dim
        res.checks.append(_eq_check(f"two-sided dim 1: {label}", got, 1))
    for label, p in large_socle_cases():
        got = algebra.primitive_spaces(table(p)).two_sided_dim
        res.checks.append(Check(f"two-sided dim >= 2: {label}", got >= 2, f"got {got}"))
    for label, p in one_dim_right_socle_cases():
        got = algebra.primitive_spaces(table(p)).right_dim
        res.checks.append(_eq_check(f"right dim 1: {label}", got, 1))
    res.notes.append("B_n at k=2 carries two primitive monomials, the alternating words of length 3 on the "
                     "multiple edge; those sub-checks are expected to fail")
    return res


# ---------------------------------------------------------------- criterion 9

def criterion_9() -> CriterionResult:
    res = CriterionResult(9, "Frobenius: randomized Gram test = structural predicate = (right dim 1)")
    sweep = frobenius_sweep()
    res.checks.append(Check("sweep size >= 20", len(sweep) >= 20, f"{len(sweep)} systems"))
    for p in sweep:
        t = table(p)
        structural = algebra.frobenius_predicate(p)
        randomized = algebra.frobenius_randomized(t, trials=3, prime=algebra.DEFAULT_PRIME)
        right_one = algebra.primitive_spaces(t).right_dim == 1
        ok = structural == randomized == right_one
        res.checks.append(Check(describe(p), ok,
                                f"predicate={structural} randomized={randomized} right_dim_1={right_one}"))
    return res


# ---------------------------------------------------------------- criterion 10

MUTATIONS_PER_FIGURE = 10


def mutate(diagram: diagmod.ModuleDiagram, ngen: int, rng: random.Random):
    """One random single-edge mutation that keeps the diagram well formed."""
    for _ in range(1000):
        edges = list(diagram.edges)
        t = rng.randrange(len(edges))
        e = edges[t]
        kinds = ["gen", "drop"] + (["unplus"] if e.plus else [])
        kind = rng.choice(kinds)
        if kind == "drop":
            del edges[t]
            desc = f"drop {e.src}->{e.dst}"
        elif kind == "unplus":
            edges[t] = diagmod.Edge(e.src, e.dst, e.gen, False)
            desc = f"remove plus on {e.src}->{e.dst}"
        else:
            g = rng.choice([x for x in range(1, ngen + 1) if x != e.gen])
            edges[t] = diagmod.Edge(e.src, e.dst, g, e.plus)
            desc = f"relabel {e.src}->{e.dst} {e.gen}->{g}"
        try:
            return diagmod.ModuleDiagram(list(diagram.nodes), diagram.start, edges), desc
        except diagmod.MalformedDiagram:
            continue
    raise RuntimeError("no well-formed mutation found")


def criterion_10() -> CriterionResult:
    res = CriterionResult(10, "witness diagrams: verify, mutation sensitivity, growth certificates")
    for fig in diagmod.bundled_figures():
        pres = fig.presentation
        rep = diagmod.verify(fig.diagram, pres)
        res.checks.append(Check(f"{fig.id} verifies", rep.relations_ok and rep.is_witness,
                                rep.details or (f"{len(rep.failures)} relation failures" if rep.failures else "")))
        rng = random.Random(f"mutations:{fig.id}")
        for t in range(MUTATIONS_PER_FIGURE):
            mutant, desc = mutate(fig.diagram, pres.generator_count, rng)
            r = diagmod.verify(mutant, pres)
            broken = not (r.relations_ok and r.is_witness)
            res.checks.append(Check(f"{fig.id} mutation {t} breaks ({desc})", broken))
        try:
            word = diagmod.growth_certificate(fig.diagram, 100, pres)
            out = diagmod.act(fig.diagram, (fig.diagram.start, 0), word)
            ok = len(word) >= 100 and out is not None
            detail = f"length {len(word)}"
        except ValueError as exc:
            ok, detail = False, str(exc)
        res.checks.append(Check(f"{fig.id} growth certificate N=100", ok, detail))
    return res


# ---------------------------------------------------------------- criterion 11

def criterion_11() -> CriterionResult:
    res = CriterionResult(11, "word and group backends agree on every all-2 system of the sweep")
    pool = finite_systems_1_to_6() + frobenius_sweep()
    seen = set()
    for p in pool:
        if p in seen or any(x != 2 for x in p.d):
            continue
        seen.add(p)
        w = words_dim(p)
        if w > 5000:
            continue
        res.checks.append(_eq_check(describe(p), group_dim(p), w))
    return res


# ---------------------------------------------------------------- criterion 12

SWEEP_LABELS = (2, 3, 4, 5, 6)
SWEEP_D = (2, 3)
SWEEP_K = (2, 3, 4, 5, 6, INF)
SWEEP_BUDGET = Budget(max_word_length=60, max_class_size=10**6, max_class_count=30000)
RANK4_SAMPLE = 240


def _canonical_key(n, labels, d):
    best = None
    for perm in itertools.permutations(range(n)):
        lab = tuple(sorted((min(perm[i], perm[j]), max(perm[i], perm[j]), m) for (i, j), m in labels.items()))
        dd = tuple(d[perm.index(x)] for x in range(n))
        key = (lab, dd)
        if best is None or key < best:
            best = key
    return best


def _connected(n, labels) -> bool:
    adj = {i: set() for i in range(n)}
    for (i, j), m in labels.items():
        if m != 2:
            adj[i].add(j)
            adj[j].add(i)
    seen, stack = {0}, [0]
    while stack:
        a = stack.pop()
        for b in adj[a] - seen:
            seen.add(b)
            stack.append(b)
    return len(seen) == n


def classifier_sweep_graphs(rank4_sample: int = RANK4_SAMPLE, seed: int = 12) -> list:
    """Connected (matrix, d) classes up to relabeling: all of rank <= 3 and a fixed sample of rank 4."""
    out = []
    for n in (1, 2, 3, 4):
        pairs = list(itertools.combinations(range(n), 2))
        classes = {}
        for ms in itertools.product(SWEEP_LABELS, repeat=len(pairs)):
            labels = dict(zip(pairs, ms))
            if not _connected(n, labels):
                continue
            for d in itertools.product(SWEEP_D, repeat=n):
                key = _canonical_key(n, labels, d)
                classes.setdefault(key, (labels, d))
        items = [classes[k] for k in sorted(classes)]
        if n == 4:
            items = random.Random(seed).sample(items, min(rank4_sample, len(items)))
        for labels, d in items:
            out.append(system(n, {(i + 1, j + 1): m for (i, j), m in labels.items()}, d, INF))
    return out


def classifier_sweep(rank4_sample: int = RANK4_SAMPLE) -> list:
    out = []
    for base in classifier_sweep_graphs(rank4_sample):
        for k in SWEEP_K:
            out.append(NilHeckeParams(base.matrix, base.d, Cutoff(k)))
    return out


def check_classification(p: NilHeckeParams, budget: Budget = SWEEP_BUDGET) -> Check:
    verdict = classifier.classify(p, with_witness=False)
    enum = wordengine.enumerate_basis(compile_presentation(p), budget, cache=False)
    name = describe(p)
    if verdict.verdict == classifier.FINITE:
        if not enum.complete:
            return Check(name, False, f"classified finite but enumeration cut at length {enum.at_length}")
        if verdict.dim is not None and verdict.dim != enum.dimension:
            return Check(name, False, f"classified dim {verdict.dim}, enumerated {enum.dimension}")
        return Check(name, True, f"finite {enum.dimension}")
    if verdict.verdict == classifier.INFINITE:
        if enum.complete:
            return Check(name, False, f"classified infinite but enumeration completed with {enum.dimension}")
        sizes = enum.frontier_sizes()
        growing = all(s > 0 for s in sizes)
        return Check(name, growing, f"infinite; cut at length {enum.at_length}, last frontier {sizes[-1]}")
    return Check(name, False, f"verdict {verdict.verdict}")


def criterion_12(rank4_sample: int = RANK4_SAMPLE) -> CriterionResult:
    res = CriterionResult(12, "classifier consistency against bounded enumeration (not a proof)")
    for p in classifier_sweep(rank4_sample):
        res.checks.append(check_classification(p))
    res.notes.append("consistency check only: an infinite verdict is matched by an enumeration that is still "
                     "producing new classes at every length up to the budget cut")
    return res


# ---------------------------------------------------------------- driver

CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11, 12: criterion_12,
}


def run_criterion(number: int) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        res = CRITERIA[number]()
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        res = CriterionResult(number, f"criterion {number}")
        res.checks.append(Check("runner raised", False, f"{type(exc).__name__}: {exc}"))
    res.elapsed = time.perf_counter() - t0
    return res


def run_all(numbers: Optional[list] = None) -> list:
    return [run_criterion(n) for n in (numbers or sorted(CRITERIA))]
