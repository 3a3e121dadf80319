"""Finite/infinite decision and closed-form dimensions for truncated nil-Hecke algebras."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .coxsys import (INF, ComplexSystem, Cutoff, NilHeckeParams, StandardFamily, components,
                     compile_presentation, kept_pairs, recognize_type)

FINITE = "finite"
INFINITE = "infinite"
UNSUPPORTED = "unsupported"


@dataclass
class ClassificationResult:
    verdict: str
    dim: Optional[int] = None
    dim_kind: str = "not_applicable"  # exact | by_enumeration | not_applicable
    formula: Optional[str] = None
    witness: Optional[str] = None
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.dim is not None:
            out["dim"] = self.dim
        if self.formula is not None:
            out["formula"] = self.formula
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan index must be non-negative")
    return math.comb(2 * n, n) // (n + 1)


def catalan_sum_rank(n: int, d: int) -> int:
    """Catalan-sum closed form for type A_n, d = (d,2,...,2), k = 3.

    Agrees with enumeration for n <= 3 and undercounts from n = 4 on when d > 2;
    kept for comparison, not used for classification.
    """
    return ((d - 1) * catalan(n + 1) - (d - 2) * catalan(n)
            + (d - 2) * sum(j * catalan(n - j) for j in range(1, n)))


def one_big_end_rank(n: int, d: int) -> int:
    """Dimension for type A_n, d = (d,2,...,2), k = 3: (d-1) C_(n+1) - (d-2).

    Matches the word-class enumeration for every n <= 6, d <= 4.
    """
    return (d - 1) * catalan(n + 1) - (d - 2)


def nc_a(n: int, d: int) -> int:
    return math.factorial(n) * (1 + n * (d - 1))


def type_b_k4(n: int) -> int:
    return sum(math.comb(n, j) ** 2 * math.factorial(j) for j in range(n + 1))


_EXCEPTIONAL_ORDERS = {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                       ("F", 4): 1152, ("H", 3): 120, ("H", 4): 14400}


def group_order(fam: StandardFamily) -> int:
    L, n = fam.letter, fam.rank
    if L == "A":
        return math.factorial(n + 1)
    if L == "B":
        return 2 ** n * math.factorial(n)
    if L == "D":
        return 2 ** (n - 1) * math.factorial(n)
    if L == "I2":
        return 2 * fam.m
    if (L, n) in _EXCEPTIONAL_ORDERS:
        return _EXCEPTIONAL_ORDERS[(L, n)]
    raise ValueError(f"{fam} is not a finite Coxeter group")


def _is_affine_family(fam: StandardFamily) -> bool:
    return (fam.letter == "E" and fam.rank >= 9) or (fam.letter == "F" and fam.rank >= 5) \
        or (fam.letter == "H" and fam.rank >= 5)


def _cutoff_of(params: NilHeckeParams):
    t = params.truncation
    if isinstance(t, Cutoff):
        return t.k
    labels = sorted({params.matrix.m(i, j) for i, j in params.matrix.pairs() if params.matrix.m(i, j) != INF})
    for k in [1] + [m + 1 for m in labels] + [INF]:
        if kept_pairs(params.matrix, Cutoff(k)) == t.pairs:
            return k
    return None


# ---------------------------------------------------------------- k <= 2

def _tree_data(matrix):
    n = matrix.rank
    edges = matrix.edges()
    if len(edges) != n - 1:
        return None
    return edges


def _classify_small_k(p: NilHeckeParams) -> ClassificationResult:
    n = p.rank
    if len(components(p.matrix)) > 1:
        return ClassificationResult(UNSUPPORTED, notes=["k <= 2 requires a connected Coxeter graph"])
    edges = _tree_data(p.matrix)
    if edges is None:
        return ClassificationResult(INFINITE, notes=["Coxeter graph is not a tree"])
    if any(p.matrix.m(i, j) == INF for i, j in edges):
        return ClassificationResult(INFINITE, notes=["infinite edge label"])
    multiple = [(i, j) for i, j in edges if p.matrix.m(i, j) >= 4]
    big = [i for i in range(1, n + 1) if p.d[i - 1] >= 3]
    if len(multiple) == 1 and not big:
        i0, j0 = multiple[0]
        m = p.matrix.m(i0, j0)
        if m % 2 == 0:
            a = _side_size(p.matrix, i0, j0)
            b = n - a
            return ClassificationResult(FINITE, m * n * n // 2 + 1 - 2 * a * b, "exact",
                                        "tree with one even multiple edge: m|I|^2/2 + 1 - 2ab")
        return ClassificationResult(FINITE, (m - 1) * n * n // 2 + 1, "exact",
                                    "tree with one odd multiple edge: (m-1)|I|^2/2 + 1")
    if not multiple and len(big) <= 1:
        d0 = max(p.d)
        return ClassificationResult(FINITE, 1 + n * n * (d0 - 1), "exact",
                                    "simply laced tree: 1 + |I|^2 (d_i0 - 1)")
    return ClassificationResult(INFINITE)


def _side_size(matrix, i0, j0) -> int:
    """Nodes on i0's side after deleting the edge i0 - j0."""
    seen = {i0}
    stack = [i0]
    while stack:
        a = stack.pop()
        for b in range(1, matrix.rank + 1):
            if b != a and b not in seen and matrix.m(a, b) != 2 and {a, b} != {i0, j0}:
                seen.add(b)
                stack.append(b)
    return len(seen)


# ---------------------------------------------------------------- k >= 3

def _classify_component(matrix, d, k):
    """(verdict, value or None, tag) for one connected component."""
    rec = recognize_type(matrix)
    if rec is None:
        return INFINITE, None, None
    fam, mapping = rec
    std_d = [0] * len(d)
    for i, di in enumerate(d, start=1):
        std_d[mapping[i] - 1] = di
    n = fam.rank
    if all(x == 2 for x in d):
        if _is_affine_family(fam):
            if k == 3:
                return FINITE, None, f"fully commutative elements of {fam} (enumeration)"
            return INFINITE, None, None
        if k == 3:
            if fam.letter == "A":
                return FINITE, catalan(n + 1), f"Catalan C_{n + 1} (fully commutative {fam})"
            if fam.letter == "I2":
                return FINITE, 2 * fam.m - 1, f"2m-1 (fully commutative {fam})"
            return FINITE, _fc(matrix), f"fully commutative count of {fam}"
        if fam.letter == "I2":
            m = fam.m
            return FINITE, (2 * m if m < k else 2 * m - 1), f"{fam}: 2m if m<k else 2m-1"
        if k == 4:
            if fam.letter == "B":
                return FINITE, type_b_k4(n), f"{fam}: sum C(n,j)^2 j!"
            const = {("F", 4): 304, ("H", 3): 76, ("H", 4): 1460}.get((fam.letter, n))
            if const is not None:
                return FINITE, const, f"{fam} constant {const}"
        if k == 5:
            const = {("H", 3): 76, ("H", 4): 1460}.get((fam.letter, n))
            if const is not None:
                return FINITE, const, f"{fam} constant {const}"
        return FINITE, group_order(fam), f"|W({fam})|"
    if fam.letter != "A":
        return INFINITE, None, None
    big = [i for i, x in enumerate(std_d) if x > 2]
    if len(big) == 1 and big[0] in (0, n - 1):
        dd = std_d[big[0]]
        if k == 3:
            return FINITE, one_big_end_rank(n, dd), f"type A_{n} with d={dd}: (d-1)C_(n+1) - (d-2)"
        return FINITE, nc_a(n, dd), f"type A_{n} with d={dd}: n!(1+n(d-1))"
    return INFINITE, None, None


@lru_cache(maxsize=None)
def _fc(matrix) -> int:
    from .groupmodel import fc_count
    return fc_count(matrix)


def _witness_for(params: NilHeckeParams) -> Optional[str]:
    from .diagmod import bundled_figures, verify

    pres = compile_presentation(params)
    for fig in bundled_figures():
        if fig.generator_count != params.rank:
            continue
        rep = verify(fig.diagram, pres)
        if rep.relations_ok and rep.is_witness:
            return fig.id
    return None


def classify(params, with_witness: bool = True) -> ClassificationResult:
    if isinstance(params, ComplexSystem):
        return ClassificationResult(UNSUPPORTED, notes=["complex reflection groups are not classified"])
    k = _cutoff_of(params)
    if k is None:
        return ClassificationResult(UNSUPPORTED, notes=["J0 is not of the form J_<k"])
    if k <= 2:
        res = _classify_small_k(params)
    else:
        res = _classify_large_k(params, k)
    if res.verdict == INFINITE and with_witness:
        res.witness = _witness_for(params)
    return res


def _classify_large_k(params: NilHeckeParams, k) -> ClassificationResult:
    total, tags, by_enum = 1, [], False
    for comp in components(params.matrix):
        sub = params.matrix.submatrix(comp)
        d = [params.d[g - 1] for g in comp]
        verdict, value, tag = _classify_component(sub, d, k)
        if verdict == INFINITE:
            return ClassificationResult(INFINITE, notes=[f"component {comp} is infinite"])
        if value is None:
            by_enum = True
        else:
            total *= value
        tags.append(tag)
    formula = " x ".join(tags)
    if by_enum:
        return ClassificationResult(FINITE, None, "by_enumeration", formula)
    return ClassificationResult(FINITE, total, "exact", formula)


def closed_form_dim(params) -> Optional[tuple]:
    res = classify(params, with_witness=False)
    if res.verdict != FINITE or res.dim is None:
        return None
    return res.dim, res.formula
