"""Multiplication, nilpotency, primitive elements and Frobenius tests on a finite basis."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
import sympy

from .coxsys import (ComplexSystem, ExplicitJ0, GeneralPresentation, NilHeckeParams, components,
                     kept_pairs, presentation_of)
from .wordengine import DEFAULT_BUDGET, BasisEnumeration, Budget, BudgetExceeded, enumerate_basis

ZERO = -1
DEFAULT_PRIME = int(sympy.prevprime(2**62))


class InfiniteDimensional(ValueError):
    """A finite basis was required."""


class FrobeniusMismatch(AssertionError):
    """Randomized Gram test disagrees with the structural predicate."""


@dataclass
class BasisTable:
    presentation: GeneralPresentation
    words: list
    index: dict
    rmul: list  # rmul[c][i-1] -> class id or ZERO
    lmul: list  # lmul[c][i-1] -> class id of s_i * c or ZERO
    parent: list  # class of canonical word minus its last letter
    params: Optional[object] = None

    @property
    def dim(self) -> int:
        return len(self.words)

    @property
    def n(self) -> int:
        return self.presentation.generator_count

    def lengths(self) -> list:
        return [len(w) for w in self.words]

    def class_of(self, word) -> int:
        c = 0
        for a in word:
            c = self.rmul[c][a - 1]
            if c == ZERO:
                return ZERO
        return c

    def mono_mult(self, u: int, v: int) -> int:
        c = u
        for a in self.words[v]:
            c = self.rmul[c][a - 1]
            if c == ZERO:
                return ZERO
        return c

    def product_row(self, u: int) -> list:
        """[u * v for every v], using v = parent(v) * last letter."""
        row = [ZERO] * self.dim
        row[0] = u
        for v in range(1, self.dim):
            p = row[self.parent[v]]
            row[v] = ZERO if p == ZERO else self.rmul[p][self.words[v][-1] - 1]
        return row


def build_table(pres: GeneralPresentation, budget: Budget = DEFAULT_BUDGET, params=None) -> BasisTable:
    enum = enumerate_basis(pres, budget)
    if not enum.complete:
        raise BudgetExceeded(f"basis enumeration cut at length {enum.at_length}", at_length=enum.at_length,
                             partial=enum)
    return table_from_enumeration(enum, params)


def table_from_enumeration(enum: BasisEnumeration, params=None) -> BasisTable:
    n = enum.presentation.generator_count
    words = enum.words
    index = enum.index
    parent = [0] + [index[w[:-1]] for w in words[1:]]
    lmul = [None] * len(words)
    lmul[0] = [enum.rmul[0][i] for i in range(n)]
    for c in range(1, len(words)):
        p, j = parent[c], words[c][-1]
        lmul[c] = [ZERO if x == ZERO else enum.rmul[x][j - 1] for x in lmul[p]]
    return BasisTable(enum.presentation, words, index, enum.rmul, lmul, parent, params)


def table_for(system, budget: Budget = DEFAULT_BUDGET) -> BasisTable:
    return build_table(presentation_of(system), budget, params=system)


# ---------------------------------------------------------------- elements

class AlgElement(dict):
    """Sparse vector: class id -> nonzero Fraction."""

    @classmethod
    def monomial(cls, c: int, coeff=1) -> "AlgElement":
        return cls({c: Fraction(coeff)}) if c != ZERO and coeff else cls()

    def add(self, other: "AlgElement") -> "AlgElement":
        out = AlgElement(self)
        for c, x in other.items():
            y = out.get(c, 0) + x
            if y:
                out[c] = y
            else:
                out.pop(c, None)
        return out

    def scale(self, s) -> "AlgElement":
        s = Fraction(s)
        return AlgElement({c: x * s for c, x in self.items()}) if s else AlgElement()


def mult(table: BasisTable, a: AlgElement, b: AlgElement) -> AlgElement:
    out = {}
    for u, x in a.items():
        for v, y in b.items():
            c = table.mono_mult(u, v)
            if c != ZERO:
                out[c] = out.get(c, 0) + x * y
    return AlgElement({c: x for c, x in out.items() if x})


def word_element(table: BasisTable, word) -> AlgElement:
    return AlgElement.monomial(table.class_of(word))


def nilpotency_index(table: BasisTable) -> int:
    """N with m^N = 0 and m^(N-1) != 0, checked on the top length level."""
    top = max(table.lengths())
    if top == 0:
        return 1
    tops = [c for c, w in enumerate(table.words) if len(w) == top]
    for c in tops:
        if any(x != ZERO for x in table.rmul[c]) or any(x != ZERO for x in table.lmul[c]):
            raise AssertionError("a top-length monomial has a nonzero product with a generator")
    return top + 1


# ---------------------------------------------------------------- kernels

def kernel_dimension(nvars: int, rows) -> int:
    """dim of {x in Q^nvars : r.x = 0 for all rows}, rows as {col: coeff}."""
    rows = [dict(r) for r in rows if r]
    forced = set()
    # singleton rows force a variable to vanish; propagate
    changed = True
    while changed:
        changed = False
        keep = []
        for r in rows:
            for c in [c for c in r if c in forced]:
                del r[c]
            if len(r) == 1:
                forced.add(next(iter(r)))
                changed = True
            elif r:
                keep.append(r)
        rows = keep
    pivots = {}
    for r in rows:
        r = {c: Fraction(x) for c, x in r.items()}
        while r:
            c = min(r)
            if c in pivots:
                pr = pivots[c]
                f = r[c] / pr[c]
                for cc, x in pr.items():
                    y = r.get(cc, 0) - f * x
                    if y:
                        r[cc] = y
                    else:
                        r.pop(cc, None)
            else:
                pivots[c] = r
                break
    return nvars - len(forced) - len(pivots)


def _annihilator_rows(table: BasisTable, maps) -> list:
    rows = []
    for mp in maps:
        for i in range(table.n):
            fibres = {}
            for c in range(table.dim):
                t = mp[c][i]
                if t != ZERO:
                    fibres.setdefault(t, {})[c] = 1
            rows.extend(fibres.values())
    return rows


@dataclass
class PrimitivityReport:
    left_dim: int
    right_dim: int
    two_sided_dim: int
    left_monomials: list = field(default_factory=list)
    right_monomials: list = field(default_factory=list)
    primitive_monomials: list = field(default_factory=list)

    @property
    def left_spanned_by_monomials(self) -> bool:
        return self.left_dim == len(self.left_monomials)

    @property
    def right_spanned_by_monomials(self) -> bool:
        return self.right_dim == len(self.right_monomials)

    @property
    def two_sided_spanned_by_monomials(self) -> bool:
        return self.two_sided_dim == len(self.primitive_monomials)

    def to_json(self, table: BasisTable) -> dict:
        w = table.words
        return {
            "left": self.left_dim,
            "right": self.right_dim,
            "two_sided": self.two_sided_dim,
            "left_monomials": [list(w[c]) for c in self.left_monomials],
            "right_monomials": [list(w[c]) for c in self.right_monomials],
            "primitive_monomials": [list(w[c]) for c in self.primitive_monomials],
        }


def primitive_spaces(table: BasisTable) -> PrimitivityReport:
    left = kernel_dimension(table.dim, _annihilator_rows(table, [table.lmul]))
    right = kernel_dimension(table.dim, _annihilator_rows(table, [table.rmul]))
    both = kernel_dimension(table.dim, _annihilator_rows(table, [table.lmul, table.rmul]))
    lm = [c for c in range(table.dim) if all(x == ZERO for x in table.lmul[c])]
    rm = [c for c in range(table.dim) if all(x == ZERO for x in table.rmul[c])]
    pm = sorted(set(lm) & set(rm))
    return PrimitivityReport(left, right, both, lm, rm, pm)


def is_primitive_word(table: BasisTable, word) -> bool:
    c = table.class_of(word)
    return c != ZERO and all(x == ZERO for x in table.lmul[c]) and all(x == ZERO for x in table.rmul[c])


def is_right_primitive_word(table: BasisTable, word) -> bool:
    c = table.class_of(word)
    return c != ZERO and all(x == ZERO for x in table.rmul[c])


def leftright_symmetry_check(table: BasisTable) -> bool:
    rep = primitive_spaces(table)
    if rep.left_dim != rep.right_dim:
        return False
    image = set()
    for c in rep.left_monomials:
        r = table.class_of(tuple(reversed(table.words[c])))
        if r == ZERO:
            return False
        image.add(r)
    return image == set(rep.right_monomials)


# ---------------------------------------------------------------- Frobenius

def frobenius_predicate(system) -> bool:
    """Structural Frobenius criterion, applied to each connected component.

    A component qualifies when it is a single generator, or all its exponents
    are 2 and none of its braid relations is killed.  Components must also
    commute with each other (their commutations kept), otherwise products of
    generators from different components vanish and the socle is too large.
    """
    if isinstance(system, ComplexSystem):
        raise ValueError("structural Frobenius criterion is stated for Coxeter systems only")
    p: NilHeckeParams = system
    if p.rank == 1:
        return True
    j0 = kept_pairs(p.matrix, p.truncation)
    comps = components(p.matrix)
    where = {g: t for t, comp in enumerate(comps) for g in comp}
    for i, j in p.matrix.pairs():
        if where[i] != where[j] and (i, j) not in j0:
            return False
    for comp in comps:
        if len(comp) == 1:
            continue
        if any(p.d[g - 1] != 2 for g in comp):
            return False
        for a in comp:
            for b in comp:
                if a < b and p.matrix.m(a, b) != float("inf") and (a, b) not in j0:
                    return False
    return True


def _det_nonzero_mod(G: np.ndarray, p: int) -> bool:
    n = G.shape[0]
    small = p < (1 << 31)
    A = (G % p).astype(np.int64 if small else object)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r, col] % p:
                piv = r
                break
        if piv is None:
            return False
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
        inv = pow(int(A[col, col]), -1, p)
        if col + 1 < n:
            f = (A[col + 1:, col] * inv) % p
            A[col + 1:, col:] = (A[col + 1:, col:] - np.outer(f, A[col, col:]) % p) % p if not small else \
                (A[col + 1:, col:] - (f[:, None] * A[col, col:][None, :]) % p) % p
    return True


def frobenius_randomized(table: BasisTable, trials: int = 3, prime: int = DEFAULT_PRIME,
                         rng: Optional[random.Random] = None) -> bool:
    """Is there a functional f making (u, v) -> f(uv) nondegenerate?  One-sided test.

    The algebra is graded by word length, so f(uv) = 0 once len(u) + len(v)
    exceeds the top length L.  With rows by increasing and columns by
    decreasing length the Gram matrix is block upper triangular; it is
    invertible iff levels i and L - i have equal sizes for every i and each
    anti-diagonal block (u at level i, v at level L - i) is invertible.
    """
    if prime <= table.dim ** 2:
        raise ValueError("prime modulus must exceed dim^2")
    small = prime < (1 << 31)
    rng = rng or random.Random(0)
    lengths = table.lengths()
    top = max(lengths)
    levels = [[c for c in range(table.dim) if lengths[c] == ell] for ell in range(top + 1)]
    if any(len(levels[i]) != len(levels[top - i]) for i in range(top + 1)):
        return False
    blocks = []
    for i in range(top + 1):
        rows = levels[i]
        cols = np.array(levels[top - i], dtype=np.int64)
        prod = np.array([[table.mono_mult(u, v) for v in cols] for u in rows], dtype=np.int64)
        blocks.append(prod)
    for _ in range(trials):
        f = np.array([rng.randrange(1, prime) for _ in range(table.dim)], dtype=np.int64 if small else object)
        ok = True
        for prod in blocks:
            zero_mask = prod == ZERO
            G = f[np.where(zero_mask, 0, prod)]
            G[zero_mask] = 0
            if not _det_nonzero_mod(G, prime):
                ok = False
                break
        if ok:
            return True
    return False


def frobenius_error_bound(table: BasisTable, trials: int = 3, prime: int = DEFAULT_PRIME) -> float:
    """Probability that a Frobenius algebra is wrongly reported as not Frobenius."""
    return (table.dim / prime) ** trials


def frobenius_decision(system, table: Optional[BasisTable] = None, trials: int = 3,
                       prime: int = DEFAULT_PRIME) -> bool:
    table = table or table_for(system)
    structural = frobenius_predicate(system)
    randomized = frobenius_randomized(table, trials, prime)
    if structural != randomized:
        raise FrobeniusMismatch(f"structural={structural} randomized={randomized}")
    return structural


def explicit_j0_of(params: NilHeckeParams) -> ExplicitJ0:
    return ExplicitJ0(kept_pairs(params.matrix, params.truncation))
