"""Coxeter group elements in the geometric representation over a cyclotomic ring.

Only used for d = (2, ..., 2): the basis is then indexed by group elements
none of whose reduced words contain a killed braid word.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import mpmath
import numpy as np
import sympy

from .coxsys import INF, CoxeterMatrix, alt
from .wordengine import DEFAULT_BUDGET, Budget

_GUARD = 1 << 52


class ExactRing:
    """Z[x] / Phi_{2L}(x), x standing for exp(i*pi/L)."""

    def __init__(self, L: int):
        self.L = L
        x = sympy.Symbol("x")
        coeffs = [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(2 * L, x), x).all_coeffs()]
        self.modulus = coeffs  # leading coefficient first, monic
        self.deg = len(coeffs) - 1
        self._angles = np.array([math.cos(k * math.pi / L) for k in range(self.deg)])

    def reduce(self, poly) -> np.ndarray:
        """Reduce a low-degree-first integer coefficient list."""
        p = [int(c) for c in poly]
        low_first = self.modulus[::-1]
        for top in range(len(p) - 1, self.deg - 1, -1):
            c = p[top]
            if c:
                for k in range(self.deg + 1):
                    p[top - self.deg + k] -= c * low_first[k]
        out = np.zeros(self.deg, dtype=np.int64)
        out[: min(self.deg, len(p))] = p[: self.deg]
        return out

    def monomial(self, e: int) -> np.ndarray:
        e %= 2 * self.L
        poly = [0] * (e + 1)
        poly[e] = 1
        return self.reduce(poly)

    def constant(self, c: int) -> np.ndarray:
        return self.reduce([c])

    def two_cos(self, m) -> np.ndarray:
        """2cos(pi/m); the value 2 for m = infinity."""
        if m == INF:
            return self.constant(2)
        e = self.L // m
        return self.monomial(e) + self.monomial(-e)

    def mul_matrix(self, c: np.ndarray) -> np.ndarray:
        """Matrix M with M @ v = c*v on coefficient vectors."""
        M = np.zeros((self.deg, self.deg), dtype=np.int64)
        for k in range(self.deg):
            poly = [0] * (k + self.deg)
            for t, ct in enumerate(c):
                poly[k + t] += int(ct)
            M[:, k] = self.reduce(poly)
        return M

    def value(self, v) -> float:
        return float(np.dot(v, self._angles))

    def sign(self, v) -> int:
        """Exact sign of a real ring element."""
        if not np.any(v):
            return 0
        f = self.value(v)
        B = float(np.abs(v).sum())
        err = B * self.deg * 1e-14
        if abs(f) > err:
            return 1 if f > 0 else -1
        # nonzero algebraic integer: |v| >= B^-(deg-1); evaluate precisely enough
        digits = int((self.deg - 1) * math.log10(max(B, 2.0))) + 30
        with mpmath.workdps(digits):
            val = mpmath.fsum(int(c) * mpmath.cos(k * mpmath.pi / self.L) for k, c in enumerate(v))
        return 1 if val > 0 else -1


@dataclass(eq=False)
class GroupElement:
    matrix: np.ndarray  # (n, n, deg): matrix[a, b] is the entry in row a, column b
    word: tuple = ()
    length: Optional[int] = None
    descents: Optional[frozenset] = None

    def __post_init__(self):
        self._key = self.matrix.tobytes()

    @property
    def key(self) -> bytes:
        return self._key

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self._key == other._key


class GroupModel:
    def __init__(self, matrix: CoxeterMatrix):
        self.coxeter = matrix
        n = self.n = matrix.rank
        finite = [matrix.m(i, j) for i, j in matrix.pairs() if matrix.m(i, j) != INF]
        L = 1
        for m in finite:
            L = L * m // math.gcd(L, m)
        self.ring = ExactRing(max(L, 1))
        deg = self.ring.deg
        # right multiplication by sigma_i: col_j += c_ij * col_i (j != i), col_i *= -1
        self._coef = {}
        for i in range(n):
            for j in range(n):
                if i != j and matrix.m(i + 1, j + 1) != 2:
                    M = self.ring.mul_matrix(self.ring.two_cos(matrix.m(i + 1, j + 1)))
                    self._coef[(i, j)] = M.T.copy()
        ident = np.zeros((n, n, deg), dtype=np.int64)
        one = self.ring.constant(1)
        for a in range(n):
            ident[a, a] = one
        self.identity = GroupElement(ident, (), 0, frozenset())
        self._check_relations()

    def _check_relations(self) -> None:
        e = self.identity.matrix
        for i in range(1, self.n + 1):
            if not np.array_equal(self.rmul_matrix(self.rmul_matrix(e, i), i), e):
                raise AssertionError(f"sigma_{i} is not an involution")
        for i, j in self.coxeter.pairs():
            m = self.coxeter.m(i, j)
            if m == INF:
                continue
            a = e
            for g in alt(i, j, 2 * m):
                a = self.rmul_matrix(a, g)
            if not np.array_equal(a, e):
                raise AssertionError(f"braid relation fails for {(i, j)}")

    def rmul_matrix(self, W: np.ndarray, i: int) -> np.ndarray:
        i -= 1
        out = W.copy()
        col = W[:, i, :]
        for j in range(self.n):
            M = self._coef.get((i, j))
            if M is not None:
                out[:, j, :] += col @ M
        out[:, i, :] = -col
        if np.abs(out).max() > _GUARD:
            raise OverflowError("geometric representation coefficients too large for int64")
        return out

    def generator_matrices(self) -> list:
        return [self.rmul_matrix(self.identity.matrix, i) for i in range(1, self.n + 1)]

    def is_right_descent(self, W: np.ndarray, i: int) -> bool:
        """l(w s_i) < l(w) iff w(alpha_i) is a negative root."""
        col = W[:, i - 1, :]
        for a in range(self.n):
            if np.any(col[a]):
                return self.ring.sign(col[a]) < 0
        raise AssertionError("zero column in a group element")

    def descent_set(self, W: np.ndarray) -> frozenset:
        return frozenset(i for i in range(1, self.n + 1) if self.is_right_descent(W, i))

    def element(self, W: np.ndarray) -> GroupElement:
        """Element with length, a reduced word and descents filled in (by descending)."""
        desc = self.descent_set(W)
        word = []
        cur = W
        while True:
            d = self.descent_set(cur)
            if not d:
                break
            i = min(d)
            word.append(i)
            cur = self.rmul_matrix(cur, i)
        return GroupElement(W, tuple(reversed(word)), len(word), desc)

    def from_word(self, word) -> GroupElement:
        W = self.identity.matrix
        for i in word:
            W = self.rmul_matrix(W, i)
        return self.element(W)

    def rmul(self, w: GroupElement, i: int) -> GroupElement:
        return self.element(self.rmul_matrix(w.matrix, i))


@lru_cache(maxsize=64)
def group_model(matrix: CoxeterMatrix) -> GroupModel:
    return GroupModel(matrix)


def reflection_rep(matrix: CoxeterMatrix) -> list:
    """Exact generator matrices, shape (n, n, deg) each."""
    return group_model(matrix).generator_matrices()


class ReducedWords:
    """Memoized reduced-word machinery on one group model."""

    def __init__(self, model: GroupModel, known: Optional[dict] = None):
        self.model = model
        self.known = known if known is not None else {}
        self._words = {}
        self._states = {}

    def _lower(self, w: GroupElement, i: int) -> GroupElement:
        W = self.model.rmul_matrix(w.matrix, i)
        got = self.known.get(W.tobytes())
        if got is None:
            got = GroupElement(W, None, w.length - 1, self.model.descent_set(W))
            self.known[got.key] = got
        return got

    def all_reduced_words(self, w: GroupElement) -> frozenset:
        got = self._words.get(w.key)
        if got is None:
            if w.length == 0:
                got = frozenset({()})
            else:
                got = frozenset(u + (i,) for i in sorted(w.descents)
                                for u in self.all_reduced_words(self._lower(w, i)))
            self._words[w.key] = got
        return got

    def avoids_patterns(self, w: GroupElement, forbidden) -> bool:
        return self.suffix_states(w, tuple(sorted(set(map(tuple, forbidden))))) is not None

    def suffix_states(self, w: GroupElement, forbidden: tuple):
        """Suffixes (shorter than the longest pattern) of reduced words of w;
        None if some reduced word contains a forbidden word."""
        key = (w.key, forbidden)
        if key in self._states:
            return self._states[key]
        keep = max((len(f) for f in forbidden), default=1) - 1
        fset = set(forbidden)
        if w.length == 0:
            out = frozenset({()})
        else:
            acc = set()
            out = None
            for i in sorted(w.descents):
                below = self.suffix_states(self._lower(w, i), forbidden)
                if below is None:
                    break
                for s in below:
                    t = s + (i,)
                    if any(t[-len(f):] == f for f in fset if len(f) <= len(t)):
                        below = None
                        break
                    acc.add(t[max(0, len(t) - keep):] if keep else ())
                if below is None:
                    break
            else:
                out = frozenset(acc)
        self._states[key] = out
        return out


@dataclass
class IdealEnumeration:
    elements: list = field(default_factory=list)
    status: str = "complete"
    at_length: Optional[int] = None

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def __len__(self):
        return len(self.elements)

    @property
    def count(self) -> int:
        return len(self.elements)

    def words(self) -> list:
        return sorted((e.word for e in self.elements), key=lambda w: (len(w), w))


def weak_ideal_enumerate(matrix: CoxeterMatrix, predicate: Callable[[GroupElement], bool],
                         budget: Budget = DEFAULT_BUDGET) -> IdealEnumeration:
    """BFS up the right weak order from the identity.

    A new element is kept when the predicate holds and all its lower covers
    were kept; children of discarded elements are never explored.
    """
    model = group_model(matrix)
    return _ideal(model, lambda w, parents_ok: parents_ok and predicate(w), budget)


def _ideal(model: GroupModel, accept, budget: Budget, known: Optional[dict] = None) -> IdealEnumeration:
    out = [model.identity]
    if known is not None:
        known[model.identity.key] = model.identity
    level = {model.identity.key: model.identity}
    ell = 0
    while level:
        if ell >= budget.max_word_length:
            return IdealEnumeration(out, "budget_exceeded", ell + 1)
        cand = {}
        for key in sorted(level):
            w = level[key]
            for i in range(1, model.n + 1):
                if i in w.descents:
                    continue
                Wc = model.rmul_matrix(w.matrix, i)
                k = Wc.tobytes()
                if k in cand:
                    cand[k][1].add(i)
                else:
                    cand[k] = (Wc, {i}, w.word + (i,))
        nxt = {}
        for k in sorted(cand):
            Wc, found, word = cand[k]
            desc = model.descent_set(Wc)
            child = GroupElement(Wc, word, ell + 1, desc)
            if accept(child, desc == found):
                nxt[k] = child
                if known is not None:
                    known[k] = child
        ell += 1
        out.extend(nxt[k] for k in sorted(nxt))
        if len(out) > budget.max_class_count:
            return IdealEnumeration(out, "budget_exceeded", ell)
        level = nxt
    return IdealEnumeration(out, "complete", None)


def killed_braid_words(matrix: CoxeterMatrix, j0) -> list:
    out = []
    for i, j in matrix.pairs():
        m = matrix.m(i, j)
        if m != INF and (i, j) not in j0:
            out.extend([alt(i, j, m), alt(j, i, m)])
    return sorted(out)


def wj0_basis(matrix: CoxeterMatrix, j0, budget: Budget = DEFAULT_BUDGET) -> IdealEnumeration:
    """Elements with no reduced word containing a killed braid word."""
    model = group_model(matrix)
    forbidden = tuple(killed_braid_words(matrix, frozenset(tuple(sorted(p)) for p in j0)))
    known = {}
    rw = ReducedWords(model, known)

    def accept(w, parents_ok):
        if not parents_ok:
            return False
        return rw.suffix_states(w, forbidden) is not None

    return _ideal(model, accept, budget, known)


def fc_count(matrix: CoxeterMatrix, budget: Budget = DEFAULT_BUDGET) -> int:
    j0 = {(i, j) for i, j in matrix.pairs() if matrix.m(i, j) < 3}
    res = wj0_basis(matrix, j0, budget)
    if not res.complete:
        from .wordengine import BudgetExceeded
        raise BudgetExceeded("fully commutative enumeration hit the budget", at_length=res.at_length)
    return res.count
