"""Word classes under kept relations, rejection by killed substrings, basis enumeration.

A monomial is zero exactly when some word in its class (closure under the
kept relations) contains a killed word. Closure ignores killed relations: a
killed relation can only fire on a word that already contains one of its
sides, and such a word is already rejected.
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Optional

from .coxsys import GeneralPresentation


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, at_length: Optional[int] = None, partial=None):
        super().__init__(message)
        self.at_length = at_length
        self.partial = partial


@dataclass(frozen=True)
class Budget:
    max_word_length: int = 256
    max_class_size: int = 10**7
    max_class_count: int = 10**7

    def __post_init__(self):
        if min(self.max_word_length, self.max_class_size, self.max_class_count) <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class BraidClass:
    canonical: tuple
    size: int
    members: Optional[frozenset] = None


def forbidden_substrings(pres: GeneralPresentation) -> list:
    return sorted(set(pres.killed_words), key=lambda w: (len(w), w))


class PatternMatcher:
    """Plain substring containment against a fixed set of words."""

    def __init__(self, patterns):
        self.by_len = defaultdict(set)
        for p in patterns:
            self.by_len[len(p)].add(tuple(p))
        self.lengths = sorted(self.by_len)

    def contains(self, word) -> bool:
        return self.contains_near(word, 0, len(word))

    def contains_near(self, word, lo: int, hi: int) -> bool:
        """Any pattern occurrence overlapping positions [lo, hi)."""
        n = len(word)
        for L in self.lengths:
            pats = self.by_len[L]
            for s in range(max(0, lo - L + 1), min(hi, n - L + 1)):
                if word[s:s + L] in pats:
                    return True
        return False


class _Rewriter:
    def __init__(self, pres: GeneralPresentation):
        self.swaps = defaultdict(list)
        for lhs, rhs in pres.kept_relations:
            self.swaps[lhs].append(rhs)
            self.swaps[rhs].append(lhs)
        self.lengths = sorted({len(s) for s in self.swaps})
        self.matcher = PatternMatcher(pres.killed_words)

    def neighbours(self, w):
        n = len(w)
        for L in self.lengths:
            for p in range(n - L + 1):
                for other in self.swaps.get(w[p:p + L], ()):
                    yield w[:p] + other + w[p + L:], p, p + L


_REWRITERS: dict = {}


def _rewriter(pres):
    r = _REWRITERS.get(pres)
    if r is None:
        r = _REWRITERS[pres] = _Rewriter(pres)
    return r


def class_closure(w, pres: GeneralPresentation, budget: Budget = DEFAULT_BUDGET) -> Optional[BraidClass]:
    """Breadth-first closure of ``w``; None means the class is rejected (zero)."""
    w = tuple(w)
    rw = _rewriter(pres)
    if rw.matcher.contains(w):
        return None
    seen = {w}
    queue = [w]
    k = 0
    while k < len(queue):
        cur = queue[k]
        k += 1
        for nxt, lo, hi in rw.neighbours(cur):
            if nxt in seen:
                continue
            if rw.matcher.contains_near(nxt, lo, hi):
                return None
            seen.add(nxt)
            queue.append(nxt)
            if len(seen) > budget.max_class_size:
                raise BudgetExceeded(f"class of {w} exceeds {budget.max_class_size} words")
    return BraidClass(min(seen), len(seen), frozenset(seen))


def canonical(w, pres: GeneralPresentation, budget: Budget = DEFAULT_BUDGET) -> Optional[tuple]:
    c = class_closure(w, pres, budget)
    return None if c is None else c.canonical


def enumerate_basis_naive(pres: GeneralPresentation, budget: Budget = DEFAULT_BUDGET) -> dict:
    """Reference enumeration by explicit word closures: {length: [canonical words]}."""
    levels = {0: [()]}
    total = 1
    ell = 0
    while levels[ell]:
        if ell >= budget.max_word_length:
            raise BudgetExceeded("word length budget", at_length=ell + 1, partial=levels)
        nxt = set()
        for w in levels[ell]:
            for i in range(1, pres.generator_count + 1):
                c = canonical(w + (i,), pres, budget)
                if c is not None:
                    nxt.add(c)
        ell += 1
        levels[ell] = sorted(nxt)
        total += len(nxt)
        if total > budget.max_class_count:
            raise BudgetExceeded("class count budget", at_length=ell, partial=levels)
    del levels[ell]
    return levels


@dataclass
class BasisEnumeration:
    """Classes indexed by integer ids, ordered by (length, canonical word).

    ``rmul[c][i-1]`` is the id of class(c)·s_i, or -1 when that product is
    zero; for classes on the deepest level of a partial enumeration it is
    None (not computed).
    """

    presentation: GeneralPresentation
    words: list = field(default_factory=list)
    sizes: list = field(default_factory=list)
    level_start: list = field(default_factory=list)
    rmul: list = field(default_factory=list)
    status: str = "complete"
    at_length: Optional[int] = None
    pairs_explored: int = 0

    def __post_init__(self):
        self.index = {w: k for k, w in enumerate(self.words)}

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def dimension(self) -> int:
        return len(self.words)

    @property
    def max_length(self) -> int:
        return len(self.level_start) - 1

    def level(self, ell: int) -> range:
        lo = self.level_start[ell]
        hi = self.level_start[ell + 1] if ell + 1 < len(self.level_start) else len(self.words)
        return range(lo, hi)

    @property
    def classes_by_length(self) -> dict:
        return {ell: [self.words[c] for c in self.level(ell)] for ell in range(len(self.level_start))}

    def frontier_sizes(self) -> list:
        return [len(self.level(ell)) for ell in range(len(self.level_start))]

    def class_of(self, word) -> Optional[int]:
        """Id of the class of ``word`` (None if zero) by folding right multiplication."""
        c = 0
        for a in word:
            nxt = self.rmul[c][a - 1] if c is not None else None
            if nxt is None:
                raise BudgetExceeded("word runs past the enumerated levels")
            if nxt < 0:
                return None
            c = nxt
        return c

    def canonical_of(self, word) -> Optional[tuple]:
        c = self.class_of(word)
        return None if c is None else self.words[c]

    def to_json(self) -> dict:
        out = {
            "status": "complete" if self.complete else "budget_exceeded",
            "classes": [{"len": len(w), "canonical": list(w), "size": s} for w, s in zip(self.words, self.sizes)],
        }
        if self.complete:
            out["dimension"] = self.dimension
        else:
            out["at_length"] = self.at_length
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _build_enumeration(pres: GeneralPresentation, budget: Budget) -> BasisEnumeration:
    # Each class at length l+1 is a connected component of pairs (C, j): C a
    # nonzero class at length l, j a letter.  Two pairs are joined when a kept
    # relation occurrence touching the last letter rewrites one product into
    # the other; occurrences away from the last letter already live inside C.
    n = pres.generator_count
    moves = defaultdict(list)
    for lhs, rhs in pres.kept_relations:
        for L, R in ((lhs, rhs), (rhs, lhs)):
            moves[L[-1]].append((L[:-1], R[:-1], R[-1]))
    forb = defaultdict(list)
    for f in set(pres.killed_words):
        forb[f[-1]].append(f[:-1])

    words = [()]
    sizes = [1]
    level_start = [0]
    rmul = [None]
    inv = [None]  # inv[c]: dict letter -> list of classes C with C·letter = c
    pairs_explored = 0
    memo = {}

    def preimages(c, suffix):
        key = (c, suffix)
        got = memo.get(key)
        if got is not None:
            return got
        cur = (c,)
        for a in reversed(suffix):
            nxt = set()
            for x in cur:
                d = inv[x]
                if d is not None:
                    nxt.update(d.get(a, ()))
            cur = tuple(nxt)
            if not cur:
                break
        memo[key] = cur
        return cur

    def chain(c, letters):
        for a in letters:
            c = rmul[c][a - 1]
            if c < 0:
                return -1
        return c

    def result(status, at_length):
        # classes on the last level of a partial run keep rmul None
        return BasisEnumeration(pres, words, sizes, level_start, rmul, status, at_length, pairs_explored)

    ell = 0
    while True:
        lo = level_start[ell]
        hi = len(words)
        if ell >= budget.max_word_length:
            return result("budget_exceeded", ell + 1)
        assigned = {}
        new_classes = []  # (canonical, size, members)
        for x in range(lo, hi):
            for j in range(1, n + 1):
                if (x, j) in assigned:
                    continue
                comp = [(x, j)]
                seen = {(x, j)}
                rejected = False
                k = 0
                while k < len(comp) and not rejected:
                    y, a = comp[k]
                    k += 1
                    for p in forb.get(a, ()):
                        if preimages(y, p):
                            rejected = True
                            break
                    if rejected:
                        break
                    for Lp, Rp, r in moves.get(a, ()):
                        for P in preimages(y, Lp):
                            z = chain(P, Rp)
                            if z < 0:
                                rejected = True
                                break
                            node = (z, r)
                            if node not in seen:
                                seen.add(node)
                                comp.append(node)
                        if rejected:
                            break
                    if len(seen) > budget.max_class_size:
                        raise BudgetExceeded(f"class component exceeds {budget.max_class_size} pairs",
                                             at_length=ell + 1, partial=result("budget_exceeded", ell + 1))
                pairs_explored += len(seen)
                if rejected:
                    for node in seen:
                        assigned[node] = -1
                else:
                    t = len(new_classes)
                    for node in comp:
                        assigned[node] = t
                    canon = min(words[y] + (a,) for y, a in comp)
                    new_classes.append((canon, sum(sizes[y] for y, _ in comp), comp))
        if not new_classes:
            for x in range(lo, hi):
                rmul[x] = [-1] * n
            return result("complete", None)
        if hi + len(new_classes) > budget.max_class_count:
            return result("budget_exceeded", ell + 1)
        order = sorted(range(len(new_classes)), key=lambda t: new_classes[t][0])
        gid = {}
        for t in order:
            canon, size, comp = new_classes[t]
            gid[t] = len(words)
            words.append(canon)
            sizes.append(size)
            rmul.append(None)
            back = defaultdict(list)
            for y, a in comp:
                back[a].append(y)
            inv.append({a: sorted(v) for a, v in back.items()})
        for x in range(lo, hi):
            rmul[x] = [gid[assigned[(x, j)]] if assigned[(x, j)] >= 0 else -1 for j in range(1, n + 1)]
        level_start.append(hi)
        memo.clear()
        ell += 1


_CACHE: dict = {}


def enumerate_basis(pres: GeneralPresentation, budget: Budget = DEFAULT_BUDGET,
                    cache: bool = True) -> BasisEnumeration:
    """Level-synchronous enumeration; status 'budget_exceeded' keeps partial levels.

    A component that outgrows ``budget.max_class_size`` pairs raises
    BudgetExceeded (with the partial enumeration attached) instead.
    Results are memoized per (presentation, budget) unless ``cache`` is off.
    """
    key = (pres, budget)
    got = _CACHE.get(key)
    if got is None:
        try:
            got = _build_enumeration(pres, budget)
        except BudgetExceeded as exc:
            got = exc.partial
        if cache:
            _CACHE[key] = got
    return got


def dimension(pres: GeneralPresentation, budget: Budget = DEFAULT_BUDGET) -> int:
    e = enumerate_basis(pres, budget)
    if not e.complete:
        raise BudgetExceeded(f"enumeration cut at length {e.at_length}", at_length=e.at_length, partial=e)
    return e.dimension


def clear_cache() -> None:
    _CACHE.clear()
    _REWRITERS.clear()
