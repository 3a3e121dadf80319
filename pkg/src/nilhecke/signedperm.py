"""Signed permutations as the hyperoctahedral group B_n.

Generators are indexed 0..n-1 here: s_0 negates the first entry, s_i (i >= 1)
swaps entries i and i+1 (right action on the window).  Generator s_i is
generator i+1 in the repository-wide B_n labeling, where m_12 = 4.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional


@dataclass(frozen=True)
class SignedPermutation:
    window: tuple

    def __post_init__(self):
        w = tuple(int(a) for a in self.window)
        object.__setattr__(self, "window", w)
        if sorted(abs(a) for a in w) != list(range(1, len(w) + 1)):
            raise ValueError(f"{w} is not a signed permutation")

    @property
    def n(self) -> int:
        return len(self.window)

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, a: int) -> int:
        v = self.window[abs(a) - 1]
        return v if a > 0 else -v

    def __str__(self) -> str:
        return "[" + ", ".join(str(a) for a in self.window) + "]"


def apply_right(w: SignedPermutation, i: int) -> SignedPermutation:
    if not 0 <= i < w.n:
        raise IndexError(f"generator index {i} out of range for n={w.n}")
    a = list(w.window)
    if i == 0:
        a[0] = -a[0]
    else:
        a[i - 1], a[i] = a[i], a[i - 1]
    return SignedPermutation(tuple(a))


def is_descent(w: SignedPermutation, i: int) -> bool:
    """True iff l(w s_i) = l(w) - 1."""
    if i == 0:
        return w.window[0] < 0
    return w.window[i - 1] > w.window[i]


def descents(w: SignedPermutation) -> list:
    return [i for i in range(w.n) if is_descent(w, i)]


def reduced_word(w: SignedPermutation, choose=min) -> tuple:
    """One reduced word (0-based generators) by greedy descent removal."""
    letters = []
    while True:
        ds = descents(w)
        if not ds:
            break
        i = choose(ds)
        letters.append(i)
        w = apply_right(w, i)
    return tuple(reversed(letters))


def length(w: SignedPermutation) -> int:
    return len(reduced_word(w))


def from_word(n: int, word) -> SignedPermutation:
    w = SignedPermutation.identity(n)
    for i in word:
        w = apply_right(w, i)
    return w


def to_repo_word(word) -> tuple:
    return tuple(i + 1 for i in word)


def from_repo_word(word) -> tuple:
    return tuple(i - 1 for i in word)


def has_bad_pair(w: SignedPermutation) -> bool:
    a = w.window
    return any(a[j] < a[i] < 0 for i in range(len(a)) for j in range(i + 1, len(a)))


def all_signed_permutations(n: int) -> Iterator[SignedPermutation]:
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(tuple(s * p for s, p in zip(signs, perm)))


def avoiding_formula(n: int) -> int:
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def count_avoiding_bruteforce(n: int) -> int:
    return sum(1 for w in all_signed_permutations(n) if not has_bad_pair(w))


def _decreasing_subsequences(perm) -> int:
    # negative entries must have decreasing absolute values from left to right
    ends = []
    for t, v in enumerate(perm):
        ends.append(1 + sum(ends[s] for s in range(t) if perm[s] > v))
    return 1 + sum(ends)


MAX_EXHAUSTIVE_RANK = 9


def count_avoiding(n: int, max_rank: int = MAX_EXHAUSTIVE_RANK) -> int:
    """Exhaustive count of signed permutations with no bad pair.

    Each permutation of absolute values contributes the number of admissible
    sign choices, i.e. its decreasing subsequences (the empty one included).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_rank:
        raise OverflowError(f"rank {n} exceeds the exhaustive limit {max_rank}; formula gives {avoiding_formula(n)}")
    return sum(_decreasing_subsequences(p) for p in itertools.permutations(range(1, n + 1)))


def bn_basis_crosscheck(n: int, budget=None) -> bool:
    """count_avoiding(n) equals the k=4 truncated nil-Coxeter dimension of B_n."""
    from . import coxsys, wordengine

    pres = coxsys.compile_presentation(coxsys.params(coxsys.StandardFamily("B", n) if n >= 2 else "A1", k=4))
    dim = wordengine.dimension(pres, budget or wordengine.DEFAULT_BUDGET)
    return count_avoiding(n) == dim


def negated_reversal(n: int) -> SignedPermutation:
    """Window (-n, ..., -1): all entries negative, none forming a bad pair."""
    return SignedPermutation(tuple(-a for a in range(n, 0, -1)))


def element_or_none(window) -> Optional[SignedPermutation]:
    try:
        return SignedPermutation(tuple(window))
    except ValueError:
        return None
