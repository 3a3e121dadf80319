"""Coxeter matrices, standard families, truncations and compiled presentations."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

INF = math.inf

Word = tuple  # tuple[int, ...], generators are 1-indexed


class ParameterError(ValueError):
    """Invalid family, matrix, exponent or truncation data."""


class DisconnectedSystem(ValueError):
    """Raised when an operation needs a connected Coxeter graph."""


def _check_label(m) -> None:
    if m is INF:
        return
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ParameterError(f"off-diagonal Coxeter label must be an integer >= 2 or infinity, got {m!r}")


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(INF if (e is None or e == INF) else e for e in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise ParameterError("rank must be positive")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ParameterError("Coxeter matrix must be square")
            if row[i] != 1:
                raise ParameterError("diagonal entries must be 1")
            for j, m in enumerate(row):
                if i == j:
                    continue
                _check_label(m)
                if rows[j][i] != m:
                    raise ParameterError("Coxeter matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def m(self, i: int, j: int):
        """Label of the pair (i, j), 1-indexed."""
        return self.entries[i - 1][j - 1]

    def pairs(self):
        n = self.rank
        return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]

    def edges(self):
        """Pairs joined in the Coxeter graph (label >= 3, including infinity)."""
        return [(i, j) for i, j in self.pairs() if self.m(i, j) != 2]

    def is_connected(self) -> bool:
        return len(components(self)) == 1

    def relabel(self, mapping: dict) -> "CoxeterMatrix":
        """Matrix whose generator mapping[i] plays the role of generator i here."""
        n = self.rank
        new = [[1] * n for _ in range(n)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                new[mapping[i] - 1][mapping[j] - 1] = self.m(i, j)
        return CoxeterMatrix(tuple(tuple(r) for r in new))

    def submatrix(self, gens: Sequence[int]) -> "CoxeterMatrix":
        return CoxeterMatrix(tuple(tuple(self.m(i, j) for j in gens) for i in gens))

    def to_json(self):
        return [["infinity" if e == INF else e for e in row] for row in self.entries]

    @classmethod
    def from_rows(cls, rows) -> "CoxeterMatrix":
        def conv(e):
            if e is None or (isinstance(e, str) and e.lower() in ("inf", "infinity", "∞")):
                return INF
            if isinstance(e, float) and math.isinf(e):
                return INF
            return int(e)

        return cls(tuple(tuple(conv(e) for e in row) for row in rows))

    @classmethod
    def from_edges(cls, n: int, labels: dict) -> "CoxeterMatrix":
        """Build from {(i, j): m}; unlisted pairs commute."""
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), m in labels.items():
            rows[i - 1][j - 1] = m
            rows[j - 1][i - 1] = m
        return cls(tuple(tuple(r) for r in rows))


def components(matrix: CoxeterMatrix) -> list:
    """Connected components of the Coxeter graph as sorted generator lists."""
    n = matrix.rank
    seen = set()
    out = []
    for s in range(1, n + 1):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        k = 0
        while k < len(comp):
            a = comp[k]
            k += 1
            for b in range(1, n + 1):
                if b not in seen and b != a and matrix.m(a, b) != 2:
                    seen.add(b)
                    comp.append(b)
        out.append(sorted(comp))
    return out


@dataclass(frozen=True)
class Cutoff:
    k: Union[int, float]

    def __post_init__(self):
        if not (self.k == INF or (isinstance(self.k, int) and self.k >= 1)):
            raise ParameterError(f"cutoff must be a positive integer or infinity, got {self.k!r}")


@dataclass(frozen=True)
class ExplicitJ0:
    pairs: frozenset

    def __post_init__(self):
        norm = frozenset(tuple(sorted(p)) for p in self.pairs)
        for p in norm:
            if len(p) != 2 or p[0] == p[1]:
                raise ParameterError(f"J0 entries must be pairs of distinct generators, got {p!r}")
        object.__setattr__(self, "pairs", norm)


Truncation = Union[Cutoff, ExplicitJ0]


@dataclass(frozen=True)
class NilHeckeParams:
    matrix: CoxeterMatrix
    d: tuple
    truncation: Truncation = field(default_factory=lambda: Cutoff(INF))

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if len(self.d) != self.matrix.rank:
            raise ParameterError("exponent vector length must equal the rank")
        if any(x < 2 for x in self.d):
            raise ParameterError("every exponent d_i must be at least 2")
        if isinstance(self.truncation, ExplicitJ0):
            for i, j in self.truncation.pairs:
                if not (1 <= i <= self.matrix.rank and 1 <= j <= self.matrix.rank):
                    raise ParameterError(f"J0 pair {(i, j)} out of range")
                if self.matrix.m(i, j) == INF:
                    raise ParameterError(f"J0 pair {(i, j)} has infinite label")

    @property
    def rank(self) -> int:
        return self.matrix.rank

    def j0(self) -> frozenset:
        return kept_pairs(self.matrix, self.truncation)


def kept_pairs(matrix: CoxeterMatrix, truncation: Truncation) -> frozenset:
    if isinstance(truncation, ExplicitJ0):
        return truncation.pairs
    return frozenset((i, j) for i, j in matrix.pairs() if matrix.m(i, j) < truncation.k)


@dataclass(frozen=True)
class GeneralPresentation:
    generator_count: int
    d: tuple
    kept_relations: tuple  # ((lhs, rhs), ...)
    killed_words: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(self.d))
        object.__setattr__(self, "kept_relations", tuple((tuple(a), tuple(b)) for a, b in self.kept_relations))
        object.__setattr__(self, "killed_words", tuple(tuple(w) for w in self.killed_words))
        n = self.generator_count
        if len(self.d) != n:
            raise ParameterError("exponent vector length must equal the generator count")
        killed = set(self.killed_words)
        for i in range(1, n + 1):
            if (i,) * self.d[i - 1] not in killed:
                raise ParameterError(f"generator power for {i} missing from killed words")
        for lhs, rhs in self.kept_relations:
            if len(lhs) != len(rhs) or len(lhs) < 2:
                raise ParameterError("kept relations must have equal sides of length >= 2")
            if lhs in killed or rhs in killed:
                raise ParameterError("a kept relation side is also killed")
        for w in list(killed) + [x for r in self.kept_relations for x in r]:
            if any(not (1 <= a <= n) for a in w):
                raise ParameterError(f"word {w} uses an unknown generator")


def alt(i: int, j: int, m: int) -> Word:
    return tuple(i if t % 2 == 0 else j for t in range(m))


def braid_relations(matrix: CoxeterMatrix) -> list:
    """[((i, j), iji..., jij...)] for every pair with finite label."""
    out = []
    for i, j in matrix.pairs():
        m = matrix.m(i, j)
        if m == INF:
            continue
        out.append(((i, j), alt(i, j, m), alt(j, i, m)))
    return out


def compile_presentation(params: NilHeckeParams) -> GeneralPresentation:
    j0 = params.j0()
    kept, killed = [], [(i + 1,) * di for i, di in enumerate(params.d)]
    for pair, lhs, rhs in braid_relations(params.matrix):
        if pair in j0:
            kept.append((lhs, rhs))
        else:
            killed.extend([lhs, rhs])
    return GeneralPresentation(params.rank, params.d, tuple(kept), tuple(killed))


# ---------------------------------------------------------------- families

@dataclass(frozen=True, order=True)
class StandardFamily:
    letter: str
    rank: int
    m: Optional[int] = None  # dihedral label for I2

    def __post_init__(self):
        lo = {"A": 1, "B": 2, "D": 4, "E": 6, "F": 4, "H": 3}
        if self.letter == "I2":
            if self.rank != 2 or self.m is None or self.m < 3:
                raise ParameterError("I2(m) needs m >= 3")
        elif self.letter in lo:
            if self.rank < lo[self.letter]:
                raise ParameterError(f"{self.letter}_{self.rank} out of range")
            if self.m is not None:
                raise ParameterError("only I2 carries a label")
        else:
            raise ParameterError(f"unknown family {self.letter!r}")

    def __str__(self) -> str:
        if self.letter == "I2":
            return f"I2({self.m})"
        return f"{self.letter}{self.rank}"

    @property
    def is_finite_group(self) -> bool:
        L, n = self.letter, self.rank
        return (L in "ABD" or L == "I2" or (L == "E" and n <= 8)
                or (L == "F" and n == 4) or (L == "H" and n <= 4))

    @classmethod
    def parse(cls, text: str) -> "StandardFamily":
        t = text.strip().replace("_", "")
        if t.upper().startswith("I2"):
            inner = t[2:].strip("()")
            return cls("I2", 2, int(inner))
        return cls(t[0].upper(), int(t[1:]))


def standard_system(family: StandardFamily) -> CoxeterMatrix:
    L, n = family.letter, family.rank
    if L == "I2":
        return CoxeterMatrix.from_edges(2, {(1, 2): family.m})
    labels = {}
    if L == "E":
        chain = [1, 2] + list(range(4, n + 1))
        for a, b in zip(chain, chain[1:]):
            labels[(a, b)] = 3
        labels[(3, 4)] = 3
    elif L == "D":
        for a in range(1, n - 1):
            labels[(a, a + 1)] = 3
        labels[(n - 2, n)] = 3
    else:
        for a in range(1, n):
            labels[(a, a + 1)] = 3
        if L == "B":
            labels[(1, 2)] = 4
        elif L == "F":
            labels[(2, 3)] = 4
        elif L == "H":
            labels[(1, 2)] = 5
    return CoxeterMatrix.from_edges(n, labels)


def _path_order(nodes, adj):
    ends = [v for v in nodes if len(adj[v]) <= 1]
    start = min(ends)
    order, prev = [start], None
    while len(order) < len(nodes):
        cur = order[-1]
        nxt = [v for v in adj[cur] if v != prev]
        prev = cur
        order.append(nxt[0])
    return order


def recognize_type(matrix: CoxeterMatrix):
    """(StandardFamily, mapping) or None.

    ``mapping[i]`` is the standard label of input generator i, so that
    ``matrix.relabel(mapping) == standard_system(family)``.
    Raises DisconnectedSystem for a disconnected graph.
    """
    n = matrix.rank
    if len(components(matrix)) > 1:
        raise DisconnectedSystem("Coxeter graph is disconnected")
    if n == 1:
        return StandardFamily("A", 1), {1: 1}
    edges = matrix.edges()
    if any(matrix.m(i, j) == INF for i, j in edges) or len(edges) != n - 1:
        return None
    adj = {v: [] for v in range(1, n + 1)}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    degs = {v: len(adj[v]) for v in adj}
    branch = [v for v in adj if degs[v] == 3]
    if any(x > 3 for x in degs.values()) or len(branch) > 1:
        return None
    if not branch:
        order = _path_order(list(adj), adj)
        labels = [matrix.m(a, b) for a, b in zip(order, order[1:])]
        special = [p for p, m in enumerate(labels) if m != 3]
        if not special:
            return StandardFamily("A", n), {v: k + 1 for k, v in enumerate(order)}
        if len(special) > 1:
            return None
        p = special[0]
        m = labels[p]
        if n == 2:
            fam = StandardFamily("B", 2) if m == 4 else StandardFamily("I2", 2, m)
            return fam, {order[0]: 1, order[1]: 2}
        a, b = p + 1, n - p - 1  # nodes on each side of the special edge
        if m == 4 and min(a, b) == 1:
            letter, want = "B", 1
        elif m == 4 and min(a, b) == 2:
            letter, want = "F", 2
        elif m == 5 and min(a, b) == 1:
            letter, want = "H", 1
        else:
            return None
        if a != want:
            order = order[::-1]
        return StandardFamily(letter, n), {v: k + 1 for k, v in enumerate(order)}
    if any(matrix.m(i, j) != 3 for i, j in edges):
        return None
    c = branch[0]
    arms = []
    for nb in sorted(adj[c]):
        arm, prev = [nb], c
        while degs[arm[-1]] == 2:
            nxt = [v for v in adj[arm[-1]] if v != prev][0]
            prev = arm[-1]
            arm.append(nxt)
        arms.append(arm)  # ordered outward from the branch node
    arms.sort(key=lambda a: (len(a), min(a)))
    lens = tuple(len(a) for a in arms)
    mapping = {c: None}
    if lens[0] == 1 and lens[1] == 1:
        # D_n: long arm is 1..n-3 read inward, branch n-2, short arms n-1, n
        long_arm = arms[2]
        for k, v in enumerate(reversed(long_arm)):
            mapping[v] = k + 1
        mapping[c] = n - 2
        mapping[arms[0][0]] = n - 1
        mapping[arms[1][0]] = n
        return StandardFamily("D", n), mapping
    if lens[0] == 1 and lens[1] == 2 and lens[2] >= 2:
        # E_n: branch 4, short arm 3, two-arm 2,1 outward, long arm 5..n outward
        mapping[c] = 4
        mapping[arms[0][0]] = 3
        mapping[arms[1][0]], mapping[arms[1][1]] = 2, 1
        for k, v in enumerate(arms[2]):
            mapping[v] = 5 + k
        return StandardFamily("E", n), mapping
    return None


# ---------------------------------------------------------------- G29

# s, t, u, v are generators 1..4
G29_RELATIONS = (
    ((1, 4), (4, 1)),
    ((1, 3), (3, 1)),
    ((1, 2, 1), (2, 1, 2)),
    ((4, 2, 4), (2, 4, 2)),
    ((3, 4, 3), (4, 3, 4)),
    ((2, 3, 2, 3), (3, 2, 3, 2)),
    ((4, 2, 3, 4, 2, 3), (2, 3, 4, 2, 3, 4)),
)


def g29_presentation(d: Sequence[int] = (2, 2, 2, 2), k=INF) -> GeneralPresentation:
    d = tuple(int(x) for x in d)
    if len(d) != 4 or any(x < 2 for x in d):
        raise ParameterError("G29 needs four exponents, each >= 2")
    if k != INF and k < 3:
        raise ParameterError("G29 truncation requires k >= 3")
    kept, killed = [], [(i + 1,) * di for i, di in enumerate(d)]
    for lhs, rhs in G29_RELATIONS:
        if len(lhs) < k:
            kept.append((lhs, rhs))
        else:
            killed.extend([lhs, rhs])
    return GeneralPresentation(4, d, tuple(kept), tuple(killed), name="G29")


# ---------------------------------------------------------------- system files

@dataclass(frozen=True)
class ComplexSystem:
    """Presentation-only system (currently G29) described by name."""
    name: str
    d: tuple
    k: Union[int, float]

    def presentation(self) -> GeneralPresentation:
        if self.name.upper() != "G29":
            raise ParameterError(f"unknown complex reflection group {self.name!r}")
        return g29_presentation(self.d, self.k)


System = Union[NilHeckeParams, ComplexSystem]


def _parse_k(v):
    if isinstance(v, str):
        if v.lower() in ("inf", "infinity", "∞"):
            return INF
        raise ParameterError(f"bad cutoff {v!r}")
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParameterError(f"bad cutoff {v!r}")
    return v


def system_from_dict(data: dict) -> System:
    if not isinstance(data, dict):
        raise ParameterError("system description must be a JSON object")
    trunc = data.get("truncation", {"k": "infinity"})
    if "complex" in data:
        d = tuple(data.get("d", (2, 2, 2, 2)))
        return ComplexSystem(str(data["complex"]), d, _parse_k(trunc.get("k", "infinity")))
    cox = data.get("coxeter")
    if not isinstance(cox, dict):
        raise ParameterError("missing 'coxeter' object")
    if "standard" in cox:
        st = cox["standard"]
        fam = str(st["family"])
        if fam == "I2":
            family = StandardFamily("I2", 2, int(st["m"]))
        else:
            family = StandardFamily(fam, int(st["rank"]))
        matrix = standard_system(family)
    elif "matrix" in cox:
        matrix = CoxeterMatrix.from_rows(cox["matrix"])
    else:
        raise ParameterError("'coxeter' needs 'standard' or 'matrix'")
    d = tuple(data.get("d", [2] * matrix.rank))
    if "J0" in trunc:
        truncation = ExplicitJ0(frozenset(tuple(p) for p in trunc["J0"]))
    elif "k" in trunc:
        truncation = Cutoff(_parse_k(trunc["k"]))
    else:
        raise ParameterError("truncation needs 'k' or 'J0'")
    return NilHeckeParams(matrix, d, truncation)


def load_system(path) -> System:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{path}: invalid JSON ({exc})") from exc
    return system_from_dict(data)


def system_to_dict(system: System) -> dict:
    if isinstance(system, ComplexSystem):
        k = "infinity" if system.k == INF else system.k
        return {"complex": system.name, "d": list(system.d), "truncation": {"k": k}}
    t = system.truncation
    trunc = ({"J0": sorted(list(p) for p in t.pairs)} if isinstance(t, ExplicitJ0)
             else {"k": "infinity" if t.k == INF else t.k})
    return {"coxeter": {"matrix": system.matrix.to_json()}, "d": list(system.d), "truncation": trunc}


def presentation_of(system: System) -> GeneralPresentation:
    if isinstance(system, ComplexSystem):
        return system.presentation()
    return compile_presentation(system)


def params(family: Union[str, StandardFamily], d: Optional[Iterable[int]] = None, k=INF) -> NilHeckeParams:
    """Shorthand: params("F4", k=4), params("A3", d=(3, 2, 2), k=3)."""
    fam = StandardFamily.parse(family) if isinstance(family, str) else family
    matrix = standard_system(fam)
    d = tuple(d) if d is not None else (2,) * matrix.rank
    return NilHeckeParams(matrix, d, Cutoff(k))
