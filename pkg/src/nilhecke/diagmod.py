"""Labeled digraph modules: relation checking and infinite-rank certificates.

A diagram describes a module with basis {(node, r) : r >= 0}.  A generator
moves (node, r) along its unique outgoing edge to (target, r) or, on a
"plus" edge, to (target, r + 1); without such an edge it acts as zero.
Words act right to left.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import ceil
from pathlib import Path
from typing import Optional

from .coxsys import GeneralPresentation, System, presentation_of, system_from_dict, system_to_dict


class MalformedDiagram(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    gen: int
    plus: bool = False


@dataclass
class ModuleDiagram:
    nodes: list
    start: str
    edges: list

    def __post_init__(self):
        names = set(self.nodes)
        if len(names) != len(self.nodes):
            raise MalformedDiagram("duplicate node names")
        if self.start not in names:
            raise MalformedDiagram(f"start node {self.start!r} is not a node")
        self.out = {}
        for e in self.edges:
            if e.src not in names or e.dst not in names:
                raise MalformedDiagram(f"edge {e} has an unknown endpoint")
            if (e.src, e.gen) in self.out:
                raise MalformedDiagram(f"two edges leave {e.src!r} with generator {e.gen}")
            self.out[(e.src, e.gen)] = (e.dst, 1 if e.plus else 0)

    def to_json(self) -> dict:
        return {
            "nodes": list(self.nodes),
            "start": self.start,
            "edges": [{"from": e.src, "to": e.dst, "gen": e.gen, "plus": e.plus} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ModuleDiagram":
        try:
            edges = [Edge(str(e["from"]), str(e["to"]), int(e["gen"]), bool(e.get("plus", False)))
                     for e in data["edges"]]
            return cls([str(v) for v in data["nodes"]], str(data["start"]), edges)
        except (KeyError, TypeError) as exc:
            raise MalformedDiagram(f"bad diagram JSON: {exc}") from exc

    def generators(self) -> set:
        return {e.gen for e in self.edges}


def load_diagram(path) -> ModuleDiagram:
    try:
        return ModuleDiagram.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
    except json.JSONDecodeError as exc:
        raise MalformedDiagram(f"{path}: invalid JSON ({exc})") from exc


def act(diagram: ModuleDiagram, state, word) -> Optional[tuple]:
    node, grade = state
    for g in reversed(tuple(word)):
        step = diagram.out.get((node, g))
        if step is None:
            return None
        node, grade = step[0], grade + step[1]
    return node, grade


@dataclass
class VerificationReport:
    relations_ok: bool
    is_witness: bool
    failures: list = field(default_factory=list)  # (node, relation, lhs outcome, rhs outcome)
    details: str = ""

    def to_json(self) -> dict:
        return {"relations_ok": self.relations_ok, "is_witness": self.is_witness}


def _reachable(diagram: ModuleDiagram, src: str) -> set:
    seen = {src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for e in diagram.edges:
            if e.src == v and e.dst not in seen:
                seen.add(e.dst)
                queue.append(e.dst)
    return seen


def _plus_cycle_edges(diagram: ModuleDiagram, within: set) -> list:
    return [e for e in diagram.edges if e.plus and e.src in within and e.src in _reachable(diagram, e.dst)]


def verify(diagram: ModuleDiagram, pres: GeneralPresentation) -> VerificationReport:
    bad_gens = sorted(g for g in diagram.generators() if not 1 <= g <= pres.generator_count)
    if bad_gens:
        raise MalformedDiagram(f"generators {bad_gens} outside 1..{pres.generator_count}")
    failures = []
    for v in diagram.nodes:
        s = (v, 0)
        for lhs, rhs in pres.kept_relations:
            a, b = act(diagram, s, lhs), act(diagram, s, rhs)
            if a != b:
                failures.append((v, (lhs, rhs), a, b))
        for w in pres.killed_words:
            a = act(diagram, s, w)
            if a is not None:
                failures.append((v, (w, ()), a, None))
    reach = _reachable(diagram, diagram.start)
    all_reached = reach == set(diagram.nodes)
    cycles = _plus_cycle_edges(diagram, reach)
    ok = not failures
    details = []
    if not all_reached:
        details.append(f"unreachable nodes: {sorted(set(diagram.nodes) - reach)}")
    if not cycles:
        details.append("no plus-cycle reachable from start")
    return VerificationReport(ok, ok and all_reached and bool(cycles), failures, "; ".join(details))


def _shortest_path(diagram: ModuleDiagram, src: str, targets: set) -> Optional[list]:
    """Edges of a shortest path from src to any node in targets."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v in targets:
            path = []
            while prev[v] is not None:
                e = prev[v]
                path.append(e)
                v = e.src
            return path[::-1]
        for e in diagram.edges:
            if e.src == v and e.dst not in prev:
                prev[e.dst] = e
                queue.append(e.dst)
    return None


def growth_certificate(diagram: ModuleDiagram, n: int, pres: Optional[GeneralPresentation] = None) -> tuple:
    """Word of length >= n acting nonzero on (start, 0).

    Built from a path to a cycle through a plus-edge, then the cycle repeated;
    the returned word is in algebra order (its last letter acts first).
    """
    reach = _reachable(diagram, diagram.start)
    cycles = _plus_cycle_edges(diagram, reach)
    if pres is not None and not verify(diagram, pres).is_witness:
        raise ValueError("diagram is not a witness")
    if not cycles:
        raise ValueError("diagram has no plus-cycle reachable from its start")
    if n <= 0:
        return ()
    best = None
    for e in cycles:
        back = _shortest_path(diagram, e.dst, {e.src})
        cycle = [e] + back
        on_cycle = {c.src for c in cycle}
        lead = _shortest_path(diagram, diagram.start, on_cycle)
        cand = (len(lead), len(cycle), lead, cycle)
        if best is None or cand[:2] < best[:2]:
            best = cand
    _, _, lead, cycle = best
    entry = lead[-1].dst if lead else diagram.start
    k = next(t for t, c in enumerate(cycle) if c.src == entry)
    cycle = cycle[k:] + cycle[:k]
    reps = max(1, ceil(max(n - len(lead), 0) / len(cycle)))
    applied = [e.gen for e in lead] + [e.gen for e in cycle] * reps
    return tuple(reversed(applied))


# ---------------------------------------------------------------- figures

def _diagram(nodes, start, edges) -> ModuleDiagram:
    return ModuleDiagram(list(nodes), start, [Edge(a, b, g, p) for a, b, g, p in edges])


def fig2a(m: int) -> ModuleDiagram:
    """Path alpha - beta_1 - ... - beta_(m-1) - gamma; generators 1, 2..m, m+1."""
    alpha, gamma = 1, m + 1
    B = [f"B{j}" for j in range(1, m + 1)]
    Bp = [f"B'{j}" for j in range(1, m + 1)]
    edges = [("A", B[0], alpha, False)]
    edges += [(B[j - 1], B[j], 1 + j, False) for j in range(1, m)]
    edges += [(B[-1], "C", gamma, False), ("C", Bp[-1], gamma, False)]
    edges += [(Bp[j], Bp[j - 1], 1 + j, False) for j in range(1, m)]
    edges += [(Bp[0], "A", alpha, True)]
    return _diagram(["A"] + B + ["C"] + Bp, "A", edges)


def fig2b(m: int) -> ModuleDiagram:
    """Path alpha - beta_1 - ... - beta_(m-1) = gamma with the last edge labeled 4."""
    alpha, gamma = 1, m + 1
    B = [f"B{j}" for j in range(1, m + 1)]
    Bp = [f"B'{j}" for j in range(1, m + 1)]
    edges = [("A", B[0], alpha, False)]
    edges += [(B[j - 1], B[j], 1 + j, False) for j in range(1, m)]
    edges += [(B[-1], Bp[-1], gamma, False)]
    edges += [(Bp[j], Bp[j - 1], 1 + j, False) for j in range(1, m)]
    edges += [(Bp[0], "A", alpha, True)]
    return _diagram(["A"] + B + Bp, "A", edges)


def triangle_cycle() -> ModuleDiagram:
    edges = [("A1", "A2", 1, False), ("A2", "A3", 2, False), ("A3", "A1", 3, True)]
    return _diagram(["A1", "A2", "A3"], "A1", edges)


def fig6(m: int) -> ModuleDiagram:
    """Tree alpha1, alpha2 - beta_1 - ... - beta_(m-1) - gamma1, gamma2.

    Generators: alpha1 = 1, alpha2 = 2, beta_j = 2 + j, gamma1 = m + 2, gamma2 = m + 3.
    """
    a1, a2, g1, g2 = 1, 2, m + 2, m + 3
    B = [f"B{j}" for j in range(1, m + 1)]
    Bp = [f"B'{j}" for j in range(1, m + 1)]
    edges = [("A", B[0], a2, False), ("B", B[0], a1, False)]
    edges += [(B[j - 1], B[j], 2 + j, False) for j in range(1, m)]
    edges += [(B[-1], "D", g1, False), (B[-1], "C", g2, False),
              ("C", Bp[-1], g1, False), ("D", Bp[-1], g2, False)]
    edges += [(Bp[j], Bp[j - 1], 2 + j, False) for j in range(1, m)]
    edges += [(Bp[0], "B", a2, True), (Bp[0], "A", a1, True)]
    return _diagram(["A", "B"] + B + ["C", "D"] + Bp, "A", edges)


def figs3(m: int) -> ModuleDiagram:
    """alpha - beta_1 - ... - beta_(m-1) - gamma1, gamma2 with d_alpha = 3.

    Generators: alpha = 1, beta_j = 1 + j, gamma1 = m + 1, gamma2 = m + 2.
    """
    alpha, g1, g2 = 1, m + 1, m + 2
    B = [f"B{j}" for j in range(1, m + 1)]
    Bp = [f"B'{j}" for j in range(1, m + 1)]
    edges = [("A", B[0], alpha, False)]
    edges += [(B[j - 1], B[j], 1 + j, False) for j in range(1, m)]
    edges += [(B[-1], "B", g1, False), ("B", Bp[-1], g2, False),
              (B[-1], "C", g2, False), ("C", Bp[-1], g1, False)]
    edges += [(Bp[j], Bp[j - 1], 1 + j, False) for j in range(1, m)]
    edges += [(Bp[0], "A", alpha, True)]
    return _diagram(["A", "B"] + B + ["C"] + Bp, "A", edges)


F5_EDGES = [
    (1, 2, 1, True), (2, 3, 2, False), (3, 4, 3, False), (4, 5, 4, False), (5, 6, 5, False),
    (5, 16, 2, False), (6, 7, 2, False), (7, 8, 3, False), (8, 9, 4, False), (8, 18, 2, False),
    (9, 10, 2, False), (10, 11, 3, False), (10, 19, 1, False), (11, 1, 2, False), (11, 12, 1, False),
    (12, 13, 2, True), (13, 3, 1, False), (13, 14, 3, False), (14, 4, 1, False), (14, 15, 4, False),
    (15, 5, 1, False), (15, 20, 5, False), (16, 7, 5, False), (16, 17, 3, False), (17, 8, 5, False),
    (18, 21, 1, False), (18, 10, 4, False), (19, 12, 3, False), (20, 6, 1, False), (21, 19, 4, False),
]

# The drawn F5 diagram breaks two commutations: s2 s4 at node 4 (via 5 -> 16)
# and s2 s5 at node 17 (via 8 -> 18).  Closing each commutation square, and
# the one square the second fix opens, adds nodes 22-24 and nothing else.
F5_COMPLETION = [
    (4, 22, 2, False), (22, 16, 4, False),
    (17, 23, 2, False), (23, 18, 5, False),
    (23, 24, 1, False), (24, 21, 5, False),
]

H5_EDGES = [
    (1, 2, 1, False), (2, 3, 2, False), (3, 4, 1, False), (3, 11, 3, False), (4, 5, 3, False),
    (5, 6, 2, False), (5, 13, 4, False), (6, 7, 4, False), (7, 8, 5, False), (7, 16, 3, False),
    (8, 9, 3, False), (9, 10, 4, False), (10, 1, 2, True), (11, 5, 1, False), (11, 12, 4, False),
    (12, 13, 1, False), (12, 14, 5, False), (13, 7, 2, False), (13, 15, 5, False), (14, 15, 1, False),
    (15, 8, 2, False), (16, 9, 5, False),
]


def numbered(count: int, edges) -> ModuleDiagram:
    nodes = [str(v) for v in range(1, count + 1)]
    return _diagram(nodes, "1", [(str(a), str(b), g, p) for a, b, g, p in edges])


def g29_diagram() -> ModuleDiagram:
    # generators s, t, u, v = 1, 2, 3, 4
    return _diagram(["A", "B", "C"], "A", [("A", "B", 2, False), ("B", "C", 3, False), ("C", "A", 4, True)])


@dataclass
class BundledFigure:
    id: str
    system: System
    diagram: ModuleDiagram
    diagram_file: str = ""
    system_file: str = ""

    @property
    def generator_count(self) -> int:
        return presentation_of(self.system).generator_count

    @property
    def presentation(self) -> GeneralPresentation:
        return presentation_of(self.system)


def _figure_dir():
    return resources.files("nilhecke") / "figures"


@lru_cache(maxsize=1)
def _load_bundled() -> tuple:
    base = _figure_dir()
    manifest = json.loads((base / "manifest.json").read_text(encoding="utf-8"))
    out = []
    for entry in manifest["figures"]:
        diagram = ModuleDiagram.from_json(json.loads((base / entry["module"]).read_text(encoding="utf-8")))
        system = system_from_dict(json.loads((base / entry["system"]).read_text(encoding="utf-8")))
        out.append(BundledFigure(entry["id"], system, diagram, entry["module"], entry["system"]))
    return tuple(out)


def bundled_figures() -> list:
    return list(_load_bundled())


def figure(fig_id: str) -> BundledFigure:
    for f in _load_bundled():
        if f.id == fig_id:
            return f
    raise KeyError(fig_id)


_FILE_STEMS = {"G29module": "g29"}


def export_figure(fig: BundledFigure, directory) -> dict:
    directory = Path(directory)
    stem = _FILE_STEMS.get(fig.id) or fig.id.replace("(", "_").replace(")", "").replace("=", "")
    mod_name = f"{stem}.json"
    sys_name = f"{stem}.system.json"
    (directory / mod_name).write_text(json.dumps(fig.diagram.to_json(), indent=1, sort_keys=True) + "\n")
    (directory / sys_name).write_text(json.dumps(system_to_dict(fig.system), indent=1, sort_keys=True) + "\n")
    return {"id": fig.id, "module": mod_name, "system": sys_name}


def _path_labels(labels) -> dict:
    return {(a, a + 1): m for a, m in enumerate(labels, start=1)}


def figure_definitions() -> list:
    """Figures built from their constructors with the parameters they witness."""
    from .coxsys import ComplexSystem, CoxeterMatrix, Cutoff, NilHeckeParams, params

    def sysm(n, labels, d, k):
        return NilHeckeParams(CoxeterMatrix.from_edges(n, labels), tuple(d), Cutoff(k))

    return [
        BundledFigure("fig2a(m=2)", sysm(3, _path_labels([3, 3]), (3, 2, 3), 2), fig2a(2)),
        BundledFigure("fig2a(m=3)", sysm(4, _path_labels([3, 3, 3]), (3, 2, 2, 3), 2), fig2a(3)),
        BundledFigure("fig2b(m=1)", sysm(2, _path_labels([4]), (3, 2), 2), fig2b(1)),
        BundledFigure("fig2b(m=2)", sysm(3, _path_labels([3, 4]), (3, 2, 2), 2), fig2b(2)),
        BundledFigure("triangle", sysm(3, {(1, 2): 3, (2, 3): 3, (1, 3): 3}, (3, 2, 2), 3), triangle_cycle()),
        BundledFigure("fig6(m=2)", sysm(5, {(1, 3): 3, (2, 3): 3, (3, 4): 3, (3, 5): 3}, (3, 2, 2, 2, 2), 3),
                      fig6(2)),
        BundledFigure("fig6(m=3)", sysm(6, {(1, 3): 3, (2, 3): 3, (3, 4): 3, (4, 5): 3, (4, 6): 3},
                                        (3, 2, 2, 2, 2, 2), 3), fig6(3)),
        BundledFigure("figS3(m=1)", sysm(3, {(1, 2): 3, (1, 3): 3}, (3, 2, 2), 3), figs3(1)),
        BundledFigure("figS3(m=2)", sysm(4, {(1, 2): 3, (2, 3): 3, (2, 4): 3}, (3, 2, 2, 2), 3), figs3(2)),
        BundledFigure("F5module", params("F5", k=4), numbered(24, F5_EDGES + F5_COMPLETION)),
        BundledFigure("H5module", params("H5", k=4), numbered(16, H5_EDGES)),
        BundledFigure("G29module", ComplexSystem("G29", (2, 2, 2, 2), 3), g29_diagram()),
    ]


def drawn_transcriptions() -> list:
    """Figures exactly as drawn, before any repair; kept for comparison, not bundled as witnesses."""
    from .coxsys import params

    return [BundledFigure("F5module-as-drawn", params("F5", k=4), numbered(21, F5_EDGES))]
