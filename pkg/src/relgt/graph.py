"""Directed graphs on the triangular vertex set and relation-graph validation."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import MalformedInput
from .tableau import Vertex, check_vertex, vertex_index, vertices

Arrow = tuple  # (source vertex, target vertex)


def arrow_key(n: int):
    idx = vertex_index(n)
    return lambda a: (idx[a[0]], idx[a[1]])


class TriGraph:
    """Directed graph on the vertices ``(i, j)``, ``1 <= j <= i <= n``."""

    def __init__(self, n: int, arrows: Iterable[Arrow] = ()):
        if n < 2:
            raise ValueError("graphs need n >= 2")
        seen = set()
        for a, b in arrows:
            a, b = check_vertex(n, a), check_vertex(n, b)
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if (a, b) in seen:
                raise ValueError(f"duplicate arrow {a}->{b}")
            seen.add((a, b))
        self.n = n
        self.arrows = frozenset(seen)

    def sorted_arrows(self) -> list[Arrow]:
        return sorted(self.arrows, key=arrow_key(self.n))

    @cached_property
    def successors(self) -> dict:
        out = defaultdict(list)
        for a, b in self.sorted_arrows():
            out[a].append(b)
        return dict(out)

    @cached_property
    def predecessors(self) -> dict:
        out = defaultdict(list)
        for a, b in self.sorted_arrows():
            out[b].append(a)
        return dict(out)

    @cached_property
    def closure(self) -> dict:
        """``closure[v]`` is the set of vertices reachable from ``v`` by a path of length >= 1."""
        out = {}
        for v in vertices(self.n):
            seen = set()
            todo = deque(self.successors.get(v, ()))
            while todo:
                w = todo.popleft()
                if w in seen:
                    continue
                seen.add(w)
                todo.extend(self.successors.get(w, ()))
            out[v] = frozenset(seen)
        return out

    @cached_property
    def components(self) -> dict:
        """Map vertex -> id of its component in the underlying undirected graph."""
        nbrs = defaultdict(set)
        for a, b in self.arrows:
            nbrs[a].add(b)
            nbrs[b].add(a)
        comp = {}
        for v in vertices(self.n):
            if v in comp:
                continue
            comp[v] = v
            todo = [v]
            while todo:
                w = todo.pop()
                for u in nbrs[w]:
                    if u not in comp:
                        comp[u] = v
                        todo.append(u)
        return comp

    def __eq__(self, other) -> bool:
        return isinstance(other, TriGraph) and self.n == other.n and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.n, self.arrows))

    def __len__(self) -> int:
        return len(self.arrows)

    def __contains__(self, arrow) -> bool:
        return arrow in self.arrows

    def __repr__(self) -> str:
        return f"TriGraph(n={self.n}, arrows=[{format_arrows(self.sorted_arrows())}])"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "arrows": [{"from": list(a), "to": list(b)} for a, b in self.sorted_arrows()],
        }

    @classmethod
    def from_json(cls, data) -> "TriGraph":
        if not isinstance(data, dict) or "n" not in data:
            raise MalformedInput('graph JSON needs "n" and "arrows"')
        n = data["n"]
        if not isinstance(n, int) or n < 2:
            raise MalformedInput(f'"n" must be an integer >= 2, got {n!r}')
        arrows = []
        for k, item in enumerate(data.get("arrows", [])):
            try:
                a, b = tuple(item["from"]), tuple(item["to"])
                if len(a) != 2 or len(b) != 2:
                    raise ValueError
                arrows.append(((int(a[0]), int(a[1])), (int(b[0]), int(b[1]))))
            except (KeyError, TypeError, ValueError):
                raise MalformedInput(f"arrow #{k} must look like {{\"from\": [i,j], \"to\": [r,s]}}") from None
        try:
            return cls(n, arrows)
        except ValueError as exc:
            raise MalformedInput(str(exc)) from None

    def to_dot(self, name: str = "G", highlight: Iterable[Arrow] = ()) -> str:
        """DOT text with vertices pinned in the triangular layout (use ``neato -n``)."""
        marked = set(highlight)
        lines = [f"digraph {name} {{", "  node [shape=plaintext];"]
        for i, j in vertices(self.n):
            x = (2 * j - i + self.n) * 40
            y = i * 60
            lines.append(f'  "{i},{j}" [label="({i},{j})", pos="{x},{y}!"];')
        for a, b in self.sorted_arrows():
            style = " [color=red]" if (a, b) in marked else ""
            lines.append(f'  "{a[0]},{a[1]}" -> "{b[0]},{b[1]}"{style};')
        lines.append("}")
        return "\n".join(lines) + "\n"


def format_vertex(v: Vertex) -> str:
    return f"({v[0]},{v[1]})"


def format_arrows(arrows: Iterable[Arrow]) -> str:
    return ", ".join(f"{format_vertex(a)}->{format_vertex(b)}" for a, b in arrows)


def reachable(g: TriGraph, a: Vertex, b: Vertex) -> bool:
    """Is there a directed path of length >= 1 from ``a`` to ``b``?"""
    return b in g.closure[a]


def adjoining_pairs(g: TriGraph) -> set:
    pairs = set()
    for k in range(2, g.n):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                if not reachable(g, (k, i), (k, j)):
                    continue
                if any(
                    reachable(g, (k, i), (k, t)) or reachable(g, (k, t), (k, j))
                    for t in range(i + 1, j)
                ):
                    continue
                pairs.add(((k, i), (k, j)))
    return pairs


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, tag: str, *witness: Vertex) -> None:
        self.violations.append((tag, tuple(witness)))

    def render(self) -> str:
        if self.valid:
            return "valid relation graph"
        lines = ["invalid relation graph:"]
        for tag, witness in self.violations:
            lines.append(f"  condition {tag}: " + " ".join(format_vertex(v) for v in witness))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"condition": tag, "witness": [list(v) for v in w]} for tag, w in self.violations
            ],
        }

    @classmethod
    def from_json(cls, data) -> "ValidationReport":
        rep = cls()
        for item in data["violations"]:
            rep.add(item["condition"], *(tuple(v) for v in item["witness"]))
        return rep


def _has_g1(g: TriGraph, k: int, i: int, j: int) -> bool:
    up = any(((k, i), (k + 1, p)) in g and ((k + 1, p), (k, j)) in g for p in range(1, k + 2))
    down = any(((k, i), (k - 1, q)) in g and ((k - 1, q), (k, j)) in g for q in range(1, k))
    return up and down


def _has_g2(g: TriGraph, k: int, i: int, j: int) -> bool:
    return any(
        ((k, i), (k + 1, s)) in g and ((k + 1, t), (k, j)) in g
        for s in range(1, k + 2)
        for t in range(s + 1, k + 2)
    )


def validate_relation_graph(g: TriGraph) -> ValidationReport:
    """Check conditions I-VI, reporting every witness found."""
    n = g.n
    report = ValidationReport()
    for a, b in g.sorted_arrows():
        if not (abs(a[0] - b[0]) == 1 or a[0] == b[0] == n):
            report.add("I", a, b)
    for k in range(1, n + 1):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                if reachable(g, (k, j), (k, i)):
                    report.add("II", (k, j), (k, i))
    for v in vertices(n):
        if reachable(g, v, v):
            report.add("III", v)
    comp = g.components
    for k in range(1, n):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                a, b = (k, i), (k, j)
                if comp[a] == comp[b] and not (reachable(g, a, b) or reachable(g, b, a)):
                    report.add("IV", a, b)
    for k in range(1, n):
        down = [(a, b) for a, b in g.sorted_arrows() if a[0] == k + 1 and b[0] == k]
        for (a1, b1) in down:
            for (a2, b2) in down:
                # (k+1,r)->(k,j) and (k+1,s)->(k,i) with r<s, i<j
                if a1[1] < a2[1] and b2[1] < b1[1]:
                    report.add("V", a1, b1, a2, b2)
    for (a, b) in sorted(adjoining_pairs(g)):
        k, i, j = a[0], a[1], b[1]
        if not (_has_g1(g, k, i, j) or _has_g2(g, k, i, j)):
            report.add("VI", a, b)
    return report


def is_relation_graph(g: TriGraph) -> bool:
    return validate_relation_graph(g).valid


def is_generic(g: TriGraph) -> bool:
    return not adjoining_pairs(g)


# -- standard families ------------------------------------------------------


def finite_dimensional_graph(n: int) -> TriGraph:
    """Arrows encoding the betweenness (standardness) conditions."""
    arrows = []
    for k in range(1, n):
        for i in range(1, k + 1):
            arrows.append(((k + 1, i), (k, i)))
            arrows.append(((k, i), (k + 1, i + 1)))
    return TriGraph(n, arrows)


def generic_graph(n: int) -> TriGraph:
    return TriGraph(n, ())


def verma_graph(n: int) -> TriGraph:
    return TriGraph(n, [((k + 1, i), (k, i)) for k in range(1, n) for i in range(1, k + 1)])
