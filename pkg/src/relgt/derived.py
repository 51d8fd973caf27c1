"""Graphs derived from a tableau and a relation graph.

``G(L)`` records every integral order relation actually present in a tableau;
``Gbar`` is the part of those relations that a relation graph forces on every
one of its realizations.  Their difference carries the down-edge set that
labels simple subquotients.
"""

from __future__ import annotations

from typing import Iterable

from .errors import ZeroShift
from .graph import Arrow, TriGraph, arrow_key
from .tableau import Shift, Tableau, Vertex, integer_difference, vertex_index, vertices


def _arrow_holds(t: Tableau, a: Vertex, b: Vertex) -> bool:
    d = integer_difference(t[a], t[b])
    if d is None:
        return False
    return d > 0 if a[0] < b[0] else d >= 0


def satisfies(t: Tableau, g: TriGraph) -> bool:
    """Every down/horizontal arrow has difference in Z>=0, every up arrow in Z>0."""
    return all(_arrow_holds(t, a, b) for a, b in g.arrows)


def is_realization(t: Tableau, g: TriGraph) -> bool:
    if t.n != g.n or not satisfies(t, g):
        return False
    comp = g.components
    for k in range(1, t.n):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                if integer_difference(t[(k, i)], t[(k, j)]) is not None and comp[(k, i)] != comp[(k, j)]:
                    return False
    return True


def build_G_of_L(t: Tableau) -> TriGraph:
    """The graph of integral relations present in ``t``.

    In the top row two equal entries would give arrows both ways; only the
    left-to-right one is kept so that the result never has a 2-cycle.
    """
    n = t.n
    arrows = []
    for a in vertices(n):
        for b in vertices(n):
            if a == b:
                continue
            if a[0] == b[0] + 1:
                ok = _geq(t, a, b, strict=False)
            elif a[0] == b[0] - 1:
                ok = _geq(t, a, b, strict=True)
            elif a[0] == b[0] == n:
                d = integer_difference(t[a], t[b])
                ok = d is not None and (d > 0 or (d == 0 and a[1] < b[1]))
            else:
                ok = False
            if ok:
                arrows.append((a, b))
    return TriGraph(n, arrows)


def _geq(t: Tableau, a: Vertex, b: Vertex, strict: bool) -> bool:
    d = integer_difference(t[a], t[b])
    return d is not None and (d > 0 if strict else d >= 0)


def build_Gbar(g: TriGraph) -> TriGraph:
    """Path closure of ``g`` restricted to adjacent rows and to top-row pairs.

    A top-row pair is only joined when ``g`` has a directed path between
    them; every all-pairs reading of that clause contradicts the worked
    examples.
    """
    n = g.n
    arrows = []
    for a in vertices(n):
        for b in g.closure[a]:
            if abs(a[0] - b[0]) == 1 or (a[0] == b[0] == n and a != b):
                arrows.append((a, b))
    return TriGraph(n, arrows)


def graph_difference(a: TriGraph, b: TriGraph) -> TriGraph:
    if a.n != b.n:
        raise ValueError("graphs on different vertex sets")
    return TriGraph(a.n, a.arrows - b.arrows)


def down_edges(g: TriGraph) -> frozenset:
    return frozenset((a, b) for a, b in g.arrows if a[0] == b[0] + 1)


def incident_vertices(h: TriGraph) -> frozenset:
    return frozenset(v for arrow in h.arrows for v in arrow)


def sort_edges(n: int, edges: Iterable[Arrow]) -> list[Arrow]:
    return sorted(edges, key=arrow_key(n))


def maximal_chains(g: TriGraph, z: Shift, include_isolated: bool = False) -> list[tuple[Vertex, ...]]:
    """Maximal oriented paths of ``g`` through vertices where ``z`` is nonzero.

    Chains are drawn from the vertices incident to some arrow of ``g``; with
    ``include_isolated`` every nonzero vertex of the triangle is eligible, so a
    vertex with no arrows at all becomes a singleton chain.
    """
    if z.is_zero():
        raise ZeroShift("ZeroShift: maximal chains need a nonzero shift")
    pool = set(vertices(g.n)) if include_isolated else incident_vertices(g)
    live = {v for v in pool if z[v] != 0}
    succ = {v: [w for w in g.successors.get(v, ()) if w in live] for v in live}
    has_pred = {w for v in live for w in succ[v]}
    idx = vertex_index(g.n)
    chains = []

    def walk(path):
        if len(path) > len(live):
            raise ValueError("graph has an oriented cycle")
        nxt = succ[path[-1]]
        if not nxt:
            chains.append(tuple(path))
            return
        for w in nxt:
            walk(path + [w])

    for v in sorted(live - has_pred, key=idx.__getitem__):
        walk([v])
    chains.sort(key=lambda c: [idx[v] for v in c])
    return chains
