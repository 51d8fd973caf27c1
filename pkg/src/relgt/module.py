"""A relation module ``V_G(T(L))`` as a concrete object.

Integrality of a difference of two entries is invariant under integer
shifts, so once the seed is known every realization test and every
signature is a set of integer inequalities in the shift ``z``.
:class:`RelationModule` precomputes those inequalities; the tableau-level
functions in :mod:`relgt.derived` stay the reference definitions and the test
suite checks the two agree.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .derived import build_G_of_L, build_Gbar, down_edges, is_realization
from .errors import DifferentModule, NotARealization
from .graph import TriGraph
from .tableau import Entry, Shift, Tableau, integer_difference, row_slices, vertex_index, vertices


class RelationModule:
    """Basis ``B_G(T(L))`` indexed by shifts from the seed ``T(L)``."""

    def __init__(self, graph: TriGraph, seed: Tableau):
        if graph.n != seed.n:
            raise ValueError("graph and seed have different n")
        if not is_realization(seed, graph):
            raise NotARealization("seed tableau is not a realization of the graph")
        self.graph = graph
        self.seed = seed
        self.n = n = graph.n
        self.gbar = build_Gbar(graph)
        idx = vertex_index(n)
        self.size = len(idx)
        # (ia, ib, d0, strict): need d0 + z[ia] - z[ib] >= 0 (> 0 when strict)
        cons = []
        for a, b in graph.sorted_arrows():
            d0 = integer_difference(seed[a], seed[b])
            cons.append((idx[a], idx[b], d0, a[0] < b[0]))
        self.constraints = tuple(cons)
        gbar_down = down_edges(self.gbar)
        cands = []
        for a in vertices(n):
            for b in vertices(n):
                # pairs fixed by Gbar in either direction never vary
                if a[0] != b[0] + 1 or (a, b) in gbar_down or (b, a) in self.gbar:
                    continue
                d0 = integer_difference(seed[a], seed[b])
                if d0 is not None:
                    cands.append(((a, b), idx[a], idx[b], d0))
        self.down_candidates = tuple(cands)
        # every integral adjacent-row pair; G(L+z) orients each one by a sign
        pairs = []
        for a in vertices(n):
            for b in vertices(n):
                if a[0] == b[0] + 1:
                    d0 = integer_difference(seed[a], seed[b])
                    if d0 is not None:
                        pairs.append((a, b, idx[a], idx[b], d0))
        self.integral_pairs = tuple(pairs)
        top = build_G_of_L(seed)
        self.top_arrows = tuple(arrow for arrow in top.sorted_arrows() if arrow[0][0] == arrow[1][0] == n)
        self.free = tuple(range(n, self.size))

    def __getstate__(self):
        return {"graph": self.graph.to_json(), "seed": self.seed.to_json()}

    def __setstate__(self, state):
        self.__init__(TriGraph.from_json(state["graph"]), Tableau.from_json(state["seed"]))

    # -- basis ----------------------------------------------------------------

    def contains(self, z) -> bool:
        """Is ``T(L + z)`` a realization?"""
        for ia, ib, d0, strict in self.constraints:
            d = d0 + z[ia] - z[ib]
            if d < 0 or (strict and d == 0):
                return False
        return True

    def tableau(self, z) -> Tableau:
        if isinstance(z, Shift):
            z = z.z
        return Tableau(self.n, [e + x if x else e for e, x in zip(self.seed.entries, z)])

    def shift_of(self, t: Tableau) -> tuple:
        d = t.difference(self.seed)
        if d is None:
            raise DifferentModule("DifferentModule: tableau is not an integer shift of the seed")
        return d.z

    def signature_of(self, z) -> frozenset:
        """Down edges of ``G(L+z)`` that are not arrows of ``Gbar``."""
        return frozenset(
            arrow for arrow, ia, ib, d0 in self.down_candidates if d0 + z[ia] - z[ib] >= 0
        )

    def orientation(self, z) -> tuple:
        """For each integral adjacent-row pair, does ``G(L+z)`` point it down?"""
        return tuple(d0 + z[ia] - z[ib] >= 0 for _, _, ia, ib, d0 in self.integral_pairs)

    def graph_of_orientation(self, bits) -> TriGraph:
        """``G(L+z)`` rebuilt from :meth:`orientation`; the top row never moves."""
        arrows = list(self.top_arrows)
        for (a, b, *_), down in zip(self.integral_pairs, bits):
            arrows.append((a, b) if down else (b, a))
        return TriGraph(self.n, arrows)

    def full_down_edges(self, z) -> frozenset:
        return self.signature_of(z) | down_edges(self.gbar)

    # -- windows --------------------------------------------------------------

    def iter_window(self, radius: int, first: int | None = None):
        """Shifts of max-norm <= radius (around the seed) that are realizations.

        Enumerates by backtracking over the free coordinates, pruning with each
        constraint as soon as both its endpoints are assigned.
        """
        free = self.free
        pos = {c: k for k, c in enumerate(free)}
        # constraints checked right after coordinate free[k] is set
        by_level = [[] for _ in free]
        for ia, ib, d0, strict in self.constraints:
            level = max(pos.get(ia, -1), pos.get(ib, -1))
            if level < 0:
                if d0 < 0 or (strict and d0 == 0):
                    return
                continue
            by_level[level].append((ia, ib, d0, strict))
        z = [0] * self.size
        values = range(-radius, radius + 1)
        last = len(free) - 1

        def rec(k):
            c = free[k]
            choices = [first] if (k == 0 and first is not None) else values
            for x in choices:
                z[c] = x
                ok = True
                for ia, ib, d0, strict in by_level[k]:
                    d = d0 + z[ia] - z[ib]
                    if d < 0 or (strict and d == 0):
                        ok = False
                        break
                if not ok:
                    continue
                if k == last:
                    yield tuple(z)
                else:
                    yield from rec(k + 1)
            z[c] = 0

        if not free:
            yield tuple(z)
            return
        yield from rec(0)

    def window(self, radius: int, jobs: int = 1) -> "Window":
        if radius < 0:
            raise ValueError("radius must be non-negative")
        if jobs > 1 and self.free:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = pool.map(_window_part, [(self, radius, x) for x in range(-radius, radius + 1)])
                shifts = [z for part in parts for z in part]
        else:
            shifts = list(self.iter_window(radius))
        return Window(self, radius, shifts)


def _window_part(args):
    module, radius, first = args
    return list(module.iter_window(radius, first))


def random_realization(graph: TriGraph, rng: random.Random, spread: int = 3, denominator: int = 97) -> Tableau:
    """A random realization of ``graph`` with rational entries.

    Each undirected component gets its own class ``a/denominator``; entries
    are that class plus an integer in ``[-spread, spread]``, chosen by
    randomized backtracking against the arrows already decided.
    """
    n = graph.n
    comps = sorted(set(graph.components.values()), key=repr)
    if len(comps) >= denominator:
        raise ValueError("not enough residue classes for the components")
    numer = dict(zip(comps, rng.sample(range(1, denominator), len(comps))))
    order = vertices(n)
    pos = {v: k for k, v in enumerate(order)}
    # arrows checked once both endpoints are placed
    due = [[] for _ in order]
    for a, b in graph.arrows:
        due[max(pos[a], pos[b])].append((a, b))
    values: dict = {}

    def ok(a, b):
        d = values[a] - values[b]
        return d > 0 if a[0] < b[0] else d >= 0

    def rec(k):
        if k == len(order):
            return True
        v = order[k]
        choices = list(range(-spread, spread + 1))
        rng.shuffle(choices)
        for x in choices:
            values[v] = x
            if all(ok(a, b) for a, b in due[k]) and rec(k + 1):
                return True
        del values[v]
        return False

    if not rec(0):
        raise NotARealization(f"no realization with integer parts in [-{spread}, {spread}]")
    entries = [Entry("", Fraction(numer[graph.components[v]], denominator) + values[v]) for v in order]
    return Tableau(n, entries)


@lru_cache(maxsize=256)
def module_for(graph: TriGraph, seed: Tableau) -> RelationModule:
    return RelationModule(graph, seed)


@dataclass
class Window:
    """Finite truncation of the basis: realizations within a max-norm ball."""

    module: RelationModule
    radius: int | None
    shifts: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.shifts)

    def tableaux(self):
        return [self.module.tableau(z) for z in self.shifts]

    def row_content(self, z, rows) -> tuple:
        sl = row_slices(self.module.n)
        return tuple(tuple(z[sl[k]]) for k in rows)
