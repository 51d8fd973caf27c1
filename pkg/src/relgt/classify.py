"""Submodules and simple subquotients of relation modules.

The submodule generated by a basis tableau ``T(R)`` is spanned by the
tableaux ``T(S)`` whose down-edge set contains that of ``T(R)``; the simple
subquotient through ``T(R)`` is spanned by those with an equal down-edge set.
Everything here is a finite, checkable procedure on those sets.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import prod

from .action import LOWER, RAISE, Generator, ModuleVector, act, generators
from .derived import (
    build_G_of_L,
    build_Gbar,
    down_edges,
    graph_difference,
    is_realization,
    maximal_chains,
    sort_edges,
)
from .errors import DifferentModule, NotARealization, NotMonotone, ZeroShift
from .graph import TriGraph, finite_dimensional_graph, format_arrows, is_generic, validate_relation_graph
from .module import RelationModule, Window, module_for
from .tableau import Shift, Tableau, rational_tableau, vertex_index, vertices

Signature = frozenset


def signature(t: Tableau, g: TriGraph) -> Signature:
    """Down edges of ``G(t)`` minus ``Gbar``: the label of the simple subquotient of ``t``."""
    if not is_realization(t, g):
        raise NotARealization("signature needs a realization of the graph")
    return down_edges(graph_difference(build_G_of_L(t), build_Gbar(g)))


def format_signature(n: int, sig) -> str:
    return format_arrows(sort_edges(n, sig))


def _orbit_check(a: Tableau, b: Tableau, g: TriGraph) -> Shift:
    d = a.difference(b)
    if d is None:
        raise DifferentModule("DifferentModule: tableaux are not in the same Z_0-orbit")
    for t in (a, b):
        if not is_realization(t, g):
            raise NotARealization("tableau is not a realization of the graph")
    return d


def in_submodule_basis(s: Tableau, r: Tableau, g: TriGraph) -> bool:
    """Is ``T(S)`` a basis vector of the submodule generated by ``T(R)``?"""
    _orbit_check(s, r, g)
    return down_edges(build_G_of_L(r)) <= down_edges(build_G_of_L(s))


def same_cyclic(r: Tableau, q: Tableau, g: TriGraph) -> bool:
    _orbit_check(r, q, g)
    return signature(r, g) == signature(q, g)


def is_cyclic_generator(r: Tableau, g: TriGraph) -> bool:
    return not signature(r, g)


def precedes_one(r: Tableau, q: Tableau, g: TriGraph) -> bool:
    """Does some generator send ``T(R)`` to a vector with nonzero ``T(Q)`` coefficient?"""
    d = _orbit_check(q, r, g)
    v = ModuleVector.basis(r)
    return any(not act(gen, v, g).coefficient(d).is_zero() for gen in generators(r.n))


# -- constructive steps ---------------------------------------------------------


def _sandwiched(module: RelationModule, lo, mid, hi) -> bool:
    return module.signature_of(lo) <= module.signature_of(mid) <= module.signature_of(hi)


def _check_monotone(module: RelationModule, z: tuple) -> None:
    if not module.contains(z):
        raise NotMonotone("NotMonotone: T(R+z) is not a realization")
    if not module.signature_of((0,) * module.size) <= module.signature_of(z):
        raise NotMonotone("NotMonotone: E+ of T(R) is not contained in E+ of T(R+z)")


def find_step(r: Tableau, z: Shift, g: TriGraph) -> tuple:
    """A vertex ``(i, j)`` whose whole run ``z_ij * delta^{ij}`` keeps E+ sandwiched.

    Candidates are tried in this order: heads of maximal ``Gbar``-chains with
    positive shift, then every nonzero coordinate in canonical vertex order.
    """
    if z.is_zero():
        raise ZeroShift("ZeroShift: find_step needs a nonzero shift")
    module = module_for(g, r)
    _check_monotone(module, z.z)
    return _find_step(module, z.z)


def _find_step(module: RelationModule, z: tuple) -> tuple:
    n = module.n
    idx = vertex_index(n)
    zs = Shift(n, z)
    heads = []
    for chain in maximal_chains(module.gbar, zs) if any(z) else []:
        if zs[chain[0]] > 0 and chain[0] not in heads:
            heads.append(chain[0])
    heads.sort(key=idx.__getitem__)
    order = heads + [v for v in vertices(n) if z[idx[v]] and v not in heads]
    zero = (0,) * module.size
    for v in order:
        mid = [0] * module.size
        mid[idx[v]] = z[idx[v]]
        mid = tuple(mid)
        if module.contains(mid) and _sandwiched(module, zero, mid, z):
            return v
    raise RuntimeError(f"no admissible coordinate for shift {zs}")


def decompose_translation(r: Tableau, z: Shift, g: TriGraph) -> list[Shift]:
    """Unit steps from ``T(R)`` to ``T(R+z)`` with realizations and monotone E+ throughout."""
    n = r.n
    if z.is_zero():
        return []
    module = module_for(g, r)
    _check_monotone(module, z.z)
    idx = vertex_index(n)
    steps: list[Shift] = []
    base = [0] * module.size
    rest = list(z.z)
    while any(rest):
        sub = module_for(g, module.tableau(tuple(base)))
        v = _find_step(sub, tuple(rest))
        k = idx[v]
        run, sign = abs(rest[k]), (1 if rest[k] > 0 else -1)
        for _ in range(run):
            steps.append(Shift(n, [sign if c == k else 0 for c in range(module.size)]))
        base[k] += rest[k]
        rest[k] = 0
    return steps


def step_generator(step: Shift) -> Generator:
    (v,) = step.support()
    return Generator(RAISE if step[v] > 0 else LOWER, v[0])


# -- window classification -------------------------------------------------------


@dataclass
class LatticeReport:
    """Signatures achieved in a window, with their inclusion order."""

    n: int
    radius: int | None
    window_size: int
    counts: dict = field(default_factory=dict)  # signature -> tableau count
    representatives: dict = field(default_factory=dict)  # signature -> shift tuple
    pairs: tuple = ()  # integral inter-row pairs (upper, lower) outside Gbar

    def inequalities(self, sig) -> list[str]:
        """One condition per integral pair, on entries, in LaTeX notation.

        A pair in ``sig`` is a down edge (upper minus lower in Z>=0); otherwise
        the relation is an up arrow (lower minus upper in Z>0).
        """
        out = []
        for a, b in sort_edges(self.n, self.pairs):
            za, zb = f"z_{{{a[0]}{a[1]}}}", f"z_{{{b[0]}{b[1]}}}"
            if (a, b) in sig:
                out.append(f"{za}-{zb}\\in\\mathbb{{Z}}_{{\\geq 0}}")
            else:
                out.append(f"{zb}-{za}\\in\\mathbb{{Z}}_{{> 0}}")
        return out

    @property
    def signatures(self) -> list:
        idx = vertex_index(self.n)
        return sorted(
            self.counts,
            key=lambda s: (len(s), [(idx[a], idx[b]) for a, b in sort_edges(self.n, s)]),
        )

    def covers(self) -> list[tuple]:
        """Covering pairs ``(lo, hi)`` of the proper-inclusion order."""
        sigs = self.signatures
        out = []
        for lo in sigs:
            for hi in sigs:
                if lo < hi and not any(lo < mid < hi for mid in sigs):
                    out.append((lo, hi))
        return out

    def maximal(self) -> list:
        """Largest E+ sets: the simple submodules."""
        sigs = self.signatures
        return [s for s in sigs if not any(s < t for t in sigs)]

    def minimal(self) -> list:
        sigs = self.signatures
        return [s for s in sigs if not any(t < s for t in sigs)]

    def generators(self) -> list:
        """Signature classes whose tableaux generate the whole module."""
        return [s for s in self.signatures if not s]

    def label(self, sig) -> str:
        return f"S{self.signatures.index(sig)}"

    def render(self) -> str:
        lines = [
            f"window radius {self.radius}: {self.window_size} tableaux, "
            f"{len(self.counts)} signatures",
        ]
        maxi, gens = set(self.maximal()), set(self.generators())
        for s in self.signatures:
            tags = []
            if s in maxi:
                tags.append("simple submodule candidate")
            if s in gens:
                tags.append("generates module")
            tag = f"  [{'; '.join(tags)}]" if tags else ""
            lines.append(f"  {self.label(s)}: {{{format_signature(self.n, s)}}}  count={self.counts[s]}{tag}")
            if self.pairs:
                lines.append("      " + ",  ".join(self.inequalities(s)))
        cov = self.covers()
        if cov:
            lines.append("covering relations (smaller E+ -> larger E+):")
            for lo, hi in cov:
                lines.append(f"  {self.label(lo)} -> {self.label(hi)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        edge = lambda s: [[list(a), list(b)] for a, b in sort_edges(self.n, s)]
        return {
            "n": self.n,
            "radius": self.radius,
            "window_size": self.window_size,
            "nodes": [
                {
                    "id": self.label(s),
                    "edges": edge(s),
                    "count": self.counts[s],
                    "representative": str(Shift(self.n, self.representatives[s])),
                    "inequalities": self.inequalities(s),
                }
                for s in self.signatures
            ],
            "pairs": [[list(a), list(b)] for a, b in sort_edges(self.n, self.pairs)],
            "covers": [[self.label(a), self.label(b)] for a, b in self.covers()],
            "simple_submodules": [self.label(s) for s in self.maximal()],
            "generators": [self.label(s) for s in self.generators()],
        }

    def to_dot(self) -> str:
        lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
        for s in self.signatures:
            text = format_signature(self.n, s).replace(", ", "\\n")
            lines.append(f'  {self.label(s)} [label="{self.label(s)} ({self.counts[s]})\\n{text}"];')
        for lo, hi in self.covers():
            lines.append(f"  {self.label(lo)} -> {self.label(hi)};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "size", "count", "simple_submodule", "generator", "edges"])
        maxi, gens = set(self.maximal()), set(self.generators())
        for s in self.signatures:
            w.writerow([
                self.label(s), len(s), self.counts[s], int(s in maxi), int(s in gens),
                format_signature(self.n, s),
            ])
        return buf.getvalue()

    @classmethod
    def from_json(cls, data: dict) -> "LatticeReport":
        n = data["n"]
        pairs = tuple((tuple(a), tuple(b)) for a, b in data.get("pairs", []))
        rep = cls(n, data["radius"], data["window_size"], pairs=pairs)
        for node in data["nodes"]:
            sig = frozenset((tuple(a), tuple(b)) for a, b in node["edges"])
            rep.counts[sig] = node["count"]
            rep.representatives[sig] = Shift.parse(n, node["representative"]).z
        return rep


def _classify_part(args):
    module, radius, first = args
    counts: Counter = Counter()
    reps = {}
    for z in module.iter_window(radius, first):
        s = module.signature_of(z)
        counts[s] += 1
        if s not in reps:
            reps[s] = z
    return counts, reps


def classify_window(g: TriGraph, seed: Tableau, radius: int, jobs: int = 1) -> LatticeReport:
    module = module_for(g, seed)
    if jobs > 1 and module.free:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_classify_part, [(module, radius, x) for x in range(-radius, radius + 1)]))
    else:
        parts = [_classify_part((module, radius, None))]
    counts: Counter = Counter()
    reps: dict = {}
    for c, r in parts:
        counts.update(c)
        for s, z in r.items():
            reps.setdefault(s, z)
    pairs = tuple(arrow for arrow, *_ in module.down_candidates)
    return LatticeReport(g.n, radius, sum(counts.values()), dict(counts), reps, pairs)


# -- finite-dimensional modules ------------------------------------------------------


def highest_weight_tableau(lam) -> Tableau:
    """Top row ``l_nj = lambda_j - j + 1`` and every lower row its prefix."""
    n = len(lam)
    top = [lam[j] - j for j in range(n)]
    return rational_tableau([top[:k] for k in range(n, 0, -1)])


def _check_dominant(lam) -> tuple:
    lam = tuple(lam)
    if len(lam) < 2:
        raise ValueError("need at least two weight components")
    if any(not isinstance(x, int) for x in lam):
        raise ValueError("weight must be integral")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"weight {lam} is not dominant")
    return lam


def standard_rows(top: list[int]):
    """Yield every list of lower rows (row n-1 down to row 1) interlacing ``top``."""
    if len(top) == 1:
        yield []
        return
    ranges = [range(top[i + 1] + 1, top[i] + 1) for i in range(len(top) - 1)]

    def rec(prefix, i):
        if i == len(ranges):
            for rest in standard_rows(prefix):
                yield [list(prefix)] + rest
            return
        for x in ranges[i]:
            prefix.append(x)
            yield from rec(prefix, i + 1)
            prefix.pop()

    yield from rec([], 0)


def build_finite_dimensional(lam) -> Window:
    """All standard tableaux of the simple module with highest weight ``lam``."""
    lam = _check_dominant(lam)
    n = len(lam)
    seed = highest_weight_tableau(lam)
    module = module_for(finite_dimensional_graph(n), seed)
    top = [lam[j] - j for j in range(n)]
    base = [int(e.q) for e in seed.entries]
    shifts = []
    for lower in standard_rows(top):
        flat = top + [x for row in lower for x in row]
        shifts.append(tuple(a - b for a, b in zip(flat, base)))
    return Window(module, None, shifts)


def weyl_dimension(lam) -> int:
    lam = _check_dominant(lam)
    n = len(lam)
    num = prod(lam[i] - lam[j] + j - i for i, j in combinations(range(n), 2))
    den = prod(j - i for i, j in combinations(range(n), 2))
    return num // den


# -- reduced graphs ------------------------------------------------------------------


def reduced_graph_failures(module: RelationModule, shifts) -> list[tuple]:
    """Shifts whose ``G(L+z) - Gbar`` is not a generic relation graph.

    ``G(L+z)`` depends on ``z`` only through the orientation of the integral
    adjacent-row pairs, so each orientation is validated once.
    """
    seen: dict = {}
    bad = []
    for z in shifts:
        bits = module.orientation(z)
        verdict = seen.get(bits)
        if verdict is None:
            reduced = graph_difference(module.graph_of_orientation(bits), module.gbar)
            report = validate_relation_graph(reduced)
            verdict = "" if report.valid and is_generic(reduced) else (report.render() if not report.valid else "not generic")
            seen[bits] = verdict
        if verdict:
            bad.append((Shift(module.n, z), verdict))
    return bad
