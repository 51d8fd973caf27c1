"""The Gelfand-Tsetlin formulas acting on relation modules.

Coefficients are exact :class:`~relgt.field.Scalar` values built from entry
differences.  A term whose shifted tableau is not a realization of the
relation graph is dropped, exactly as a non-standard tableau is dropped in
the finite-dimensional construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import DegenerateRow, MalformedInput
from .field import Fraction, Poly, Scalar
from .graph import TriGraph
from .module import RelationModule, Window, module_for
from .tableau import Entry, Shift, Tableau, integer_difference, row_slices, vertex_index

RAISE, LOWER, DIAG = "raise", "lower", "diag"


@dataclass(frozen=True)
class Generator:
    """``E_{k,k+1}`` (raise), ``E_{k+1,k}`` (lower) or ``E_{kk}`` (diag)."""

    kind: str
    k: int

    def __post_init__(self):
        if self.kind not in (RAISE, LOWER, DIAG):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("generator index must be positive")

    def check(self, n: int) -> "Generator":
        top = n if self.kind == DIAG else n - 1
        if self.k > top:
            raise ValueError(f"{self} is not a generator of gl({n})")
        return self

    @property
    def indices(self) -> tuple[int, int]:
        k = self.k
        return {RAISE: (k, k + 1), LOWER: (k + 1, k), DIAG: (k, k)}[self.kind]

    def footprint(self, n: int) -> set[int]:
        """Rows whose entries determine this generator's action on a tableau."""
        k = self.k
        rows = {k - 1, k} if self.kind == DIAG else {k - 1, k, k + 1}
        return {r for r in rows if 1 <= r <= n}

    def __str__(self) -> str:
        a, b = self.indices
        return f"E{a}{b}" if a < 10 and b < 10 else f"E{a},{b}"

    @classmethod
    def parse(cls, text: str) -> "Generator":
        m = re.fullmatch(r"\s*E_?\{?(\d+),(\d+)\}?\s*", text) or re.fullmatch(r"\s*E_?(\d)(\d)\s*", text)
        if not m:
            raise MalformedInput(f"cannot parse generator {text!r} (expected e.g. E21 or E_{{2,1}})")
        a, b = int(m.group(1)), int(m.group(2))
        if b == a + 1:
            return cls(RAISE, a)
        if a == b + 1:
            return cls(LOWER, b)
        if a == b:
            return cls(DIAG, a)
        raise MalformedInput(f"only E_(k,k+1), E_(k+1,k), E_(k,k) are supported, got {text!r}")


def generators(n: int) -> list[Generator]:
    gens = [Generator(DIAG, k) for k in range(1, n + 1)]
    gens += [Generator(RAISE, k) for k in range(1, n)]
    gens += [Generator(LOWER, k) for k in range(1, n)]
    return gens


# -- coefficients --------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def entry_difference(a: Entry, b: Entry) -> Poly:
    """``a - b`` as a polynomial in the symbol classes (degree <= 1)."""
    if a.sym == b.sym:
        return Poly.constant(a.q - b.q)
    coeffs = {}
    if a.sym:
        coeffs[a.sym] = 1
    if b.sym:
        coeffs[b.sym] = -1
    return Poly.linear(coeffs, a.q - b.q)


def _ratio(num: list[Poly], den: list[Poly], sign: int) -> Scalar:
    if all(f.is_constant() for f in num) and all(f.is_constant() for f in den):
        q = Fraction(sign)
        for f in num:
            q *= f.constant_value()
        for f in den:
            q /= f.constant_value()
        return Scalar.from_rational(q)
    s = Scalar.fraction(num, den)
    return -s if sign < 0 else s


def _row_denominators(row: Sequence[Entry], i: int, k: int) -> list[Poly]:
    den = []
    for j, e in enumerate(row):
        if j == i:
            continue
        f = entry_difference(row[i], e)
        if f.is_zero():
            raise DegenerateRow(f"DegenerateRow: entries ({k},{i + 1}) and ({k},{j + 1}) coincide")
        den.append(f)
    return den


@lru_cache(maxsize=1 << 16)
def raising_coefficient_rows(row_k: tuple, row_up: tuple, i: int, k: int) -> Scalar:
    num = [entry_difference(row_k[i], e) for e in row_up]
    return _ratio(num, _row_denominators(row_k, i, k), -1)


@lru_cache(maxsize=1 << 16)
def lowering_coefficient_rows(row_k: tuple, row_down: tuple, i: int, k: int) -> Scalar:
    num = [entry_difference(row_k[i], e) for e in row_down]
    return _ratio(num, _row_denominators(row_k, i, k), 1)


def raising_coefficient(t: Tableau, k: int, i: int) -> Scalar:
    """Coefficient of ``T(L + delta^{ki})`` in ``E_{k,k+1} T(L)``."""
    return raising_coefficient_rows(t.row(k), t.row(k + 1), i - 1, k)


def lowering_coefficient(t: Tableau, k: int, i: int) -> Scalar:
    """Coefficient of ``T(L - delta^{ki})`` in ``E_{k+1,k} T(L)``."""
    below = t.row(k - 1) if k > 1 else ()
    return lowering_coefficient_rows(t.row(k), below, i - 1, k)


def weight(t: Tableau, k: int) -> Scalar:
    """Eigenvalue of ``E_{kk}``: ``k - 1 + sum(row k) - sum(row k-1)``."""
    total = Poly.constant(k - 1)
    for e in t.row(k):
        total = total + entry_difference(e, Entry("", Fraction(0)))
    if k > 1:
        for e in t.row(k - 1):
            total = total - entry_difference(e, Entry("", Fraction(0)))
    return Scalar(total)


# -- vectors -------------------------------------------------------------------


class ModuleVector:
    """Finite linear combination of basis tableaux, keyed by shift from ``seed``."""

    __slots__ = ("seed", "terms")

    def __init__(self, seed: Tableau, terms: dict | None = None):
        self.seed = seed
        self.terms = {z: c for z, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def basis(cls, seed: Tableau, z=None) -> "ModuleVector":
        if z is None:
            z = (0,) * len(seed.entries)
        elif isinstance(z, Shift):
            z = z.z
        return cls(seed, {tuple(z): Scalar.from_rational(1)})

    def _check(self, other: "ModuleVector") -> None:
        if other.seed != self.seed:
            raise ValueError("vectors live in modules with different seeds")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._check(other)
        out = dict(self.terms)
        for z, c in other.terms.items():
            out[z] = out[z] + c if z in out else c
        return ModuleVector(self.seed, out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scale(-1)

    def scale(self, s) -> "ModuleVector":
        return ModuleVector(self.seed, {z: c * s for z, c in self.terms.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, z) -> Scalar:
        if isinstance(z, Shift):
            z = z.z
        return self.terms.get(tuple(z), Scalar.from_rational(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleVector) and (self - other).is_zero()

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        idx_sorted = sorted(self.terms)
        return [(z, self.terms[z]) for z in idx_sorted]

    def to_json(self) -> dict:
        n = self.seed.n
        return {
            "seed": self.seed.to_json(),
            "terms": [{"shift": str(Shift(n, z)), "coefficient": c.to_json()} for z, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "ModuleVector":
        try:
            seed = Tableau.from_json(data["seed"])
            terms = {Shift.parse(seed.n, t["shift"]).z: Scalar.from_json(t["coefficient"]) for t in data["terms"]}
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad module vector: {exc}") from exc
        return cls(seed, terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        n = self.seed.n
        lines = []
        for z, c in self.items():
            t = self.seed.shift(Shift(n, z))
            lines.append(f"({c}) * T{Shift(n, z)}  = {t!r}")
        return "\n".join(lines)


def _module(ctx, seed: Tableau) -> RelationModule:
    if isinstance(ctx, RelationModule):
        if ctx.seed == seed:
            return ctx
        ctx = ctx.graph
    if not isinstance(ctx, TriGraph):
        raise TypeError("context must be a TriGraph or RelationModule")
    return module_for(ctx, seed)


def act(gen: Generator, v: ModuleVector, ctx) -> ModuleVector:
    """Apply one generator to ``v`` by the Gelfand-Tsetlin formulas."""
    module = _module(ctx, v.seed)
    n = module.n
    gen.check(n)
    k = gen.k
    out: dict = {}
    if gen.kind == DIAG:
        for z, c in v.terms.items():
            out[z] = c * weight(module.tableau(z), k)
        return ModuleVector(v.seed, out)
    idx = vertex_index(n)
    step = 1 if gen.kind == RAISE else -1
    sl = row_slices(n)
    for z, c in v.terms.items():
        t = module.tableau(z)
        row_k = t.entries[sl[k]]
        other = t.entries[sl[k + 1]] if step > 0 else (t.entries[sl[k - 1]] if k > 1 else ())
        for i in range(k):
            target = list(z)
            target[idx[(k, i + 1)]] += step
            target = tuple(target)
            if not module.contains(target):
                continue
            if step > 0:
                coef = raising_coefficient_rows(row_k, other, i, k)
            else:
                coef = lowering_coefficient_rows(row_k, other, i, k)
            if coef.is_zero():
                continue
            term = c * coef
            out[target] = out[target] + term if target in out else term
    return ModuleVector(v.seed, out)


def act_word(word: Iterable[Generator], v: ModuleVector, ctx) -> ModuleVector:
    """Apply ``word[0]`` first, then ``word[1]``, and so on."""
    for g in word:
        v = act(g, v, ctx)
    return v


# -- Lie algebra relations -----------------------------------------------------


@dataclass(frozen=True)
class Relation:
    """``sum(coef * word)`` that must act as zero; words apply left to right."""

    name: str
    terms: tuple

    def footprint(self, n: int) -> tuple[int, ...]:
        rows = set()
        for _, word in self.terms:
            for g in word:
                rows |= g.footprint(n)
        return tuple(sorted(rows))


def _commutator(a: Generator, b: Generator) -> list:
    # [a, b] v = a(b v) - b(a v)
    return [(1, (b, a)), (-1, (a, b))]


def lie_relations(n: int) -> list[Relation]:
    E = Generator
    rels = []
    for k in range(1, n):
        up, down = E(RAISE, k), E(LOWER, k)
        terms = _commutator(up, down) + [(-1, (E(DIAG, k),)), (1, (E(DIAG, k + 1),))]
        rels.append(Relation(f"[{up},{down}] = {E(DIAG, k)} - {E(DIAG, k + 1)}", tuple(terms)))
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            a, b = E(DIAG, k), E(DIAG, l)
            rels.append(Relation(f"[{a},{b}] = 0", tuple(_commutator(a, b))))
    for k in range(1, n + 1):
        for l in range(1, n):
            c = (k == l) - (k == l + 1)
            for kind, sign in ((RAISE, 1), (LOWER, -1)):
                a, b = E(DIAG, k), E(kind, l)
                terms = _commutator(a, b) + ([(-sign * c, (b,))] if c else [])
                rhs = f"{sign * c}*{b}" if c else "0"
                rels.append(Relation(f"[{a},{b}] = {rhs}", tuple(terms)))
    for k in range(1, n):
        for l in range(k + 2, n):
            for kind in (RAISE, LOWER):
                a, b = E(kind, k), E(kind, l)
                rels.append(Relation(f"[{a},{b}] = 0", tuple(_commutator(a, b))))
    return rels


@dataclass
class AxiomReport:
    tableaux: int = 0
    relations: int = 0
    symbolic_classes: int = 0
    concrete_evaluations: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def evaluations(self) -> int:
        return self.symbolic_classes + self.concrete_evaluations

    def to_json(self) -> dict:
        return {
            "tableaux": self.tableaux,
            "relations": self.relations,
            "symbolic_classes": self.symbolic_classes,
            "concrete_evaluations": self.concrete_evaluations,
            "ok": self.ok,
            "failures": [{"shift": str(z), "relation": name, "residual": res} for z, name, res in self.failures],
        }

    @classmethod
    def from_json(cls, data) -> "AxiomReport":
        rep = cls(data["tableaux"], data["relations"], data["symbolic_classes"], data["concrete_evaluations"])
        for f in data["failures"]:
            rep.failures.append((f["shift"], f["relation"], f["residual"]))
        return rep

    def render(self) -> str:
        head = (
            f"checked {self.relations} relations on {self.tableaux} tableaux "
            f"({self.symbolic_classes} symbolic classes, "
            f"{self.concrete_evaluations} concrete local evaluations): "
        )
        if self.ok:
            return head + "all residuals are zero"
        lines = [head + f"{len(self.failures)} nonzero residuals"]
        for z, name, residual in self.failures[:20]:
            lines.append(f"  at shift {z}: {name}: residual {residual}")
        return "\n".join(lines)


Action = Callable[[Generator, ModuleVector, object], ModuleVector]


def relation_residual(rel: Relation, module: RelationModule, z, action: Action = act) -> dict:
    """Residual of ``rel`` applied to the basis vector at shift ``z``, keyed by relative shift."""
    v = ModuleVector.basis(module.seed, z)
    total = ModuleVector(module.seed)
    for coef, word in rel.terms:
        w = v
        for g in word:
            w = action(g, w, module)
        total = total + w.scale(coef)
    return {tuple(a - b for a, b in zip(t, z)): c for t, c in total.terms.items()}


class _Chart(RelationModule):
    """The neighbourhood of one tableau with every free entry a fresh symbol.

    Realization tests are answered by the concrete module at ``base``, so
    which terms get dropped is exactly what it is there.
    """

    def __init__(self, module: RelationModule, base: tuple):
        n = module.n
        top = module.seed.row(n)
        rows = [list(top)] + [
            [Entry(f"@{k}.{i}", Fraction(0)) for i in range(1, k + 1)] for k in range(n - 1, 0, -1)
        ]
        self.n, self.size = n, module.size
        self.graph = module.graph
        self.seed = Tableau.from_rows(rows)
        self._base_module, self._base = module, base

    def contains(self, z) -> bool:
        return self._base_module.contains(tuple(a + b for a, b in zip(self._base, z)))


def _generator_offsets(g: Generator, n: int) -> list[dict]:
    if g.kind == DIAG:
        return [{}]
    idx = vertex_index(n)
    step = 1 if g.kind == RAISE else -1
    return [{idx[(g.k, i)]: step} for i in range(1, g.k + 1)]


@dataclass
class _Plan:
    """What decides the shape of one relation's evaluation near a tableau."""

    relation: Relation
    slices: list
    checks: tuple  # (ia, ib, c, lo): target realized iff c + z[ia] - z[ib] >= lo
    risky: tuple  # same-row integral pairs (ia, ib, d0) whose difference feeds a denominator


def _plan(rel: Relation, module: RelationModule) -> _Plan:
    n = module.n
    idx = vertex_index(n)
    sl = row_slices(n)
    offsets = []
    modified_rows = set()
    for _, word in rel.terms:
        reach = [{}]
        for g in word:
            if g.kind != DIAG:
                modified_rows.add(g.k)
            reach = [{**o, **{i: o.get(i, 0) + d for i, d in step.items()}} for o in reach for step in _generator_offsets(g, n)]
            offsets.extend(reach)
    checks = set()
    for o in offsets:
        supp = {i for i, d in o.items() if d}
        for ia, ib, d0, strict in module.constraints:
            if ia in supp or ib in supp:
                checks.add((ia, ib, d0 + o.get(ia, 0) - o.get(ib, 0), 1 if strict else 0))
    risky = []
    for k in sorted(modified_rows):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                d0 = integer_difference(module.seed[(k, i)], module.seed[(k, j)])
                if d0 is not None:
                    risky.append((idx[(k, i)], idx[(k, j)], d0))
    fp = rel.footprint(n)
    return _Plan(rel, [sl[k] for k in fp], tuple(sorted(checks)), tuple(risky))


def _render_residual(n: int, res: dict) -> dict:
    return {(k if isinstance(k, str) else str(Shift(n, k))): str(c) for k, c in res.items()}


def verify_axioms(ctx, window, action: Action = act) -> AxiomReport:
    """Check the gl(n) commutation relations exactly on every window tableau.

    Near a tableau ``T`` the evaluation of a relation is fixed by which
    nearby shifts are realizations; given that pattern, the residual at ``T``
    is the specialization of the residual computed with symbolic entries,
    provided no row-difference denominator can vanish.  So each tableau is
    classified by that pattern, each class is evaluated once symbolically,
    and a tableau falls back to a concrete evaluation (memoised on the rows
    the relation reads) when a denominator might vanish or its class residual
    is not identically zero.
    """
    if isinstance(window, Window):
        module, shifts = window.module, window.shifts
    else:
        tabs = list(window)
        if not tabs:
            return AxiomReport()
        module = _module(ctx, tabs[0])
        shifts = [module.shift_of(t) for t in tabs]
    n = module.n
    plans = [_plan(r, module) for r in lie_relations(n)]
    report = AxiomReport(tableaux=len(shifts), relations=len(plans))
    symbolic: dict = {}
    concrete: dict = {}
    for z in shifts:
        for ri, plan in enumerate(plans):
            safe = True
            for ia, ib, d0 in plan.risky:
                if -2 <= d0 + z[ia] - z[ib] <= 2:
                    safe = False
                    break
            if safe:
                key = (ri, tuple([c + z[ia] - z[ib] >= lo for ia, ib, c, lo in plan.checks]))
                zero = symbolic.get(key)
                if zero is None:
                    zero = not relation_residual(plan.relation, _Chart(module, z), (0,) * module.size, action)
                    symbolic[key] = zero
                    report.symbolic_classes += 1
                if zero:
                    continue
            key = (ri,) + tuple(tuple(z[s]) for s in plan.slices)
            res = concrete.get(key)
            if res is None:
                try:
                    res = relation_residual(plan.relation, module, z, action)
                except DegenerateRow as exc:
                    res = {"error": str(exc)}
                concrete[key] = res
                report.concrete_evaluations += 1
            if res:
                report.failures.append((Shift(n, z), plan.relation.name, _render_residual(n, res)))
    return report
