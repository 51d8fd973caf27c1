"""Gelfand-Tsetlin tableaux, their entries and integer shift vectors.

Vertices are ``(row, col)`` pairs with ``1 <= col <= row <= n``; row ``n`` is
the top row.  Everything that is stored positionally uses the canonical
vertex order: top row first, columns left to right, i.e. the order in which a
tableau is written as ``(l_n1..l_nn | ... | l_21, l_22 | l_11)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import MalformedInput, TopRowImmutable
from .field import Number, format_rational, parse_rational

Vertex = tuple  # (row, col)


@lru_cache(maxsize=None)
def vertices(n: int) -> tuple[Vertex, ...]:
    """All vertices of the triangle, in canonical order."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple((i, j) for i in range(n, 0, -1) for j in range(1, i + 1))


@lru_cache(maxsize=None)
def vertex_index(n: int) -> dict:
    return {v: k for k, v in enumerate(vertices(n))}


@lru_cache(maxsize=None)
def row_slices(n: int) -> dict[int, slice]:
    idx = vertex_index(n)
    return {i: slice(idx[(i, 1)], idx[(i, 1)] + i) for i in range(1, n + 1)}


def check_vertex(n: int, v: Vertex) -> Vertex:
    i, j = v
    if not (1 <= j <= i <= n):
        raise ValueError(f"vertex {v} outside the triangle for n={n}")
    return (int(i), int(j))


class Entry(NamedTuple):
    """A tableau entry ``sym + q``; ``sym == ""`` is the pure rational class."""

    sym: str
    q: Fraction

    @classmethod
    def of(cls, sym: str = "", q: Number = 0) -> "Entry":
        return cls(sym, Fraction(q))

    def __add__(self, k) -> "Entry":  # type: ignore[override]
        return Entry(self.sym, self.q + k)

    def __str__(self) -> str:
        if not self.sym:
            return str(self.q)
        if not self.q:
            return self.sym
        sign = "+" if self.q > 0 else "-"
        return f"{self.sym}{sign}{abs(self.q)}"

    def to_json(self) -> dict:
        if self.sym:
            return {"sym": self.sym, "q": format_rational(self.q)}
        return {"q": format_rational(self.q)}


def integer_difference(a: Entry, b: Entry) -> int | None:
    """``a - b`` when it is an integer, otherwise ``None``."""
    if a.sym != b.sym:
        return None
    d = a.q - b.q
    if d.denominator != 1:
        return None
    return d.numerator


_ENTRY_RE = re.compile(
    r"^\s*(?:(?P<sym>[A-Za-z_][A-Za-z0-9_]*)\s*(?:(?P<sign>[+-])\s*(?P<off>\d+(?:/\d+)?))?"
    r"|(?P<rat>[+-]?\d+(?:/\d+)?))\s*$"
)


def parse_entry(data) -> Entry:
    """Parse ``{"q": "p/q"}``, ``{"sym": "pi", "q": ...}``, ``"pi+2"``, ``"3/2"`` or an int."""
    if isinstance(data, bool):
        raise MalformedInput(f"bad entry {data!r}")
    if isinstance(data, int):
        return Entry("", Fraction(data))
    if isinstance(data, dict):
        extra = set(data) - {"sym", "q"}
        if extra:
            raise MalformedInput(f"unknown entry keys {sorted(extra)}")
        sym = data.get("sym", "")
        if not isinstance(sym, str):
            raise MalformedInput(f"entry sym must be a string: {data!r}")
        q = data.get("q", "0")
        try:
            q = Fraction(q) if isinstance(q, int) else parse_rational(str(q))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"bad rational in entry {data!r}: {exc}") from None
        return Entry(sym, q)
    if isinstance(data, str):
        m = _ENTRY_RE.match(data)
        if not m:
            raise MalformedInput(f"cannot parse entry {data!r}")
        if m.group("rat") is not None:
            return Entry("", Fraction(m.group("rat")))
        off = Fraction(m.group("off") or 0)
        if m.group("sign") == "-":
            off = -off
        return Entry(m.group("sym"), off)
    raise MalformedInput(f"cannot parse entry {data!r}")


class Shift:
    """An integer vector on the triangle vanishing on the top row."""

    __slots__ = ("n", "z")

    def __init__(self, n: int, z: Sequence[int]):
        z = tuple(int(x) for x in z)
        if len(z) != n * (n + 1) // 2:
            raise ValueError(f"shift for n={n} needs {n * (n + 1) // 2} components")
        if any(z[:n]):
            raise TopRowImmutable("TopRowImmutable: shift must vanish on row n")
        self.n = n
        self.z = z

    @classmethod
    def zero(cls, n: int) -> "Shift":
        return cls(n, (0,) * (n * (n + 1) // 2))

    @classmethod
    def from_mapping(cls, n: int, values: Mapping[Vertex, int]) -> "Shift":
        idx = vertex_index(n)
        z = [0] * len(idx)
        for v, x in values.items():
            z[idx[check_vertex(n, v)]] = x
        return cls(n, z)

    @classmethod
    def parse(cls, n: int, text: str) -> "Shift":
        """Parse ``"0,0,0|1,0|1"`` (rows top to bottom, optional parentheses)."""
        body = text.strip().strip("()")
        rows = [r for r in body.split("|")]
        if len(rows) != n:
            raise MalformedInput(f"shift needs {n} rows separated by '|', got {len(rows)}")
        z: list[int] = []
        for k, r in zip(range(n, 0, -1), rows):
            vals = [x for x in r.replace(" ", "").split(",") if x]
            if len(vals) != k:
                raise MalformedInput(f"row {k} of shift needs {k} values, got {len(vals)}")
            try:
                z.extend(int(x.replace("−", "-")) for x in vals)
            except ValueError:
                raise MalformedInput(f"non-integer shift component in row {k}") from None
        return cls(n, z)

    def __getitem__(self, v: Vertex) -> int:
        return self.z[vertex_index(self.n)[v]]

    def __add__(self, other: "Shift") -> "Shift":
        return Shift(self.n, [a + b for a, b in zip(self.z, other.z)])

    def __sub__(self, other: "Shift") -> "Shift":
        return Shift(self.n, [a - b for a, b in zip(self.z, other.z)])

    def __neg__(self) -> "Shift":
        return Shift(self.n, [-a for a in self.z])

    def __mul__(self, k: int) -> "Shift":
        return Shift(self.n, [a * k for a in self.z])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.z)

    def support(self) -> list[Vertex]:
        return [v for v, x in zip(vertices(self.n), self.z) if x]

    def max_norm(self) -> int:
        return max((abs(x) for x in self.z), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Shift) and self.n == other.n and self.z == other.z

    def __hash__(self) -> int:
        return hash((self.n, self.z))

    def __repr__(self) -> str:
        return f"Shift({self})"

    def __str__(self) -> str:
        rows = row_slices(self.n)
        return "(" + "|".join(
            ",".join(str(x) for x in self.z[rows[k]]) for k in range(self.n, 0, -1)
        ) + ")"


def delta(n: int, k: int, i: int, sign: int = 1) -> Shift:
    """The unit shift ``sign * delta^{ki}``."""
    if k == n:
        raise TopRowImmutable("TopRowImmutable: cannot shift the top row")
    check_vertex(n, (k, i))
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Shift.from_mapping(n, {(k, i): sign})


class Tableau:
    """Triangular array of :class:`Entry` values."""

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n: int, entries: Sequence[Entry]):
        if n < 2:
            raise ValueError("tableaux need n >= 2")
        entries = tuple(entries)
        if len(entries) != n * (n + 1) // 2:
            raise ValueError(f"tableau for n={n} needs {n * (n + 1) // 2} entries")
        self.n = n
        self.entries = entries
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Tableau":
        """Build from rows listed top (row n) to bottom (row 1)."""
        n = len(rows)
        flat = []
        for k, row in zip(range(n, 0, -1), rows):
            if len(row) != k:
                raise MalformedInput(f"row {k} must have {k} entries, got {len(row)}")
            flat.extend(e if isinstance(e, Entry) else parse_entry(e) for e in row)
        return cls(n, flat)

    def __getitem__(self, v: Vertex) -> Entry:
        return self.entries[vertex_index(self.n)[v]]

    def row(self, k: int) -> tuple[Entry, ...]:
        return self.entries[row_slices(self.n)[k]]

    def rows(self) -> list[tuple[Entry, ...]]:
        return [self.row(k) for k in range(self.n, 0, -1)]

    def shift(self, z: Shift) -> "Tableau":
        if z.n != self.n:
            raise ValueError("shift and tableau sizes differ")
        return Tableau(self.n, [e + x if x else e for e, x in zip(self.entries, z.z)])

    def difference(self, other: "Tableau") -> Shift | None:
        """The shift ``z`` with ``other.shift(z) == self``, if one exists."""
        if self.n != other.n:
            return None
        z = []
        for a, b in zip(self.entries, other.entries):
            d = integer_difference(a, b)
            if d is None:
                return None
            z.append(d)
        if any(z[: self.n]):
            return None
        return Shift(self.n, z)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tableau) and self.entries == other.entries

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.entries)
        return self._hash

    def __repr__(self) -> str:
        return "Tableau(" + " | ".join(
            ", ".join(str(e) for e in row) for row in self.rows()
        ) + ")"

    def pretty(self) -> str:
        rows = [[str(e) for e in row] for row in self.rows()]
        w = max(len(s) for r in rows for s in r)
        lines = []
        for k, r in enumerate(rows):
            pad = " " * (k * (w + 1) // 2)
            lines.append(pad + " ".join(s.center(w) for s in r))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [[e.to_json() for e in row] for row in self.rows()]}

    @classmethod
    def from_json(cls, data) -> "Tableau":
        if not isinstance(data, dict) or "rows" not in data:
            raise MalformedInput('tableau JSON needs a "rows" list')
        rows = data["rows"]
        if not isinstance(rows, list):
            raise MalformedInput('"rows" must be a list')
        t = cls.from_rows(rows)
        if "n" in data and data["n"] != t.n:
            raise MalformedInput(f'"n" is {data["n"]} but {t.n} rows were given')
        return t


def character_key(t: Tableau) -> tuple:
    """Per-row sorted entry multisets; a stand-in for the Gelfand-Tsetlin character."""
    return tuple(tuple(sorted(row)) for row in t.rows())


def same_orbit(a: Tableau, b: Tableau) -> bool:
    return a.difference(b) is not None


def rational_tableau(rows: Iterable[Iterable[Number]]) -> Tableau:
    return Tableau.from_rows([[Entry("", Fraction(x)) for x in row] for row in rows])
