"""Exact arithmetic in Q(t_1, ..., t_m).

Rationals are :class:`fractions.Fraction`.  :class:`Poly` is a sparse
multivariate polynomial with rational coefficients whose indeterminates are
named by strings (``"pi"``, ``"sqrt2"``, ...).  :class:`Scalar` is a rational
function whose denominator is kept as a multiset of monic linear forms, which
is all the Gelfand-Tsetlin formulas ever divide by.  Keeping the denominator
factored means cancellation is exact trial division and no multivariate gcd is
ever needed.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

__all__ = [
    "Fraction",
    "Poly",
    "Scalar",
    "Number",
    "format_rational",
    "parse_rational",
]

Number = Union[int, Fraction]

# A monomial is a tuple of (variable, exponent) pairs sorted by variable name;
# the empty tuple is the constant monomial.
Monomial = tuple

_ONE_MONO: Monomial = ()


def format_rational(q: Number) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational literal must be decimal-free: {text!r}")
    return Fraction(text)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Sparse polynomial ``{monomial: Fraction}`` with no zero coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls._raw({_ONE_MONO: Fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str) -> "Poly":
        if not name:
            raise ValueError("variable name must be non-empty")
        return cls._raw({((name, 1),): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Mapping[str, Number], const: Number = 0) -> "Poly":
        terms = {((v, 1),): Fraction(c) for v, c in coeffs.items() if c}
        if const:
            terms[_ONE_MONO] = Fraction(const)
        return cls._raw(terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ONE_MONO, Fraction(0))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def variables(self) -> list[str]:
        return sorted({v for m in self.terms for v, _ in m})

    def degree_in(self, var: str) -> int:
        return max((e for m in self.terms for v, e in m if v == var), default=0)

    def leading_variable(self) -> str:
        vs = self.variables()
        if not vs:
            raise ValueError("constant polynomial has no leading variable")
        return vs[0]

    def sorted_terms(self, variables: list[str] | None = None) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms as (exponent vector, coefficient), graded-lex descending."""
        vs = self.variables() if variables is None else variables
        idx = {v: i for i, v in enumerate(vs)}
        out = []
        for m, c in self.terms.items():
            ev = [0] * len(vs)
            for v, e in m:
                ev[idx[v]] = e
            out.append((tuple(ev), c))
        out.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return out

    def canonical(self) -> tuple:
        return tuple(sorted(self.terms.items()))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.constant(other) - self

    def __mul__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            if not c:
                return Poly._raw({})
            return Poly._raw({m: v * c for m, v in self.terms.items()})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def coefficients_in(self, var: str) -> dict[int, "Poly"]:
        """Split as sum_d a_d * var**d with a_d free of ``var``."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            d = 0
            rest = []
            for v, e in m:
                if v == var:
                    d = e
                else:
                    rest.append((v, e))
            out.setdefault(d, {})[tuple(rest)] = c
        return {d: Poly._raw(t) for d, t in out.items()}

    def divmod_linear(self, f: "Poly") -> tuple["Poly", "Poly"]:
        """Divide by a linear form ``f = c*x + r`` (x its leading variable).

        Synthetic division in ``x`` with coefficients in the remaining
        variables; the remainder is zero exactly when ``f`` divides ``self``.
        """
        if f.degree() != 1:
            raise ValueError("divisor must be a linear form")
        x = f.leading_variable()
        parts = f.coefficients_in(x)
        lead = parts[1].constant_value()
        rest = parts.get(0, Poly._raw({})) * (1 / lead)
        a = self.coefficients_in(x)
        top = max(a) if a else 0
        zero = Poly._raw({})
        xpow = Poly.var(x)
        # b_{d-1} = a_d - rest*b_d for the monic divisor x + rest
        q = zero
        b = zero
        for d in range(top, 0, -1):
            b = a.get(d, zero) - rest * b
            q = q + b * (xpow ** (d - 1))
        r = a.get(0, zero) - rest * b
        return q * (1 / lead), r

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for name, e in m:
                v *= Fraction(point[name]) ** e
            total += v
        return total

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        vs = self.variables()
        pieces = []
        for ev, c in self.sorted_terms(vs):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(vs, ev) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    # -- serialization ------------------------------------------------------

    def to_json(self, variables: list[str] | None = None) -> dict:
        vs = self.variables() if variables is None else variables
        return {
            "vars": vs,
            "terms": [[list(ev), format_rational(c)] for ev, c in self.sorted_terms(vs)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Poly":
        vs = data["vars"]
        terms = {}
        for ev, c in data["terms"]:
            if len(ev) != len(vs):
                raise ValueError("exponent vector length does not match vars")
            m = tuple((v, e) for v, e in zip(vs, ev) if e)
            terms[tuple(sorted(m))] = parse_rational(c)
        return cls(terms)


def _normalize_linear(f: Poly) -> tuple[Fraction, Poly]:
    """Return (c, g) with f = c*g and g monic in its leading variable."""
    x = f.leading_variable()
    c = f.terms[((x, 1),)]
    if c == 1:
        return c, f
    return c, f * (1 / c)


def _try_split(p: Poly) -> tuple[Fraction, list[Poly]]:
    """Factor ``p`` into (content, monic linear factors) or raise ValueError."""
    if p.degree() <= 1:
        if p.is_constant():
            return p.constant_value(), []
        c, g = _normalize_linear(p)
        return c, [g]
    import sympy

    names = p.variables()
    syms = sympy.symbols(names)
    expr = sum(
        sympy.Rational(c.numerator, c.denominator)
        * sympy.Mul(*[s**e for s, e in zip(syms, ev)])
        for ev, c in p.sorted_terms(names)
    )
    content, factors = sympy.factor_list(expr, *syms)
    lead = Fraction(int(sympy.numer(content)), int(sympy.denom(content)))
    out: list[Poly] = []
    for fac, mult in factors:
        poly = sympy.Poly(fac, *syms)
        if poly.total_degree() != 1:
            raise ValueError(f"{p} does not split into linear factors over Q")
        terms = {}
        for mono, coeff in poly.terms():
            m = tuple((n, e) for n, e in zip(names, mono) if e)
            terms[m] = Fraction(int(sympy.numer(coeff)), int(sympy.denom(coeff)))
        c, g = _normalize_linear(Poly(terms))
        lead *= c**mult
        out.extend([g] * mult)
    return lead, out


class Scalar:
    """Element ``num / prod(den)`` of Q(t_1..t_m).

    ``den`` is a sorted tuple of monic, non-constant linear forms; no factor of
    ``den`` divides ``num``.  This reduced form is unique, so it doubles as
    the hashing key.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly | Number = 0, den: Iterable[Poly] = ()):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        scale = Fraction(1)
        factors: list[Poly] = []
        for f in den:
            if f.is_zero():
                raise ZeroDivisionError("ZeroDivision: zero denominator factor")
            if f.degree() > 1:
                raise ValueError("denominator factors must be linear")
            if f.is_constant():
                scale *= f.constant_value()
                continue
            c, g = _normalize_linear(f)
            scale *= c
            factors.append(g)
        if scale != 1:
            num = num * (1 / scale)
        self._set(*_cancel(num, factors))

    def _set(self, num: Poly, den: tuple) -> None:
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: tuple = ()) -> "Scalar":
        s = cls.__new__(cls)
        s._set(num, den)
        return s

    @classmethod
    def from_rational(cls, q: Number) -> "Scalar":
        return cls._raw(Poly.constant(q))

    @classmethod
    def fraction(cls, num_factors: Iterable[Poly], den_factors: Iterable[Poly]) -> "Scalar":
        """Product of linear ``num_factors`` over product of linear ``den_factors``."""
        num = reduce(lambda a, b: a * b, num_factors, Poly.constant(1))
        return cls(num, den_factors)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_rational(self) -> bool:
        return not self.den and self.num.is_constant()

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        return self.num.constant_value()

    def variables(self) -> list[str]:
        vs = set(self.num.variables())
        for f in self.den:
            vs.update(f.variables())
        return sorted(vs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.den and not other.den:
            return Scalar._raw(self.num + other.num)
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        ca, cb = Counter(self.den), Counter(other.den)
        common = ca | cb
        na = self.num
        for f, k in (common - ca).items():
            na = na * f**k
        nb = other.num
        for f, k in (common - cb).items():
            nb = nb * f**k
        return Scalar._raw(*_cancel(na + nb, list(common.elements())))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return _coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.den and not other.den:
            return Scalar._raw(self.num * other.num)
        if self.is_zero() or other.is_zero():
            return Scalar._raw(Poly._raw({}))
        # a factor of one denominator may divide the other numerator
        na, db = _cancel(self.num, list(other.den))
        nb, da = _cancel(other.num, list(self.den))
        return Scalar._raw(na * nb, tuple(sorted(da + db, key=Poly.canonical)))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("ZeroDivision: inverse of zero Scalar")
        content, factors = _try_split(self.num)
        num = reduce(lambda a, b: a * b, self.den, Poly.constant(1)) * (1 / content)
        return Scalar._raw(*_cancel(num, factors))

    def __truediv__(self, other) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("ZeroDivision: division by zero Scalar")
        return self * other.inverse()

    def __rtruediv__(self, other) -> "Scalar":
        return _coerce(other) / self

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        d = Fraction(1)
        for f in self.den:
            d *= f.evaluate(point)
        if not d:
            raise ZeroDivisionError("ZeroDivision: evaluation point is a pole")
        return self.num.evaluate(point) / d

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        lhs = reduce(lambda a, b: a * b, other.den, self.num)
        rhs = reduce(lambda a, b: a * b, self.den, other.num)
        return lhs == rhs

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.num.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num = str(self.num)
        if not self.den:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        counts = Counter(self.den)
        parts = []
        for f in sorted(counts, key=Poly.canonical):
            k = counts[f]
            parts.append(f"({f})" + (f"^{k}" if k > 1 else ""))
        return f"{num}/" + ("*".join(parts) if len(parts) == 1 else "(" + "*".join(parts) + ")")

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        vs = self.variables()
        return {"num": self.num.to_json(vs), "den": [f.to_json(vs) for f in self.den]}

    @classmethod
    def from_json(cls, data: dict) -> "Scalar":
        return cls(Poly.from_json(data["num"]), [Poly.from_json(f) for f in data["den"]])


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_rational(x)
    if isinstance(x, Poly):
        return Scalar._raw(x)
    return NotImplemented


def _cancel(num: Poly, den: list) -> tuple[Poly, tuple]:
    """Trial-divide ``num`` by each denominator factor, dropping exact ones."""
    if not num.terms:
        return num, ()
    kept = []
    for f in den:
        if num.is_constant():
            kept.append(f)
            continue
        q, r = num.divmod_linear(f)
        if r.is_zero():
            num = q
        else:
            kept.append(f)
    kept.sort(key=Poly.canonical)
    return num, tuple(kept)
