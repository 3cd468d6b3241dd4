"""Sparse multivariate polynomials over the rationals.

A monomial is a tuple of nonnegative exponents.  A :class:`Polynomial` maps
monomials to nonzero :class:`~fractions.Fraction` coefficients and knows its
ambient variable count.  Monomial orders are small hashable objects exposing
``key(m)``: a larger key means a larger monomial.

Variable layout in the 2n-variable rings used throughout the package:
indices ``0..n-1`` are ``x1..xn`` and ``n..2n-1`` are ``u1..un`` (the symbol
variables xi).  :func:`x_index`, :func:`xi_index` and :func:`xu_names` are the
single source of that convention.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Monomial = tuple


# --------------------------------------------------------------------------
# variable conventions


def x_index(j: int, n: int) -> int:
    return j


def xi_index(j: int, n: int) -> int:
    return n + j


def xi_names(n: int, start: int = 1) -> list[str]:
    return [f"u{i}" for i in range(start, start + n)]


def xu_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)] + xi_names(n)


# --------------------------------------------------------------------------
# monomial orders


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


# Integer linear forms reproducing each order's comparisons, valid while
# exponents and total degrees stay below KEY_BASE.
KEY_BASE = 1 << 24


def _grevlex_form(priority, nvars):
    B = KEY_BASE
    coeffs = [0] * nvars
    for i, var in enumerate(priority):
        # significance of -e grows toward the last variable in priority order
        coeffs[var] = B**nvars - B**i
    return coeffs


def _span(nvars: int) -> int:
    return KEY_BASE ** (nvars + 2)


class MonomialOrder:
    """Base class; subclasses implement :meth:`key`."""

    name = "order"

    def key(self, m: Monomial):
        raise NotImplementedError

    def linear_form(self, nvars: int) -> list[int]:
        """Integer coefficients ``c`` with ``key(u) < key(v)`` iff ``c.u < c.v``."""
        raise NotImplementedError

    def compare(self, u: Monomial, v: Monomial) -> int:
        return monomial_compare(self, u, v)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    name = "lex"

    def key(self, m):
        return m

    def linear_form(self, nvars):
        return [KEY_BASE ** (nvars - 1 - i) for i in range(nvars)]


@dataclass(frozen=True)
class GRevLex(MonomialOrder):
    """Graded reverse lexicographic order.

    ``priority`` lists variable indices from most to least significant; the
    default is the natural order ``v1 > v2 > ... > vN``.
    """

    priority: tuple | None = None
    name = "grevlex"

    def key(self, m):
        if self.priority is not None:
            m = tuple(m[i] for i in self.priority)
        return _grevlex_key(m)

    def linear_form(self, nvars):
        return _grevlex_form(self.priority or range(nvars), nvars)


@dataclass(frozen=True)
class RevLex(MonomialOrder):
    """Reverse lexicographic comparison with no degree step.

    Not a well-order by itself.  Use it only as the tiebreak of a
    :class:`WeightOrder` with strictly positive weights, where it makes every
    monomial divisible by the last variable in ``priority`` smaller than the
    other monomials of the same weight.
    """

    priority: tuple | None = None
    name = "revlex"

    def key(self, m):
        if self.priority is not None:
            m = tuple(m[i] for i in self.priority)
        return tuple(-e for e in reversed(m))

    def linear_form(self, nvars):
        B = KEY_BASE
        coeffs = [0] * nvars
        for i, var in enumerate(self.priority or range(nvars)):
            coeffs[var] = -(B**i)
        return coeffs


@dataclass(frozen=True)
class BlockElimination(MonomialOrder):
    """Grevlex on the first ``front`` variables, ties broken by grevlex on the rest.

    Any monomial involving a front variable exceeds every monomial free of them.
    """

    front: int
    name = "block"

    def key(self, m):
        return (_grevlex_key(m[: self.front]), _grevlex_key(m[self.front :]))

    def linear_form(self, nvars):
        k = self.front
        front = _grevlex_form(range(k), k)
        back = _grevlex_form(range(nvars - k), nvars - k)
        scale = _span(nvars)
        return [c * scale for c in front] + back


@dataclass(frozen=True)
class WeightOrder(MonomialOrder):
    """Order by the weight ``w . m`` first, then by ``tiebreak``.

    Weights must be nonnegative so the order stays global.
    """

    weights: tuple
    tiebreak: MonomialOrder = GRevLex()
    name = "weight"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if any(w < 0 for w in self.weights):
            raise ValueError("weight orders need nonnegative weights")

    def key(self, m):
        if len(m) != len(self.weights):
            raise ValueError("weight vector length does not match monomial")
        return (sum(w * e for w, e in zip(self.weights, m) if e), self.tiebreak.key(m))

    def linear_form(self, nvars):
        if len(self.weights) != nvars:
            raise ValueError("weight vector length does not match the ring")
        den = 1
        for w in self.weights:
            den = den * w.denominator // gcd(den, w.denominator)
        scale = _span(nvars) ** 2
        tie = self.tiebreak.linear_form(nvars)
        return [int(w * den) * scale + t for w, t in zip(self.weights, tie)]


LEX = Lex()
GREVLEX = GRevLex()


def monomial_compare(order: MonomialOrder, u: Monomial, v: Monomial) -> int:
    """Return -1, 0 or 1 as ``u`` is less than, equal to or greater than ``v``."""
    if len(u) != len(v):
        raise ValueError(f"monomials live in different rings ({len(u)} vs {len(v)} variables)")
    ku, kv = order.key(u), order.key(v)
    return (ku > kv) - (ku < kv)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = (), nvars: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Monomial, Fraction] = {}
        for m, c in items:
            m = tuple(int(e) for e in m)
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, Fraction(0)) + c
                if not clean[m]:
                    del clean[m]
        if nvars is None:
            if not clean:
                raise ValueError("nvars is required for the zero polynomial")
            nvars = len(next(iter(clean)))
        for m in clean:
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            if any(e < 0 for e in m):
                raise ValueError(f"negative exponent in {m}")
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> Polynomial:
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> Polynomial:
        c = Fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> Polynomial:
        m = [0] * nvars
        m[i] = 1
        return cls._raw({tuple(m): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, m: Monomial, coeff=1) -> Polynomial:
        return cls({tuple(m): coeff}, nvars=len(m))

    @classmethod
    def binomial(cls, u: Monomial, v: Monomial) -> Polynomial:
        """``xi^u - xi^v``."""
        return cls({tuple(u): 1, tuple(v): -1}, nvars=len(u)) if tuple(u) != tuple(v) else cls.zero(len(u))

    # basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def support(self) -> set[int]:
        """Indices of variables that occur in some term."""
        out: set[int] = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def leading_term(self, order: MonomialOrder) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder) -> Polynomial:
        if not self.terms:
            return self
        c = self.leading_term(order)[1]
        if c == 1:
            return self
        return Polynomial._raw({m: v / c for m, v in self.terms.items()}, self.nvars)

    def is_binomial(self) -> bool:
        return len(self.terms) == 2 and sorted(self.terms.values()) == [-1, 1]

    # arithmetic -----------------------------------------------------------
    def _check(self, other: Polynomial):
        if other.nvars != self.nvars:
            raise ValueError(f"ring mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.nvars)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return Polynomial.zero(self.nvars)
            return Polynomial._raw({m: v * c for m, v in self.terms.items()}, self.nvars)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, m: Monomial, c) -> Polynomial:
        return Polynomial._raw(
            {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self.terms.items()}, self.nvars
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # transforms -----------------------------------------------------------
    def embed(self, nvars: int, offset: int) -> Polynomial:
        """Place this polynomial's variables at ``offset..offset+self.nvars-1`` of a larger ring."""
        if offset + self.nvars > nvars:
            raise ValueError("target ring too small")
        pre, post = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return Polynomial._raw({pre + m + post: c for m, c in self.terms.items()}, nvars)

    def restrict(self, keep: Sequence[int]) -> Polynomial:
        """Project onto the variables in ``keep``; every other variable must be absent."""
        keep = list(keep)
        kept = set(keep)
        out = {}
        for m, c in self.terms.items():
            if any(e and i not in kept for i, e in enumerate(m)):
                raise ValueError("polynomial involves a variable that is being dropped")
            out[tuple(m[i] for i in keep)] = c
        return Polynomial._raw(out, len(keep))

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r}, nvars={self.nvars})"


def weight_leading_form(f: Polynomial, w: Sequence) -> Polynomial:
    """Sum of the terms of ``f`` whose exponent has maximal ``w``-weight."""
    if len(w) != f.nvars:
        raise ValueError("weight vector length does not match the ring")
    if not f.terms:
        return f
    w = [Fraction(x) for x in w]
    weight = {m: sum(a * e for a, e in zip(w, m)) for m in f.terms}
    top = max(weight.values())
    return Polynomial._raw({m: c for m, c in f.terms.items() if weight[m] == top}, f.nvars)


def evaluate_partial(f: Polynomial, assignment: Mapping[int, object]) -> Polynomial:
    """Substitute exact rational values for some variables.

    The result stays in the same ring; assigned variables no longer occur.
    """
    for i in assignment:
        if not 0 <= i < f.nvars:
            raise IndexError(f"variable index {i} out of range")
    vals = {i: Fraction(v) for i, v in assignment.items()}
    out: dict[Monomial, Fraction] = {}
    for m, c in f.terms.items():
        m2 = list(m)
        for i, v in vals.items():
            if m2[i]:
                c = c * v ** m2[i]
                m2[i] = 0
        if c:
            key = tuple(m2)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Polynomial._raw(out, f.nvars)


# --------------------------------------------------------------------------
# text form


def default_names(nvars: int) -> list[str]:
    return [f"v{i}" for i in range(1, nvars + 1)]


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(f: Polynomial, names: Sequence[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
    """Canonical text such as ``"x1*u1 + 2*x2*u2"``; terms descend in ``order``."""
    if names is None:
        names = default_names(f.nvars)
    if len(names) != f.nvars:
        raise ValueError("need one name per variable")
    if not f.terms:
        return "0"
    pieces = []
    for k, (m, c) in enumerate(f.sorted_terms(order)):
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e]
        mag = abs(c)
        if not factors:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_fmt_coeff(mag)] + factors)
        if k == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_]\w*)|(\^)|(\*)|([+-]))")


def parse(text: str, names: Sequence[str]) -> Polynomial:
    """Parse the grammar produced by :func:`render` (sums of signed products)."""
    index = {name: i for i, name in enumerate(names)}
    nvars = len(names)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"unexpected character at column {pos + 1}: {text[pos:pos + 10]!r}")
        kind = mt.lastindex
        tokens.append((kind, mt.group(kind), mt.start(kind)))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    NUM, NAME, POW, MUL, SIGN = 1, 2, 3, 4, 5
    terms: dict = {}
    i = 0
    if not tokens:
        raise ValueError("empty polynomial text")
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == SIGN:
            sign = -sign if tokens[i][1] == "-" else sign
            i += 1
        coeff = Fraction(sign)
        expo = [0] * nvars
        need_factor = True
        while i < len(tokens) and need_factor:
            kind, val, col = tokens[i]
            if kind == NUM:
                coeff *= Fraction(val)
                i += 1
            elif kind == NAME:
                if val not in index:
                    raise ValueError(f"unknown variable {val!r} at column {col + 1}")
                e = 1
                i += 1
                if i < len(tokens) and tokens[i][0] == POW:
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != NUM or "/" in tokens[i + 1][1]:
                        raise ValueError(f"bad exponent after {val!r} at column {col + 1}")
                    e = int(tokens[i + 1][1])
                    i += 2
                expo[index[val]] += e
            else:
                raise ValueError(f"unexpected {val!r} at column {col + 1}")
            if i < len(tokens) and tokens[i][0] == MUL:
                i += 1
            else:
                need_factor = False
        m = tuple(expo)
        terms[m] = terms.get(m, 0) + coeff
    return Polynomial(terms, nvars=nvars)
