"""Sparse multivariate polynomials over Q, plus a small text parser/printer."""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

Exp = tuple


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given total degree, in descending lex order.

    For two variables and degree 2 this is (2,0), (1,1), (0,2).
    """
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_upto(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree + 1):
        out.extend(monomials(nvars, d))
    return out


def count_monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree)


class MPoly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None, _clean=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                if any(k < 0 for k in e):
                    raise ValueError(f"negative exponent in {e}")
                c = as_rat(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean

    # constructors
    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls(nvars, {}, _clean=True)

    @classmethod
    def const(cls, nvars: int, c) -> "MPoly":
        c = as_rat(c)
        return cls(nvars, {(0,) * nvars: c} if c else {}, _clean=True)

    @classmethod
    def var(cls, nvars: int, i: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)}, _clean=True)

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> "MPoly":
        return cls(len(exp), {tuple(exp): c})

    # basic queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def coeff(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k}, _clean=True)

    def truncate(self, k: int) -> "MPoly":
        return MPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) <= k}, _clean=True)

    # arithmetic
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return MPoly(self.nvars, t, _clean=True)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly(self.nvars, {e: c * v for e, v in self.terms.items()}, _clean=True)

    def mul(self, other: "MPoly", cap: int | None = None) -> "MPoly":
        """Product, optionally dropping terms of total degree above cap."""
        other = self._coerce(other)
        t: dict = {}
        if cap is None:
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    t[e] = t.get(e, 0) + c1 * c2
        else:
            right = [(e, c, sum(e)) for e, c in other.terms.items()]
            for e1, c1 in self.terms.items():
                room = cap - sum(e1)
                if room < 0:
                    continue
                for e2, c2, d2 in right:
                    if d2 > room:
                        continue
                    e = tuple(a + b for a, b in zip(e1, e2))
                    t[e] = t.get(e, 0) + c1 * c2
        return MPoly(self.nvars, {e: c for e, c in t.items() if c}, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(1 / as_rat(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # calculus and substitution
    def diff(self, i: int) -> "MPoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return MPoly(self.nvars, t, _clean=True)

    def evaluate(self, point: Sequence) -> Fraction:
        point = [as_rat(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for p, k in zip(point, e):
                if k:
                    v *= p ** k
            total += v
        return total

    def substitute(self, args: Sequence["MPoly"], cap: int | None = None) -> "MPoly":
        """Compose with polynomials args (one per variable of self)."""
        if len(args) != self.nvars:
            raise ValueError("argument count mismatch")
        m = args[0].nvars if args else 0
        cache = PowerCache(args, cap)
        out: dict = {}
        for e, c in self.terms.items():
            for e2, c2 in cache.monomial(e).terms.items():
                out[e2] = out.get(e2, 0) + c * c2
        return MPoly(m, {e: v for e, v in out.items() if v}, _clean=True)

    def shift(self, point: Sequence) -> "MPoly":
        """p(t + point)."""
        args = [MPoly.var(self.nvars, i) + as_rat(p) for i, p in enumerate(point)]
        return self.substitute(args)

    def linear_change(self, matrix: Sequence[Sequence]) -> "MPoly":
        """p(M y): variable x_i is replaced by sum_j M[i][j] y_j."""
        args = []
        for row in matrix:
            args.append(MPoly(self.nvars, {tuple(int(i == j) for i in range(self.nvars)): as_rat(v)
                                             for j, v in enumerate(row) if v}))
        return self.substitute(args)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (-sum(ec[0]), tuple(-k for k in ec[0])))

    def __repr__(self):
        return f"MPoly({self.nvars}, {format_poly(self)!r})"


class PowerCache:
    """Memoized products of the argument polynomials, keyed by exponent vector."""

    def __init__(self, args: Sequence[MPoly], cap: int | None = None):
        self.args = list(args)
        self.cap = cap
        m = args[0].nvars if args else 0
        self.one = MPoly.const(m, 1)
        self.cache: dict = {(0,) * len(args): self.one}

    def monomial(self, exp: tuple) -> MPoly:
        hit = self.cache.get(exp)
        if hit is not None:
            return hit
        # peel off one factor from the last nonzero slot
        i = max(j for j, k in enumerate(exp) if k)
        lower = list(exp)
        lower[i] -= 1
        val = self.monomial(tuple(lower)).mul(self.args[i], self.cap)
        self.cache[exp] = val
        return val


# ---------------------------------------------------------------------------
# text I/O

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([A-Za-z]\w*)|(\*\*|[-+*^()/]))")


def _var_index(name: str, names: Sequence[str]) -> int:
    try:
        return names.index(name)
    except ValueError:
        raise ValueError(f"unknown variable {name!r}; expected one of {', '.join(names)}") from None


def parse_poly(text: str, names: Sequence[str]) -> MPoly:
    """Parse a polynomial in the given variable names.

    Grammar: integers and p/q literals, + - * ^ (or **), parentheses.
    """
    names = list(names)
    nv = len(names)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif ident is not None:
            tokens.append(("var", ident))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    idx = 0

    def peek():
        return tokens[idx]

    def take():
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def expect(op):
        tok = take()
        if tok != ("op", op):
            raise ValueError(f"expected {op!r} in {text!r}")

    def expr():
        node = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term():
        node = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                node = node * rhs
            else:
                if rhs.degree() > 0 or rhs.is_zero():
                    raise ValueError(f"division by a non-constant or zero in {text!r}")
                node = node.scale(1 / rhs.constant())
        return node

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or "/" in val:
                raise ValueError(f"exponent must be a non-negative integer in {text!r}")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return MPoly.const(nv, Fraction(val))
        if kind == "var":
            return MPoly.var(nv, _var_index(val, names))
        if (kind, val) == ("op", "("):
            node = expr()
            expect(")")
            return node
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input in {text!r}")
    return result


def _format_monomial(exp, names) -> str:
    parts = []
    for k, name in zip(exp, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: MPoly, names: Sequence[str] | None = None) -> str:
    """Print p so that parse_poly(format_poly(p), names) == p."""
    if names is None:
        names = [f"t{i + 1}" for i in range(p.nvars)]
    if p.is_zero():
        return "0"
    out = []
    for e, c in p.sorted_terms():
        mono = _format_monomial(e, names)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def t_names(n: int) -> list[str]:
    return [f"t{i + 1}" for i in range(n)]


def x_names(count: int) -> list[str]:
    return [f"x{i}" for i in range(count)]


def poly_from_vector(vec: Mapping[int, object], basis: Sequence[tuple]) -> MPoly:
    nv = len(basis[0]) if basis else 0
    return MPoly(nv, {basis[i]: c for i, c in vec.items() if c})


def poly_to_vector(p: MPoly, index: Mapping[tuple, int]) -> dict[int, Fraction]:
    out = {}
    for e, c in p.terms.items():
        try:
            out[index[e]] = c
        except KeyError:
            raise ValueError(f"monomial {e} is outside the given basis") from None
    return out


def sum_polys(polys: Iterable[MPoly], nvars: int) -> MPoly:
    t: dict = {}
    for p in polys:
        for e, c in p.terms.items():
            t[e] = t.get(e, 0) + c
    return MPoly(nvars, {e: c for e, c in t.items() if c}, _clean=True)
