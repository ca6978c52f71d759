"""Power series truncated at a fixed total degree."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import MPoly, as_rat


class Jet:
    __slots__ = ("base", "cap")

    def __init__(self, base: MPoly, cap: int):
        if cap < 0:
            raise ValueError("jet cap must be non-negative")
        self.base = base.truncate(cap)
        self.cap = cap

    @property
    def order_cap(self) -> int:
        return self.cap

    @property
    def nvars(self) -> int:
        return self.base.nvars

    @classmethod
    def const(cls, nvars, c, cap) -> "Jet":
        return cls(MPoly.const(nvars, c), cap)

    @classmethod
    def var(cls, nvars, i, cap) -> "Jet":
        return cls(MPoly.var(nvars, i), cap)

    def _other(self, other):
        if isinstance(other, Jet):
            return other.base, min(self.cap, other.cap)
        if isinstance(other, MPoly):
            return other, self.cap
        return MPoly.const(self.nvars, other), self.cap

    def __add__(self, other):
        b, cap = self._other(other)
        return Jet(self.base + b, cap)

    __radd__ = __add__

    def __sub__(self, other):
        b, cap = self._other(other)
        return Jet(self.base - b, cap)

    def __rsub__(self, other):
        b, cap = self._other(other)
        return Jet(b - self.base, cap)

    def __neg__(self):
        return Jet(-self.base, self.cap)

    def __mul__(self, other):
        if not isinstance(other, (Jet, MPoly)):
            return Jet(self.base.scale(other), self.cap)
        b, cap = self._other(other)
        return Jet(self.base.mul(b, cap), cap)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Jet.const(self.nvars, 1, self.cap)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Jet):
            return self.cap == other.cap and self.base == other.base
        return NotImplemented

    def __hash__(self):
        return hash((self.cap, self.base))

    def constant(self) -> Fraction:
        return self.base.constant()

    def part(self, k: int) -> MPoly:
        return self.base.homogeneous_part(k)

    def truncate(self, k: int) -> "Jet":
        return Jet(self.base, min(k, self.cap))

    def diff(self, i: int) -> "Jet":
        """Formal derivative; one order of accuracy is lost."""
        if self.cap == 0:
            raise ValueError("cannot differentiate a jet of cap 0")
        return Jet(self.base.diff(i), self.cap - 1)

    def is_zero(self) -> bool:
        return self.base.is_zero()

    def __repr__(self):
        return f"Jet({self.base!r}, cap={self.cap})"


def jet_compose(p: MPoly, args: Sequence, cap: int) -> Jet:
    """p(args) truncated at total degree cap; args are Jets or MPolys in a common set of variables."""
    if len(args) != p.nvars:
        raise ValueError(f"expected {p.nvars} arguments, got {len(args)}")
    polys = []
    for a in args:
        if isinstance(a, Jet):
            cap = min(cap, a.cap)
            polys.append(a.base)
        else:
            polys.append(a)
    polys = [q.truncate(cap) for q in polys]
    return Jet(p.substitute(polys, cap), cap)


def jet_pow_rational(j: Jet, q) -> Jet:
    """(1+s)^q by the binomial series; j must have constant term 1."""
    q = as_rat(q)
    if j.constant() != 1:
        raise ValueError("jet_pow_rational needs a jet with constant term 1")
    s = j.base - 1
    cap = j.cap
    out = MPoly.const(j.nvars, 1)
    power = MPoly.const(j.nvars, 1)
    coef = Fraction(1)
    for k in range(1, cap + 1):
        coef = coef * (q - k + 1) / k
        power = power.mul(s, cap)
        if power.is_zero():
            break
        if coef:
            out = out + power.scale(coef)
    return Jet(out, cap)


def jet_inverse(j: Jet) -> Jet:
    """1/j for a jet with nonzero constant term."""
    c = j.constant()
    if not c:
        raise ValueError("jet is not invertible")
    return jet_pow_rational(j * (1 / c), -1) * (1 / c)
