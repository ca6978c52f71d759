"""Split composition algebras over Q by Cayley-Dickson doubling."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..exactalg import MPoly, as_rat


def _mult_table(dim: int) -> list:
    """table[i][j] = list of (k, c): e_i e_j = sum c e_k."""
    if dim == 1:
        return [[[(0, Fraction(1))]]]
    half = dim // 2
    low = _mult_table(half)
    conj = [Fraction(1)] + [Fraction(-1)] * (half - 1)

    def lo(i, j):
        return low[i][j]

    table = [[None] * dim for _ in range(dim)]
    # (a, b)(c, d) = (ac + gamma * conj(d) b, d a + b conj(c)) with gamma = 1
    for i in range(dim):
        for j in range(dim):
            out: dict = {}
            ia, ib = (i, None) if i < half else (None, i - half)
            jc, jd = (j, None) if j < half else (None, j - half)
            if ia is not None and jc is not None:
                for k, c in lo(ia, jc):
                    out[k] = out.get(k, 0) + c
            if ib is not None and jd is not None:
                for k, c in lo(jd, ib):
                    out[k] = out.get(k, 0) + c * conj[jd]
            if ia is not None and jd is not None:
                for k, c in lo(jd, ia):
                    out[half + k] = out.get(half + k, 0) + c
            if ib is not None and jc is not None:
                for k, c in lo(ib, jc):
                    out[half + k] = out.get(half + k, 0) + c * conj[jc]
            table[i][j] = [(k, c) for k, c in sorted(out.items()) if c]
    return table


class CompAlgebra:
    """Split composition algebra of dimension 1, 2, 4 or 8 with basis e_0 = 1, e_1, ...

    Elements are sequences of coefficients (rationals or polynomials).
    """

    def __init__(self, dim: int):
        if dim not in (1, 2, 4, 8):
            raise ValueError("composition algebras have dimension 1, 2, 4 or 8")
        self.dim = dim
        self.table = _cached_table(dim)
        self.conj_signs = tuple([Fraction(1)] + [Fraction(-1)] * (dim - 1))

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if _is_zero(xi):
                continue
            for j, yj in enumerate(y):
                if _is_zero(yj):
                    continue
                prod = xi * yj
                for k, c in self.table[i][j]:
                    out[k] = out[k] + prod * c
        return out

    def conj(self, x: Sequence) -> list:
        return [xi * s for xi, s in zip(x, self.conj_signs)]

    def norm(self, x: Sequence):
        """N(x), with x * conj(x) = N(x) * 1."""
        return self.mul(x, self.conj(x))[0]

    def add(self, x, y):
        return [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        return [a - b for a, b in zip(x, y)]

    def scalar(self, r) -> list:
        return [r] + [0 * r] * (self.dim - 1)

    def unit(self, i: int) -> list:
        return [Fraction(int(k == i)) for k in range(self.dim)]

    def structure_constants(self) -> dict:
        return {(i, j): tuple(self.table[i][j]) for i in range(self.dim) for j in range(self.dim)}


@lru_cache(maxsize=None)
def _cached_table(dim):
    return tuple(tuple(tuple(row) for row in r) for r in _mult_table(dim))


def _is_zero(x) -> bool:
    if isinstance(x, MPoly):
        return x.is_zero()
    return as_rat(x) == 0
