"""Symmetric powers of a vector space with monomial bases.

Forms are stored in the monomial convention: the coefficient attached to an
exponent vector is the coefficient of that monomial in the polynomial.  The
symmetric-array convention (q(v, v) = sum q_ab v^a v^b) differs by a
multinomial factor; `to_sym_array` / `from_sym_array` are the only places
that factor appears.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import comb, factorial
from typing import Sequence

from .exactalg import MPoly, as_rat, kernel_of_columns, monomials, sparse_rank


class SymSpace:
    """S^k of an n-dimensional space; basis = exponent vectors in descending lex order.

    Instances are shared: SymSpace(n, k) always returns the same object.
    """

    _cache: dict = {}

    def __new__(cls, n: int, k: int):
        key = (n, k)
        hit = cls._cache.get(key)
        if hit is None:
            if n < 1 or k < 0:
                raise ValueError("need n >= 1 and k >= 0")
            hit = super().__new__(cls)
            hit._setup(n, k)
            cls._cache[key] = hit
        return hit

    def _setup(self, n: int, k: int):
        self.n = n
        self.k = k
        self.basis = tuple(monomials(n, k))
        self.index = {e: i for i, e in enumerate(self.basis)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"SymSpace(n={self.n}, k={self.k})"


class SymForm:
    __slots__ = ("space", "coeffs")

    def __init__(self, space: SymSpace, coeffs: Sequence):
        if len(coeffs) != space.dim:
            raise ValueError(f"expected {space.dim} coefficients, got {len(coeffs)}")
        self.space = space
        self.coeffs = tuple(as_rat(c) for c in coeffs)

    @classmethod
    def from_poly(cls, p: MPoly, k: int | None = None) -> "SymForm":
        if k is None:
            k = max(p.degree(), 0)
        if any(sum(e) != k for e in p.terms):
            raise ValueError(f"polynomial is not homogeneous of degree {k}")
        space = SymSpace(p.nvars, k)
        c = [Fraction(0)] * space.dim
        for e, v in p.terms.items():
            c[space.index[e]] = v
        return cls(space, c)

    @classmethod
    def zero(cls, n: int, k: int) -> "SymForm":
        s = SymSpace(n, k)
        return cls(s, [0] * s.dim)

    @property
    def n(self):
        return self.space.n

    @property
    def k(self):
        return self.space.k

    def to_poly(self) -> MPoly:
        return MPoly(self.space.n, {e: c for e, c in zip(self.space.basis, self.coeffs) if c})

    def vector(self) -> dict:
        return {i: c for i, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other):
        if other.space is not self.space:
            raise ValueError("forms live in different spaces")

    def __add__(self, other):
        self._check(other)
        return SymForm(self.space, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return SymForm(self.space, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return SymForm(self.space, [-a for a in self.coeffs])

    def __mul__(self, c):
        c = as_rat(c)
        return SymForm(self.space, [c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SymForm) and self.space is other.space and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.space.n, self.space.k, self.coeffs))

    def __repr__(self):
        from .exactalg import format_poly
        names = [f"w{i + 1}" for i in range(self.n)]
        return f"SymForm(k={self.k}, {format_poly(self.to_poly(), names)})"


def sym_mult(p: SymForm, q: SymForm) -> SymForm:
    if p.n != q.n:
        raise ValueError("dimension mismatch")
    return SymForm.from_poly(p.to_poly() * q.to_poly(), p.k + q.k)


def contract(v: Sequence, q: SymForm) -> SymForm:
    """Polarized contraction q(v, ., ..., .) = (1/k) * directional derivative of q along v."""
    if q.k == 0:
        raise ValueError("cannot contract a form of degree 0")
    if len(v) != q.n:
        raise ValueError("vector length does not match the form")
    p = q.to_poly()
    out = MPoly.zero(q.n)
    for i, vi in enumerate(v):
        vi = as_rat(vi)
        if vi:
            out = out + p.diff(i).scale(vi)
    return SymForm.from_poly(out.scale(Fraction(1, q.k)), q.k - 1)


def multinomial(exp: Sequence[int]) -> int:
    out = factorial(sum(exp))
    for e in exp:
        out //= factorial(e)
    return out


def exp_to_indices(exp: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i, e in enumerate(exp):
        out.extend([i] * e)
    return tuple(out)


def indices_to_exp(idx: Sequence[int], n: int) -> tuple[int, ...]:
    e = [0] * n
    for i in idx:
        e[i] += 1
    return tuple(e)


def to_sym_array(form: SymForm | MPoly, k: int | None = None) -> dict[tuple, Fraction]:
    """Symmetric-array entries keyed by sorted index tuples (zero entries omitted)."""
    p = form.to_poly() if isinstance(form, SymForm) else form
    out = {}
    for e, c in p.terms.items():
        if k is not None and sum(e) != k:
            raise ValueError("form is not homogeneous of the requested degree")
        out[exp_to_indices(e)] = c / multinomial(e)
    return out


def from_sym_array(arr: dict, n: int, k: int) -> MPoly:
    """Inverse of to_sym_array; arr is keyed by sorted index tuples."""
    terms = {}
    for idx, v in arr.items():
        if len(idx) != k:
            raise ValueError("index length does not match the degree")
        e = indices_to_exp(idx, n)
        terms[e] = terms.get(e, 0) + as_rat(v) * multinomial(e)
    return MPoly(n, terms)


def sym_entry(arr: dict, idx: Sequence[int]) -> Fraction:
    return arr.get(tuple(sorted(idx)), Fraction(0))


def symmetrize_array(fn, n: int, k: int) -> dict[tuple, Fraction]:
    """Symmetric array whose sorted entry is the average of fn over index permutations."""
    out = {}
    denom = factorial(k)
    for e in monomials(n, k):
        idx = exp_to_indices(e)
        total = Fraction(0)
        for perm in permutations(idx):
            total += fn(perm)
        if total:
            out[idx] = total / denom
    return out


# ---------------------------------------------------------------------------
# S^2 ⊗ T* = S^3 ⊕ S^(21)


def s21_dim(n: int) -> int:
    return n * comb(n + 1, 2) - comb(n + 2, 3)


def _quad_basis(n):
    return SymSpace(n, 2)


def mult_map(t: Sequence[Sequence]) -> MPoly:
    """Multiplication S^2 ⊗ T* -> S^3; t[i][j] is the coefficient of basis quadric i ⊗ w_j."""
    n = len(t[0]) if t else 0
    s2 = _quad_basis(n)
    out = {}
    for i, e in enumerate(s2.basis):
        for j in range(n):
            c = as_rat(t[i][j])
            if c:
                ne = list(e)
                ne[j] += 1
                ne = tuple(ne)
                out[ne] = out.get(ne, 0) + c
    return MPoly(n, out)


def embed_cubic(p: MPoly) -> list[list[Fraction]]:
    """The GL-equivariant section S^3 -> S^2 ⊗ T*, P -> (1/3) sum_j dP/dw_j ⊗ w_j."""
    n = p.nvars
    s2 = _quad_basis(n)
    t = [[Fraction(0)] * n for _ in range(s2.dim)]
    for j in range(n):
        d = p.diff(j)
        for e, c in d.terms.items():
            t[s2.index[e]][j] += c / 3
    return t


def split_s21(t: Sequence[Sequence]) -> tuple[SymForm, list[list[Fraction]]]:
    """Split t into its cubic part and the kernel-of-multiplication part."""
    n = len(t[0])
    t = [[as_rat(x) for x in row] for row in t]
    cubic = mult_map(t)
    emb = embed_cubic(cubic)
    rest = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(t, emb)]
    return SymForm.from_poly(cubic, 3) if not cubic.is_zero() else SymForm.zero(n, 3), rest


def s21_dim_by_kernel(n: int) -> int:
    """dim ker(S^2 ⊗ T* -> S^3) computed directly."""
    s2 = _quad_basis(n)
    cols = []
    for e in s2.basis:
        for j in range(n):
            ne = list(e)
            ne[j] += 1
            cols.append({tuple(ne): 1})
    return len(kernel_of_columns(cols))


def form_rank(q: SymForm | MPoly) -> int:
    """Rank of the symmetric matrix of a quadric."""
    p = q.to_poly() if isinstance(q, SymForm) else q
    n = p.nvars
    rows = []
    for i in range(n):
        rows.append({j: c for j in range(n) if (c := p.diff(i).coeff(tuple(int(k == j) for k in range(n))))})
    return sparse_rank(rows)
