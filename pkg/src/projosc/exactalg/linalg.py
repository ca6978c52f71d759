"""Exact linear algebra over Q.

Everything is built on one sparse elimination engine (`Echelon`): rows are
dicts {column: value}, pivots are leftmost entries, and the reduced form is
canonical for the row space.  `MatQ` is a small dense front end.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .poly import as_rat

SparseVec = dict


class Echelon:
    """Row-echelon basis of a subspace of Q^N, grown one vector at a time."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, object]) -> dict:
        """Remainder of vec after eliminating every pivot column."""
        rows = self.rows
        row = {k: v for k, v in vec.items() if v}
        heap = [k for k in row if k in rows]
        heapq.heapify(heap)
        while heap:
            k = heapq.heappop(heap)
            c = row.get(k)
            if c is None:
                continue
            for j, v in rows[k].items():
                if j in row:
                    nv = row[j] - c * v
                    if nv:
                        row[j] = nv
                    else:
                        del row[j]
                else:
                    row[j] = -c * v
                    if j in rows:
                        heapq.heappush(heap, j)
        return row

    def add(self, vec: Mapping[int, object]) -> int | None:
        """Insert vec; returns the new pivot column, or None if vec was dependent."""
        row = self.reduce(vec)
        if not row:
            return None
        p = min(row)
        c = row[p]
        if c != 1:
            inv = 1 / c
            row = {j: v * inv for j, v in row.items()}
        self.rows[p] = row
        return p

    def contains(self, vec: Mapping[int, object]) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def rref(self) -> list[dict]:
        """Fully reduced rows sorted by pivot column (canonical for the span)."""
        order = sorted(self.rows)
        done: dict[int, dict] = {}
        for p in reversed(order):
            row = dict(self.rows[p])
            for q in [j for j in row if j != p and j in done]:
                c = row.get(q)
                if not c:
                    continue
                for j, v in done[q].items():
                    nv = row.get(j, 0) - c * v
                    if nv:
                        row[j] = nv
                    else:
                        row.pop(j, None)
            done[p] = row
        self.rows = done
        return [done[p] for p in order]


def sparse_rank(vectors: Iterable[Mapping[int, object]]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def rref_basis(vectors: Iterable[Mapping[int, object]]) -> list[dict]:
    """Canonical basis of the span: reduced rows ordered by pivot."""
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rref()


def sparse_kernel(rows: Iterable[Mapping[int, object]], ncols: int) -> list[dict]:
    """Null space basis of the matrix with the given sparse rows.

    The basis is the standard one read off the RREF: one vector per free
    column f, with a 1 in position f.
    """
    e = Echelon()
    for r in rows:
        e.add(r)
    reduced = e.rref()
    pivots = {min(r): r for r in reduced}
    basis = []
    col_hits: dict[int, list] = {}
    for p, r in pivots.items():
        for j, v in r.items():
            if j != p:
                col_hits.setdefault(j, []).append((p, v))
    for f in range(ncols):
        if f in pivots:
            continue
        vec = {f: Fraction(1)}
        for p, v in col_hits.get(f, ()):
            vec[p] = -v
        basis.append(vec)
    return basis


def kernel_of_columns(columns: Sequence[Mapping], ) -> list[dict]:
    """Null space of the matrix whose j-th column is columns[j] (sparse, any hashable row keys)."""
    row_index: dict = {}
    rows: list[dict] = []
    for j, col in enumerate(columns):
        for key, v in col.items():
            if not v:
                continue
            i = row_index.get(key)
            if i is None:
                i = row_index[key] = len(rows)
                rows.append({})
            rows[i][j] = v
    return sparse_kernel(rows, len(columns))


def rank_of_columns(columns: Sequence[Mapping]) -> int:
    """Rank of the matrix with these sparse columns (row keys may be any hashable)."""
    index: dict = {}
    e = Echelon()
    for col in columns:
        vec = {}
        for key, v in col.items():
            if v:
                i = index.get(key)
                if i is None:
                    i = index[key] = len(index)
                vec[i] = v
        e.add(vec)
    return e.rank


# ---------------------------------------------------------------------------
# dense matrices


class MatQ:
    """Dense matrix of Fractions (immutable by convention)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = tuple(tuple(as_rat(x) for x in r) for r in entries)
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for r in self.entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "MatQ":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "MatQ":
        return cls([[0] * c for _ in range(r)], c)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "MatQ":
        if not columns:
            return cls([], 0)
        return cls([list(r) for r in zip(*columns)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def col(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "MatQ":
        return MatQ([list(c) for c in zip(*self.entries)], self.rows) if self.rows else MatQ([], 0)

    def __matmul__(self, other):
        if isinstance(other, MatQ):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            oc = other.transpose().entries if other.rows else ()
            return MatQ([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in oc] for r in self.entries],
                        other.cols)
        vec = [as_rat(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.entries]

    def __eq__(self, other):
        return isinstance(other, MatQ) and self.entries == other.entries and self.cols == other.cols

    def __hash__(self):
        return hash(self.entries)

    def _sparse_rows(self):
        return [{j: v for j, v in enumerate(r) if v} for r in self.entries]

    def rref(self) -> tuple["MatQ", list[int]]:
        reduced = rref_basis(self._sparse_rows())
        pivots = [min(r) for r in reduced]
        dense = [[r.get(j, Fraction(0)) for j in range(self.cols)] for r in reduced]
        dense += [[Fraction(0)] * self.cols for _ in range(self.rows - len(dense))]
        return MatQ(dense, self.cols), pivots

    def rank(self) -> int:
        return sparse_rank(self._sparse_rows())

    def kernel(self) -> list[list[Fraction]]:
        return [densify(v, self.cols) for v in sparse_kernel(self._sparse_rows(), self.cols)]

    def inverse(self) -> "MatQ":
        if self.rows != self.cols:
            raise ValueError("matrix is not square")
        n = self.rows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.entries)]
        red, piv = MatQ(aug).rref()
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ValueError("matrix is singular")
        return MatQ([list(red.entries[i][n:]) for i in range(n)])

    def solve(self, rhs: Sequence) -> tuple[list[Fraction] | None, list[list[Fraction]]]:
        """Particular solution (free variables 0) and null space basis; None if inconsistent."""
        return solve_sparse(self._sparse_rows(), [as_rat(b) for b in rhs], self.cols, dense=True)

    def __repr__(self):
        return f"MatQ({[[str(x) for x in r] for r in self.entries]})"


def densify(vec: Mapping[int, object], length: int) -> list[Fraction]:
    out = [Fraction(0)] * length
    for j, v in vec.items():
        out[j] = as_rat(v)
    return out


def sparsify(vec: Sequence) -> dict:
    return {j: as_rat(v) for j, v in enumerate(vec) if v}


def kernel(m: MatQ) -> list[list[Fraction]]:
    return m.kernel()


def solve_sparse(rows: Sequence[Mapping[int, object]], rhs: Sequence, ncols: int, dense=False):
    """Solve rows·x = rhs.  Returns (particular, nullspace) or (None, nullspace)."""
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[ncols] = as_rat(b)
        aug.append(row)
    e = Echelon()
    for r in aug:
        e.add(r)
    reduced = e.rref()
    null = sparse_kernel([{j: v for j, v in r.items() if j < ncols} for r in rows], ncols)
    if any(min(r) == ncols for r in reduced):
        part = None
    else:
        part = {}
        for r in reduced:
            if ncols in r:
                part[min(r)] = r[ncols]
    if dense:
        return (densify(part, ncols) if part is not None else None), [densify(v, ncols) for v in null]
    return part, null


# ---------------------------------------------------------------------------
# subspaces given by spanning vectors


def _check_lengths(vectors, length):
    for v in vectors:
        if len(v) != length:
            raise ValueError(f"vector of length {len(v)} in an ambient space of dimension {length}")


class Subspace:
    """A subspace of Q^dim stored by its canonical reduced basis."""

    def __init__(self, dim: int, vectors: Iterable = ()):
        self.dim = dim
        vecs = []
        for v in vectors:
            if isinstance(v, Mapping):
                if any(not 0 <= j < dim for j in v):
                    raise ValueError("vector index outside the ambient space")
                vecs.append(v)
            else:
                _check_lengths([v], dim)
                vecs.append(sparsify(v))
        self._ech = Echelon()
        for v in vecs:
            self._ech.add(v)
        self.basis = self._ech.rref()

    def __len__(self):
        return len(self.basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        if not isinstance(v, Mapping):
            _check_lengths([v], self.dim)
            v = sparsify(v)
        return self._ech.contains(v)

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def dense_basis(self) -> list[list[Fraction]]:
        return [densify(v, self.dim) for v in self.basis]

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.dim == other.dim and self.basis == other.basis

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersection(self, other)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    if u.dim != w.dim:
        raise ValueError("ambient dimensions differ")
    return Subspace(u.dim, list(u.basis) + list(w.basis))


def intersection(u: Subspace, w: Subspace) -> Subspace:
    """U ∩ W via the kernel of [U | -W]."""
    if u.dim != w.dim:
        raise ValueError("ambient dimensions differ")
    cols = list(u.basis) + [{j: -v for j, v in b.items()} for b in w.basis]
    ker = kernel_of_columns(cols)
    out = []
    k = len(u.basis)
    for z in ker:
        vec: dict = {}
        for i, c in z.items():
            if i < k:
                for j, v in u.basis[i].items():
                    vec[j] = vec.get(j, 0) + c * v
        out.append({j: v for j, v in vec.items() if v})
    return Subspace(u.dim, out)


def quotient_dim(u: Subspace, w: Subspace) -> int:
    """dim U/(U ∩ W)."""
    return u.rank - intersection(u, w).rank


def subspace_ops(u_vectors: Sequence[Sequence], w_vectors: Sequence[Sequence], dim: int | None = None) -> dict:
    """Dimensions of U, W, U∩W, U+W and U/(U∩W) for dense spanning sets."""
    if dim is None:
        dim = len(u_vectors[0]) if u_vectors else len(w_vectors[0])
    u = Subspace(dim, u_vectors)
    w = Subspace(dim, w_vectors)
    cap = intersection(u, w)
    return {
        "dim_u": u.rank,
        "dim_w": w.rank,
        "intersection": cap.rank,
        "sum": subspace_sum(u, w).rank,
        "quotient": u.rank - cap.rank,
        "intersection_basis": cap.dense_basis(),
    }


def reduce_modulo(vec: Mapping[int, object], space: Subspace) -> dict:
    """Canonical remainder of vec modulo the span (normal form w.r.t. the reduced basis)."""
    row = dict(vec)
    for b in space.basis:
        p = min(b)
        c = row.get(p)
        if c:
            for j, v in b.items():
                nv = row.get(j, 0) - c * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return row
