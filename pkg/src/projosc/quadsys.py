"""Systems of quadrics: prolongations, linear syzygies, relations and related constructions."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Sequence

from .exactalg import (
    MPoly,
    Subspace,
    as_rat,
    format_poly,
    kernel_of_columns,
    monomials,
    parse_poly,
    rref_basis,
    sparse_kernel,
    sparse_rank,
    t_names,
)
from .tensor import SymForm, SymSpace, contract, form_rank


@dataclass(frozen=True)
class QuadricSystem:
    """A spanning set of quadrics in n variables; `basis` is the reduced basis of the span."""

    n: int
    gens: tuple

    def __post_init__(self):
        gens = tuple(g if isinstance(g, SymForm) else SymForm.from_poly(g, 2) for g in self.gens)
        for g in gens:
            if g.k != 2 or g.n != self.n:
                raise ValueError("every generator must be a quadric in n variables")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def from_polys(cls, n: int, polys: Sequence[MPoly]) -> "QuadricSystem":
        return cls(n, tuple(SymForm.from_poly(p, 2) for p in polys))

    @classmethod
    def from_strings(cls, n: int, texts: Sequence[str]) -> "QuadricSystem":
        return cls.from_polys(n, [parse_poly(s, t_names(n)) for s in texts])

    @property
    def space(self) -> SymSpace:
        return SymSpace(self.n, 2)

    @property
    def basis(self) -> list[SymForm]:
        rows = rref_basis(g.vector() for g in self.gens)
        sp = self.space
        return [SymForm(sp, [r.get(i, 0) for i in range(sp.dim)]) for r in rows]

    @property
    def a(self) -> int:
        return sparse_rank(g.vector() for g in self.gens)

    def independent(self) -> bool:
        return self.a == len(self.gens)

    def working_quadrics(self) -> list[MPoly]:
        """The generators if independent, otherwise the reduced basis."""
        forms = self.gens if self.independent() else self.basis
        return [f.to_poly() for f in forms]

    def to_spec(self, label: str = "") -> dict:
        return {"label": label, "n": self.n,
                "quadrics": [format_poly(g.to_poly(), t_names(self.n)) for g in self.gens]}


def system_from_spec(spec: dict | str) -> tuple[QuadricSystem, str]:
    if isinstance(spec, str):
        spec = json.loads(spec)
    try:
        n = int(spec["n"])
        texts = spec["quadrics"]
    except KeyError as exc:
        raise ValueError(f"quadric system spec is missing field {exc}") from None
    return QuadricSystem.from_strings(n, texts), spec.get("label", "")


@dataclass
class SyzygyCert:
    """A relation sum_i coeffs[i] * terms[i] = 0 among polynomials in n variables.

    kind is one of "Linear", "Quadratic", "HigherRelation(e)", "Koszul".  For
    relations among the quadrics themselves, `relation` holds the polynomial in
    the quadric symbols z1..za.
    """

    kind: str
    coeffs: list
    terms: list
    relation: MPoly | None = None

    def evaluate(self) -> MPoly:
        n = self.terms[0].nvars if self.terms else 0
        out = MPoly.zero(n)
        for c, t in zip(self.coeffs, self.terms):
            out = out + c * t
        return out

    def verify(self) -> bool:
        return self.evaluate().is_zero() and any(not c.is_zero() for c in self.coeffs)

    def describe(self) -> str:
        n = self.terms[0].nvars if self.terms else 0
        names = t_names(n)
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"({format_poly(c, names)})*Q{i + 1}")
        return " + ".join(parts) + " = 0"


# ---------------------------------------------------------------------------
# prolongation and bracket part


def _annihilator(A: QuadricSystem) -> list[dict]:
    return sparse_kernel([g.vector() for g in A.gens], A.space.dim)


def prolongation(A: QuadricSystem) -> list[SymForm]:
    """Cubics P all of whose first partials lie in span A."""
    n = A.n
    s2 = SymSpace(n, 2)
    s3 = SymSpace(n, 3)
    ann = _annihilator(A)
    rows = []
    for lam in ann:
        for j in range(n):
            row: dict = {}
            for i2, c in lam.items():
                e = list(s2.basis[i2])
                mult = e[j] + 1
                e[j] += 1
                col = s3.index[tuple(e)]
                row[col] = row.get(col, 0) + c * mult
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    ker = sparse_kernel(rows, s3.dim)
    return [SymForm(s3, [r.get(i, 0) for i in range(s3.dim)]) for r in rref_basis(ker)]


def _linear_forms(n: int) -> list[MPoly]:
    return [MPoly.var(n, i) for i in range(n)]


def bracket_part(A: QuadricSystem) -> list[SyzygyCert]:
    """Linear syzygies sum_mu l_mu q^mu = 0 among a basis of A (kernel of A ⊗ T* -> S^3)."""
    n = A.n
    qs = [f.to_poly() for f in A.basis]
    xs = _linear_forms(n)
    cols = []
    for q in qs:
        for x in xs:
            cols.append((q * x).terms)
    ker = rref_basis(kernel_of_columns(cols))
    out = []
    for z in ker:
        ls = []
        for mu in range(len(qs)):
            terms = {}
            for j in range(n):
                c = z.get(mu * n + j)
                if c:
                    terms[tuple(int(i == j) for i in range(n))] = c
            ls.append(MPoly(n, terms))
        out.append(SyzygyCert("Linear", ls, qs))
    return out


def symmetric_tensor_dims(A: QuadricSystem) -> dict:
    """dim A⊗T*, dim A^(1), dim A^[1] and the rank of A⊗T* -> S^3."""
    a, n = A.a, A.n
    pro = len(prolongation(A))
    br = len(bracket_part(A))
    return {"tensor": a * n, "prolongation": pro, "bracket": br, "image": a * n - br}


# ---------------------------------------------------------------------------
# relations and bigraded syzygies


@dataclass
class BigradedSyzygies:
    """Kernel of Q[z]_k ⊗ S^p T* -> S^(2k+p) T*, z_mu -> q^mu."""

    k: int
    p: int
    total: int
    lower: int        # dim of the part generated from bidegrees (k-1, p) and (k, p-1)
    koszul: int       # dim of the span of Koszul multiples
    accounted: int    # dim of lower + koszul
    basis: list = field(repr=False, default_factory=list)   # MPolys in z1..za, w1..wn

    @property
    def new(self) -> int:
        return self.total - self.accounted


class _SyzygyEngine:
    def __init__(self, A: QuadricSystem):
        self.n = A.n
        self.qs = A.working_quadrics()
        self.a = len(self.qs)
        self.nv = self.a + self.n
        self._cache: dict = {}

    def _monos(self, k, p):
        zs = monomials(self.a, k) if self.a else [()]
        ws = monomials(self.n, p)
        return [z + w for z in zs for w in ws]

    def _image(self, exp):
        z, w = exp[: self.a], exp[self.a:]
        out = MPoly.monomial(w)
        for mu, e in enumerate(z):
            for _ in range(e):
                out = out * self.qs[mu]
        return out

    def space(self, k, p) -> tuple[list, list[MPoly]]:
        key = (k, p)
        if key in self._cache:
            return self._cache[key]
        if k < 0 or p < 0 or (k == 0):
            res = ([], [])
            self._cache[key] = res
            return res
        monos = self._monos(k, p)
        cols = [self._image(e).terms for e in monos]
        ker = rref_basis(kernel_of_columns(cols))
        polys = [MPoly(self.nv, {monos[i]: c for i, c in z.items()}) for z in ker]
        res = (monos, polys)
        self._cache[key] = res
        return res

    def koszul_elements(self, k, p) -> list[MPoly]:
        if k < 1 or p < 2:
            return []
        out = []
        zvars = [MPoly.var(self.nv, i) for i in range(self.a)]
        lifted = [self._lift_w(q) for q in self.qs]
        base = []
        for mu, nu in combinations(range(self.a), 2):
            base.append(lifted[nu] * zvars[mu] - lifted[mu] * zvars[nu])
        for m in self._monos(k - 1, p - 2):
            mono = MPoly.monomial(m)
            out.extend(b * mono for b in base)
        return out

    def _lift_w(self, q: MPoly) -> MPoly:
        return MPoly(self.nv, {(0,) * self.a + e: c for e, c in q.terms.items()})

    def report(self, k, p) -> BigradedSyzygies:
        monos, polys = self.space(k, p)
        index = {e: i for i, e in enumerate(monos)}

        def vec(P):
            return {index[e]: c for e, c in P.terms.items()}

        lower_polys = []
        _, below_z = self.space(k - 1, p)
        _, below_w = self.space(k, p - 1)
        zvars = [MPoly.var(self.nv, i) for i in range(self.a)]
        wvars = [MPoly.var(self.nv, self.a + j) for j in range(self.n)]
        lower_polys += [P * z for P in below_z for z in zvars]
        lower_polys += [P * w for P in below_w for w in wvars]
        kos = self.koszul_elements(k, p)
        lower_rank = sparse_rank(vec(P) for P in lower_polys)
        kos_rank = sparse_rank(vec(P) for P in kos)
        acc = sparse_rank(vec(P) for P in lower_polys + kos)
        return BigradedSyzygies(k, p, len(polys), lower_rank, kos_rank, acc, polys)


def syzygies(A: QuadricSystem, k: int, p: int) -> BigradedSyzygies:
    return _SyzygyEngine(A).report(k, p)


@dataclass
class RelationReport:
    e: int
    a: int
    relations: BigradedSyzygies            # bidegree (e, 0): polynomials in the quadrics
    mixed: list                            # bidegrees (k, 2(e-k)), 1 <= k < e

    @property
    def dim(self) -> int:
        return self.relations.total

    @property
    def quotient(self) -> int:
        return self.relations.new

    @property
    def koszul(self) -> int:
        return sum(m.koszul for m in self.mixed)

    def relation_polys(self) -> list[MPoly]:
        """Relations as polynomials in z1..za."""
        a = self.a
        return [MPoly(a, {e[:a]: c for e, c in P.terms.items()}) for P in self.relations.basis]


def relations(A: QuadricSystem, e: int, mixed: bool = True) -> RelationReport:
    if e < 2:
        raise ValueError("relations are computed in degree e >= 2")
    eng = _SyzygyEngine(A)
    pure = eng.report(e, 0)
    mixed_reports = [eng.report(k, 2 * (e - k)) for k in range(1, e)] if mixed else []
    return RelationReport(e, eng.a, pure, mixed_reports)


def quadratic_relations(A: QuadricSystem) -> list[MPoly]:
    return relations(A, 2, mixed=False).relation_polys()


def nonkoszul_count(A: QuadricSystem, degree: int) -> dict:
    """New (not Koszul, not generated from lower) syzygies producing equations of the given degree.

    A syzygy of bidegree (k, p) yields an equation of degree k + p.
    """
    eng = _SyzygyEngine(A)
    per = {}
    for k in range(1, degree + 1):
        r = eng.report(k, degree - k)
        per[(k, degree - k)] = r.new
    return {"total": sum(per.values()), "by_bidegree": per}


# ---------------------------------------------------------------------------
# constructive syzygies and rank bounds


def _sym_matrix_of_relation(c: MPoly) -> list[list[Fraction]]:
    a = c.nvars
    m = [[Fraction(0)] * a for _ in range(a)]
    for e, v in c.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        if len(idx) != 2:
            raise ValueError("a quadratic relation must be homogeneous of degree 2 in the quadrics")
        i, j = idx
        if i == j:
            m[i][i] += v
        else:
            m[i][j] += v / 2
            m[j][i] += v / 2
    return m


def _candidate_vectors(n: int):
    for i in range(n):
        yield [int(k == i) for k in range(n)]
    for i, j in combinations(range(n), 2):
        yield [int(k in (i, j)) for k in range(n)]
    for scale in (2, 3, -1, Fraction(1, 2), -2):
        for i, j in combinations(range(n), 2):
            yield [1 if k == i else (scale if k == j else 0) for k in range(n)]


def syzygy_from_relation(A: QuadricSystem, c: MPoly) -> SyzygyCert:
    """A linear syzygy built from a quadratic relation by contracting with a vector."""
    qs = A.working_quadrics()
    if c.nvars != len(qs):
        raise ValueError("relation must be a polynomial in one symbol per quadric")
    if c.is_zero():
        raise ValueError("trivial relation")
    check = MPoly.zero(A.n)
    for e, v in c.terms.items():
        term = MPoly.const(A.n, v)
        for mu, k in enumerate(e):
            for _ in range(k):
                term = term * qs[mu]
        check = check + term
    if not check.is_zero():
        raise ValueError("input is not a relation among the quadrics")
    cm = _sym_matrix_of_relation(c)
    forms = [SymForm.from_poly(q, 2) for q in qs]
    for v in _candidate_vectors(A.n):
        contr = [contract(v, f).to_poly() for f in forms]
        ls = []
        for nu in range(len(qs)):
            acc = MPoly.zero(A.n)
            for mu in range(len(qs)):
                if cm[mu][nu]:
                    acc = acc + contr[mu].scale(cm[mu][nu])
            ls.append(acc)
        cert = SyzygyCert("Linear", ls, qs)
        if cert.verify():
            return cert
        if any(not l.is_zero() for l in ls):
            raise AssertionError("contracted relation failed to give a syzygy")
    raise AssertionError("no contraction vector produced a nontrivial syzygy")


@dataclass
class RankBoundResult:
    passed: bool
    bound: int
    max_rank: int
    checked: int
    ranks_of_generators: list


def rank_bound_check(quadrics: Sequence[MPoly], linear: Sequence[MPoly], samples: int = 50,
                     seed: int = 0) -> RankBoundResult:
    """Check rank Q <= 2(p-1) on span{Q_i} for a linear syzygy sum_i l_i Q_i = 0."""
    p = len(quadrics)
    if p != len(linear) or p == 0:
        raise ValueError("need as many linear forms as quadrics")
    n = quadrics[0].nvars
    cert = SyzygyCert("Linear", list(linear), list(quadrics))
    if not cert.evaluate().is_zero():
        raise ValueError("the given forms do not satisfy sum l_i Q_i = 0")
    lvecs = [{j: l.coeff(tuple(int(i == j) for i in range(n))) for j in range(n)} for l in linear]
    if sparse_rank(lvecs) != p:
        raise ValueError("the linear forms are not independent")
    qvecs = [SymForm.from_poly(q, 2).vector() for q in quadrics]
    if sparse_rank(qvecs) != p:
        raise ValueError("the quadrics are not independent")
    bound = 2 * (p - 1)
    combos = [[int(i == j) for j in range(p)] for i in range(p)]
    combos += [[int(j in (i, k)) for j in range(p)] for i, k in combinations(range(p), 2)]
    combos.append([1] * p)
    rng = random.Random(seed)
    for _ in range(samples):
        combos.append([rng.randint(-5, 5) for _ in range(p)])
    max_rank = 0
    for lam in combos:
        if not any(lam):
            continue
        Q = MPoly.zero(n)
        for c, q in zip(lam, quadrics):
            if c:
                Q = Q + q.scale(c)
        max_rank = max(max_rank, form_rank(Q))
    gen_ranks = [form_rank(q) for q in quadrics]
    return RankBoundResult(max_rank <= bound, bound, max_rank, len(combos), gen_ranks)


def _random_cyclic_free_b(p: int, rng: random.Random) -> list:
    """b[j][i][k] symmetric in (i, k) whose full symmetrization vanishes."""
    b = [[[Fraction(0)] * p for _ in range(p)] for _ in range(p)]
    for j in range(p):
        for i in range(p):
            for k in range(i, p):
                b[j][i][k] = b[j][k][i] = Fraction(rng.randint(-3, 3))
    sym = {}
    for key in combinations_with_replacement(range(p), 3):
        perms = list(permutations(key))
        sym[key] = sum(b[x][y][z] for x, y, z in perms) / len(perms)
    for j in range(p):
        for i in range(p):
            for k in range(p):
                b[j][i][k] -= sym[tuple(sorted((j, i, k)))]
    return b


def extremal_syzygy_system(p: int, n: int, b: str | list | None = "zero", use_m: bool = True,
                           seed: int = 0) -> tuple[QuadricSystem, SyzygyCert]:
    """Quadrics q^j = b^j_ik l^i l^k + m^j_k l^k with antisymmetric m and the syzygy sum_j l^j q^j = 0.

    l^i are the first p coordinates; when use_m is set the m_ij (i < j) are
    further independent coordinates.  b may be "zero", "random" (symmetric in
    its lower pair with vanishing full symmetrization) or an explicit array.
    """
    if p < 1:
        raise ValueError("need p >= 1")
    need = p + comb(p, 2) if use_m else p
    if n < need:
        raise ValueError(f"n too small: need n >= {need} for p = {p}")
    rng = random.Random(seed)
    if b is None or b == "zero":
        barr = [[[Fraction(0)] * p for _ in range(p)] for _ in range(p)]
    elif b == "random":
        barr = _random_cyclic_free_b(p, rng)
    else:
        barr = [[[as_rat(x) for x in row] for row in mat] for mat in b]
    if not use_m and not any(x for mat in barr for row in mat for x in row):
        raise ValueError("degenerate system: b = 0 and m = 0 give zero quadrics")
    ls = [MPoly.var(n, i) for i in range(p)]
    m = [[MPoly.zero(n) for _ in range(p)] for _ in range(p)]
    if use_m:
        slot = p
        for i, j in combinations(range(p), 2):
            m[i][j] = MPoly.var(n, slot)
            m[j][i] = -MPoly.var(n, slot)
            slot += 1
    qs = []
    for j in range(p):
        q = MPoly.zero(n)
        for i in range(p):
            for k in range(p):
                if barr[j][i][k]:
                    q = q + (ls[i] * ls[k]).scale(barr[j][i][k])
        for k in range(p):
            q = q + m[j][k] * ls[k]
        qs.append(q)
    cert = SyzygyCert("Linear", ls, qs)
    if not cert.evaluate().is_zero():
        raise AssertionError("planted syzygy does not vanish")
    return QuadricSystem.from_polys(n, qs), cert


def random_syzygy_system(p: int, n: int, rng: random.Random):
    """Random instance of sum_i l^i Q_i = 0 with Q_i = sum_j m_ij l^j, m antisymmetric linear forms."""
    if p < 2:
        raise ValueError("a linear syzygy of this shape needs p >= 2")
    while True:
        ls = [MPoly(n, {tuple(int(i == j) for i in range(n)): rng.randint(-3, 3) for j in range(n)})
              for _ in range(p)]
        if sparse_rank([{j: l.coeff(tuple(int(i == j) for i in range(n))) for j in range(n)} for l in ls]) < p:
            continue
        m = [[MPoly.zero(n) for _ in range(p)] for _ in range(p)]
        for i, j in combinations(range(p), 2):
            f = MPoly(n, {tuple(int(i2 == k) for i2 in range(n)): rng.randint(-3, 3) for k in range(n)})
            m[i][j] = f
            m[j][i] = -f
        qs = []
        for i in range(p):
            q = MPoly.zero(n)
            for j in range(p):
                q = q + m[i][j] * ls[j]
            qs.append(q)
        if sparse_rank([SymForm.from_poly(q, 2).vector() for q in qs if not q.is_zero()]) == p and all(
                not q.is_zero() for q in qs):
            return qs, ls


# ---------------------------------------------------------------------------
# thresholds and the variety attached to a quadric system


@dataclass(frozen=True)
class Thresholds:
    n: int
    a: int
    b_sing: int
    prolongation_forced_zero: bool
    no_linear_syzygies_forced: bool
    ci_if_quadric_generated: bool


def thresholds(n: int, a: int, b_sing: int = -1) -> Thresholds:
    """Codimension thresholds; b_sing is the dimension of the singular locus (-1 if smooth)."""
    if b_sing < -1:
        raise ValueError("b_sing must be at least -1")
    pro = Fraction(a) < Fraction(n + 1 - (b_sing + 1), 2)
    lin = Fraction(a) < Fraction(n - (b_sing + 1) + 3, 3)
    return Thresholds(n, a, b_sing, pro, lin, lin)


def variety_from_quadrics(A: QuadricSystem, label: str = ""):
    """t -> [1, t, Q^1(t), ..., Q^a(t)]."""
    from .variety import ParamVariety
    n = A.n
    qs = A.working_quadrics()
    coords = [MPoly.const(n, 1)] + [MPoly.var(n, i) for i in range(n)] + qs
    return ParamVariety(n, len(qs), tuple(coords), label or "from-quadrics")
