"""Osculating hypersurfaces: kernels of jet maps, dimension laws, Monge systems and CI tests."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactalg import (
    Jet,
    MPoly,
    PowerCache,
    Subspace,
    as_rat,
    jet_pow_rational,
    kernel_of_columns,
    monomials,
    rank_of_columns,
    reduce_modulo,
    rref_basis,
    solve_sparse,
    sparse_rank,
)
from .quadsys import QuadricSystem, bracket_part, nonkoszul_count
from .variety import (
    AdaptedChart,
    FundData,
    ParamVariety,
    adapt_at_point,
    adapted_frame,
    conormal_filtration,
    form_space,
    ideal_slice,
    is_in_ideal_exact,
    third_fundamental_form,
    times_forms,
    times_linear,
)
from .tensor import from_sym_array, to_sym_array


def _pullback_columns(c: AdaptedChart, d: int, k: int):
    if k > c.cap:
        raise ValueError(f"osculation order {k} exceeds the chart cap {c.cap}")
    args = [j.base.truncate(k) for j in c.adapted_coords()]
    cache = PowerCache(args, k)
    basis = monomials(c.n + c.a + 1, d)
    return basis, [cache.monomial(e).terms for e in basis]


def _singular_slots(c: AdaptedChart, d: int, basis) -> list[int]:
    N1 = c.n + c.a + 1
    index = {e: i for i, e in enumerate(basis)}
    out = []
    for mu in range(c.a):
        e = [0] * N1
        e[0] = d - 1
        e[c.n + 1 + mu] += 1
        out.append(index[tuple(e)])
    return out


class OsculationSpace:
    """Degree-d forms (in adapted coordinates y0..yN) whose pullback vanishes through order k.

    The dimension comes from a rank computation; the basis is computed on demand.
    """

    def __init__(self, chart: AdaptedChart, d: int, k: int, singular: bool = False):
        self.chart = chart
        self.d = d
        self.k = k
        self.n = chart.n
        self.a = chart.a
        self.singular = singular
        self.monomial_basis, cols = _pullback_columns(chart, d, k)
        if singular:
            for slot, idx in enumerate(_singular_slots(chart, d, self.monomial_basis)):
                cols[idx] = dict(cols[idx])
                cols[idx][("singular", slot)] = Fraction(1)
        self._cols = cols
        self.dim = len(cols) - rank_of_columns(cols)
        self._basis = None
        v = chart.variety
        self.stabilized = v.series_order is None and k >= d * v.param_degree

    @property
    def projective_dim(self) -> int:
        return self.dim - 1

    @property
    def basis(self) -> list[MPoly]:
        if self._basis is None:
            ker = rref_basis(kernel_of_columns(self._cols))
            N1 = self.n + self.a + 1
            self._basis = [MPoly(N1, {self.monomial_basis[i]: x for i, x in z.items()}) for z in ker]
            if len(self._basis) != self.dim:
                raise AssertionError("kernel basis size disagrees with the rank count")
        return self._basis

    def space(self) -> Subspace:
        return form_space(self.basis, self.n + self.a + 1, self.d)

    def original_basis(self) -> list[MPoly]:
        return [self.chart.to_original(P) for P in self.basis]


def osculating_space(c: AdaptedChart, d: int, k: int) -> OsculationSpace:
    return OsculationSpace(c, d, k)


def singular_osculating(c: AdaptedChart, d: int, k: int) -> OsculationSpace:
    """Osculating forms with no x^mu (x^0)^(d-1) terms (singular at the point)."""
    return OsculationSpace(c, d, k, singular=True)


# ---------------------------------------------------------------------------
# dimension laws


def expected_dim_316(n: int, a: int, d: int, p: int) -> int:
    if p > d:
        raise ValueError("the dimension formula needs p <= d")
    return comb(n + a + d, d) - sum(comb(n + j - 1, j) for j in range(p + 1))


@dataclass
class BoundCheck:
    passed: bool
    expected: int
    actual: int
    d: int
    order: int

    @property
    def projective_expected(self):
        return self.expected - 1

    @property
    def projective_actual(self):
        return self.actual - 1


def check_316(c: AdaptedChart, d: int, p: int) -> BoundCheck:
    exp = expected_dim_316(c.n, c.a, d, p)
    act = osculating_space(c, d, p).dim
    return BoundCheck(exp == act, exp, act, d, p)


def lower_bound_317(c: AdaptedChart, d: int) -> BoundCheck:
    bound = comb(c.a + d - 1, d)
    act = osculating_space(c, d, 2 * d - 1).dim
    return BoundCheck(act >= bound, bound, act, d, 2 * d - 1)


# ---------------------------------------------------------------------------
# (CI) test with 2d derivatives


@dataclass
class CI2ddResult:
    d: int
    passed: bool
    singular_osculators: int
    trivial_singular: int
    degenerate: bool
    witness: MPoly | None = None        # in the original coordinates
    witness_adapted: MPoly | None = None


def _sing_subspace(space: Subspace, slots: Sequence[int]) -> Subspace:
    """Elements of the span with zero coefficient at every slot."""
    cols = []
    for b in space.basis:
        cols.append({j: b[j] for j in slots if j in b})
    ker = kernel_of_columns(cols)
    vecs = []
    for z in ker:
        acc: dict = {}
        for i, x in z.items():
            for j, v in space.basis[i].items():
                acc[j] = acc.get(j, 0) + x * v
        vecs.append({j: v for j, v in acc.items() if v})
    return Subspace(space.dim, vecs)


def ci_2dd_test(v: ParamVariety, t0=None, d: int = 2, chart: AdaptedChart | None = None) -> CI2ddResult:
    if chart is None or chart.cap < 2 * d:
        chart = adapt_at_point(v, t0, max(2 * d, 2))
    N1 = v.ambient
    K = singular_osculating(chart, d, 2 * d)
    lower = ideal_slice(v, d - 1) if d >= 2 else ()
    degenerate = d >= 2 and len(ideal_slice(v, 1)) > 0
    lower_adapted = [chart.to_adapted(P) for P in lower]
    W = times_linear(lower_adapted, N1, d) if lower_adapted else Subspace(len(K.monomial_basis), [])
    slots = _singular_slots(chart, d, K.monomial_basis)
    Wsing = _sing_subspace(W, slots)
    Kspace = K.space()
    for b in Kspace.basis:
        if not Wsing.contains(b):
            rem = reduce_modulo(b, Wsing)
            P = MPoly(N1, {K.monomial_basis[i]: x for i, x in rem.items()})
            P = _normalize(P)
            return CI2ddResult(d, False, K.dim, Wsing.rank, degenerate, _normalize(chart.to_original(P)), P)
    return CI2ddResult(d, True, K.dim, Wsing.rank, degenerate)


def _normalize(P: MPoly) -> MPoly:
    if P.is_zero():
        return P
    return P.scale(1 / P.sorted_terms()[0][1])


# ---------------------------------------------------------------------------
# Monge system for quadrics


@dataclass
class StageSolution:
    solvable: bool
    unknowns: int
    solution_dim: int        # dimension of the affine solution set (-1 if empty)
    particular: dict | None


@dataclass
class MongeReport:
    n: int
    a: int
    ker_dims: dict           # order -> vector dim of the order-k osculating quadrics
    bounds: dict             # order -> bound (vector form)
    equality: dict           # order -> dim == bound
    stages: dict             # 3, 4, 5 -> StageSolution
    hypotheses: dict         # name -> bool
    verdict: str
    a_coeffs: list | None = None      # a[mu][nu][gamma]
    b_coeffs: list | None = None      # b[mu][nu][tau], symmetric in nu, tau
    generators: list = field(default_factory=list)             # original coordinates
    generators_adapted: list = field(default_factory=list)
    membership: str = "not checked"

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())


class _MongeUnknowns:
    def __init__(self, n, a, with_b):
        self.n, self.a = n, a
        self.index = {}
        for mu in range(a):
            for nu in range(a):
                for ga in range(n):
                    self.index[("a", mu, nu, ga)] = len(self.index)
        if with_b:
            for mu in range(a):
                for nu in range(a):
                    for tau in range(nu, a):
                        self.index[("b", mu, nu, tau)] = len(self.index)

    def __len__(self):
        return len(self.index)


def _monge_equations(parts, n, a, unk: _MongeUnknowns, orders):
    """Rows/rhs of the jet conditions at the given orders.

    Generator for mu: y^mu y^0 - q^mu(y) - sum a[mu,nu,ga] y^nu y^ga - sum_{nu<=tau} B[mu,nu,tau] y^nu y^tau.
    """
    rows, rhs = [], []
    svars = [MPoly.var(n, g) for g in range(n)]
    for k in orders:
        for mu in range(a):
            # coefficient polynomials per unknown
            contrib: dict = {}
            for nu in range(a):
                low = parts[nu].get(k - 1)
                if low is not None and not low.is_zero():
                    for ga in range(n):
                        contrib[unk.index[("a", mu, nu, ga)]] = low * svars[ga]
            if any(key[0] == "b" for key in unk.index):
                for nu in range(a):
                    for tau in range(nu, a):
                        acc = MPoly.zero(n)
                        for i in range(2, k - 1):
                            j = k - i
                            pi, pj = parts[nu].get(i), parts[tau].get(j)
                            if pi is not None and pj is not None:
                                acc = acc + pi * pj
                        if not acc.is_zero():
                            contrib[unk.index[("b", mu, nu, tau)]] = acc
            target = parts[mu][k]
            monos = set(target.terms)
            for p in contrib.values():
                monos |= set(p.terms)
            for m in sorted(monos):
                row = {u: p.coeff(m) for u, p in contrib.items() if p.coeff(m)}
                rows.append(row)
                rhs.append(target.coeff(m))
    return rows, rhs


def _solve_stage(parts, n, a, with_b, orders) -> StageSolution:
    unk = _MongeUnknowns(n, a, with_b)
    rows, rhs = _monge_equations(parts, n, a, unk, orders)
    part, null = solve_sparse(rows, rhs, len(unk))
    if part is None:
        return StageSolution(False, len(unk), -1, None)
    named = {key: part.get(i, Fraction(0)) for key, i in unk.index.items()}
    return StageSolution(True, len(unk), len(null), named)


def _chart_parts(c: AdaptedChart, upto: int):
    return [{k: fm.part(k) for k in range(2, upto + 1)} for fm in c.f]


def monge_quadrics(c: AdaptedChart, verify: bool = True) -> MongeReport:
    if c.cap < 5:
        raise ValueError("the Monge system needs a chart cap of at least 5")
    n, a = c.n, c.a
    parts = _chart_parts(c, 5)
    quads = [p[2] for p in parts]
    rank_q = sparse_rank([{e: x for e, x in q.terms.items()} for q in quads]) if a else 0
    iii = third_fundamental_form(c)
    nonzero_q = [q for q in quads if not q.is_zero()]
    syz = bracket_part(QuadricSystem.from_polys(n, nonzero_q)) if nonzero_q else []
    hyp = {
        "second_fundamental_form_injective": rank_q == a,
        "third_fundamental_form_zero": len(iii) == 0,
        "no_linear_syzygies": len(syz) == 0,
    }
    ker = {k: osculating_space(c, 2, k).dim for k in (3, 4, 5)}
    bounds = {3: a + comb(a + 1, 2), 4: a}
    equality = {k: ker[k] == bounds[k] for k in bounds}
    st3 = _solve_stage(parts, n, a, False, [3])
    st4 = _solve_stage(parts, n, a, True, [3, 4])
    st5 = _solve_stage(parts, n, a, True, [3, 4, 5])
    stages = {3: st3, 4: st4, 5: st5}
    if not hyp["second_fundamental_form_injective"] or not hyp["third_fundamental_form_zero"] \
            or not hyp["no_linear_syzygies"]:
        verdict = "HypothesisFails"
    elif not st3.solvable:
        verdict = "Order3Fails"
    elif not st4.solvable:
        verdict = "Order4Fails"
    elif not st5.solvable:
        verdict = "Order5Fails"
    else:
        verdict = "MongeHolds"
    rep = MongeReport(n, a, ker, bounds, equality, stages, hyp, verdict)
    best = st5 if st5.solvable else None
    if best is not None:
        acoef = [[[best.particular[("a", mu, nu, ga)] for ga in range(n)] for nu in range(a)] for mu in range(a)]
        bcoef = [[[Fraction(0)] * a for _ in range(a)] for _ in range(a)]
        for mu in range(a):
            for nu in range(a):
                for tau in range(nu, a):
                    B = best.particular[("b", mu, nu, tau)]
                    val = B if nu == tau else B / 2
                    bcoef[mu][nu][tau] = bcoef[mu][tau][nu] = val
        rep.a_coeffs, rep.b_coeffs = acoef, bcoef
    if verdict == "MongeHolds":
        gens_adapted = _monge_generators(c, quads, best.particular)
        gens = [c.to_original(P) for P in gens_adapted]
        ok = all(is_in_ideal_exact(c.variety, P) for P in gens) if verify else True
        v = c.variety
        if ok:
            rep.generators, rep.generators_adapted = gens, gens_adapted
            if not verify:
                rep.membership = "not checked"
            elif v.series_order is None:
                rep.membership = "exact"
            else:
                rep.membership = f"verified through order {v.series_order}"
        else:
            rep.membership = "failed"
    return rep


def _monge_generators(c: AdaptedChart, quads, sol) -> list[MPoly]:
    n, a = c.n, c.a
    N1 = n + a + 1
    y = [MPoly.var(N1, i) for i in range(N1)]

    def lift_tangent(q: MPoly) -> MPoly:
        return MPoly(N1, {(0,) + e + (0,) * a: x for e, x in q.terms.items()})

    out = []
    for mu in range(a):
        P = y[n + 1 + mu] * y[0] - lift_tangent(quads[mu])
        for nu in range(a):
            for ga in range(n):
                x = sol[("a", mu, nu, ga)]
                if x:
                    P = P - (y[n + 1 + nu] * y[1 + ga]).scale(x)
            for tau in range(nu, a):
                x = sol[("b", mu, nu, tau)]
                if x:
                    P = P - (y[n + 1 + nu] * y[n + 1 + tau]).scale(x)
        out.append(P)
    return out


def predict_higher_variations(d: FundData, a_coeffs, b_coeffs, k: int) -> tuple:
    """Degree-k Taylor data forced by f = q + a(f, s) + b(f, f), as symmetric arrays."""
    if k < 3:
        raise ValueError("predictions start at degree 3")
    n, a = d.n, d.a
    q = [from_sym_array(d.q[mu], n, 2) for mu in range(a)]
    s = [MPoly.var(n, g) for g in range(n)]
    f = list(q)
    for _ in range(k):
        nxt = []
        for mu in range(a):
            acc = q[mu]
            for nu in range(a):
                for ga in range(n):
                    x = as_rat(a_coeffs[mu][nu][ga])
                    if x:
                        acc = acc + f[nu].mul(s[ga], k).scale(x)
                for tau in range(a):
                    x = as_rat(b_coeffs[mu][nu][tau])
                    if x:
                        acc = acc + f[nu].mul(f[tau], k).scale(x)
            nxt.append(acc.truncate(k))
        if nxt == f:
            break
        f = nxt
    return tuple(to_sym_array(fm.homogeneous_part(k), k) for fm in f)


# ---------------------------------------------------------------------------
# generalized Monge profile


@dataclass
class ProfileRow:
    k: int
    j: int
    conormal_dim: int        # dim of ker FF^(2k) of v_k modulo its singular part
    expected: int
    literal_expected: int
    ok: bool
    literal_ok: bool
    ci2dd: bool


@dataclass
class ProfileReport:
    degrees: tuple
    increments: tuple
    rows: list
    passed: bool
    filtration: list          # per j: dim of {dP : P in ker FF^(2 d_j) of v_(d_j)}
    note: str


def monge_profile(v: ParamVariety, t0, degrees: Sequence[int], increments: Sequence[int]) -> ProfileReport:
    degrees = tuple(degrees)
    increments = tuple(increments)
    if len(degrees) != len(increments) or list(degrees) != sorted(set(degrees)):
        raise ValueError("degrees must be strictly increasing, one increment per degree")
    if sum(increments) != v.a:
        raise ValueError("increments must add up to the codimension")
    chart = adapt_at_point(v, t0, 2 * degrees[-1])
    rows = []
    prev_d = 0
    filt = []
    for j, (dj, aj) in enumerate(zip(degrees, increments)):
        before = sum(increments[:j])
        upto = before + aj
        for k in range(prev_d + 1, dj + 1):
            full = osculating_space(chart, k, 2 * k).dim
            sing = singular_osculating(chart, k, 2 * k).dim
            cd = full - sing
            expected = upto if k == dj else before
            ci = ci_2dd_test(v, t0, k, chart=chart).passed
            rows.append(ProfileRow(k, j + 1, cd, expected, upto, cd == expected, cd == upto, ci))
            if k == dj:
                filt.append(cd)
        prev_d = dj
    passed = all(r.ok and r.ci2dd for r in rows)
    note = ("degrees strictly between consecutive jumps are compared with the sum of the earlier "
            "increments; literal_ok records the comparison with the running total including the current one")
    return ProfileReport(degrees, increments, rows, passed, filt if passed else [], note)


# ---------------------------------------------------------------------------
# classical Monge equation for plane curves


def classical_monge_residual(y: Jet) -> Jet:
    """Third derivative of (y''/y''(0))^(-2/3) for a graph y(t) of a plane curve."""
    if y.nvars != 1:
        raise ValueError("the classical Monge residual is for curves y(t) in one variable")
    if y.cap < 5:
        raise ValueError("the jet needs a cap of at least 5")
    y2 = y.diff(0).diff(0)
    c = y2.constant()
    if not c:
        raise ValueError("y''(0) = 0: apply at a point where y'' is nonzero")
    unit = y2 * (1 / c)
    w = jet_pow_rational(unit, Fraction(-2, 3))
    return w.diff(0).diff(0).diff(0)


# ---------------------------------------------------------------------------
# generation by quadrics


@dataclass
class GenerationRow:
    e: int
    dim_ideal: int
    dim_from_quadrics: int
    excess: int
    excess_generators: list
    nonkoszul: int | None


@dataclass
class GenerationReport:
    conormal_ok: bool
    conormal_dim: int
    rows: list
    generated: bool
    max_degree: int


def quadratic_generation_check(v: ParamVariety, t0=None, D: int = 3, account: bool = True) -> GenerationReport:
    filt = conormal_filtration(v, t0, 2)
    cond1 = filt.dims[-1] == v.a
    N1 = v.ambient
    I2 = ideal_slice(v, 2)
    II = None
    if account:
        chart = adapt_at_point(v, t0, 2)
        quads = [fm.part(2) for fm in chart.f if not fm.part(2).is_zero()]
        II = QuadricSystem.from_polys(v.n, quads) if quads else None
    rows = []
    for e in range(3, D + 1):
        Ie = ideal_slice(v, e)
        span = times_forms(I2, N1, e, e - 2)
        Ie_space = form_space(Ie, N1, e)
        if not Ie_space.contains_space(span):
            raise AssertionError("products of quadrics in the ideal left the ideal")
        excess = Ie_space.rank - span.rank
        gens = []
        nk = None
        if excess:
            basis = monomials(N1, e)
            index = {m: i for i, m in enumerate(basis)}
            rems = []
            for P in Ie:
                r = reduce_modulo({index[m]: x for m, x in P.terms.items()}, span)
                if r:
                    rems.append(r)
            gens = [MPoly(N1, {basis[i]: x for i, x in r.items()}) for r in rref_basis(rems)]
            if II is not None:
                nk = nonkoszul_count(II, e)["total"]
        rows.append(GenerationRow(e, Ie_space.rank, span.rank, excess, gens, nk))
    generated = cond1 and all(r.excess == 0 for r in rows)
    return GenerationReport(cond1, filt.dims[-1], rows, generated, D)


def normal_form(P: MPoly, space: Subspace, N1: int, e: int) -> MPoly:
    """Canonical remainder of P modulo a subspace of degree-e forms."""
    basis = monomials(N1, e)
    index = {m: i for i, m in enumerate(basis)}
    r = reduce_modulo({index[m]: x for m, x in P.terms.items()}, space)
    return MPoly(N1, {basis[i]: x for i, x in r.items()})
