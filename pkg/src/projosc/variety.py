"""Parametrized varieties, adapted charts at a point, fundamental forms and ideal slices."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .exactalg import (
    Echelon,
    Jet,
    MatQ,
    MPoly,
    PowerCache,
    Subspace,
    as_rat,
    format_poly,
    jet_compose,
    jet_inverse,
    kernel_of_columns,
    monomials,
    parse_poly,
    rref_basis,
    sparse_rank,
    t_names,
    x_names,
)
from .tensor import SymForm, sym_entry, symmetrize_array, to_sym_array


@dataclass(frozen=True)
class ParamVariety:
    """X^n in P^(n+a) given by homogeneous coordinates that are polynomials in t1..tn.

    If series_order is set, the coords are only known modulo terms of degree
    above series_order (a truncated power series parametrization).
    """

    n: int
    a: int
    coords: tuple
    label: str = ""
    point: tuple | None = None
    series_order: int | None = None

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if len(coords) != self.n + self.a + 1:
            raise ValueError(f"expected {self.n + self.a + 1} coordinates, got {len(coords)}")
        for c in coords:
            if c.nvars != self.n:
                raise ValueError("every coordinate must be a polynomial in t1..tn")
        if all(c.is_zero() for c in coords):
            raise ValueError("coordinates are all identically zero")
        if self.point is not None:
            pt = tuple(as_rat(x) for x in self.point)
            if len(pt) != self.n:
                raise ValueError("marked point has the wrong number of parameters")
            object.__setattr__(self, "point", pt)

    @property
    def ambient(self) -> int:
        """Number of homogeneous coordinates, n + a + 1."""
        return self.n + self.a + 1

    @property
    def param_degree(self) -> int:
        return max(c.degree() for c in self.coords)

    def default_point(self) -> tuple:
        return self.point if self.point is not None else (Fraction(0),) * self.n

    def to_spec(self) -> dict:
        spec = {
            "label": self.label,
            "n": self.n,
            "a": self.a,
            "coords": [format_poly(c, t_names(self.n)) for c in self.coords],
        }
        if self.point is not None:
            spec["point"] = [str(x) for x in self.point]
        if self.series_order is not None:
            spec["series_order"] = self.series_order
        return spec


def variety_from_spec(spec: dict | str) -> ParamVariety:
    """Build a ParamVariety from a spec dict or its JSON text."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    try:
        n = int(spec["n"])
        a = int(spec["a"])
        raw = spec["coords"]
    except KeyError as exc:
        raise ValueError(f"variety spec is missing field {exc}") from None
    names = t_names(n)
    coords = tuple(parse_poly(str(c), names) for c in raw)
    point = spec.get("point")
    if point is not None:
        point = tuple(Fraction(str(x)) for x in point)
    return ParamVariety(n, a, coords, spec.get("label", ""), point, spec.get("series_order"))


def dump_spec(v: ParamVariety) -> str:
    return json.dumps(v.to_spec(), indent=2)


# ---------------------------------------------------------------------------
# adapted charts


@dataclass(frozen=True)
class Frame:
    """Linear data of the adapted position at a point.

    basis has columns [p, J_1..J_n, complement]; change_of_coords is its inverse,
    so adapted coordinates are y = change_of_coords * x.
    """

    t0: tuple
    shifted: tuple          # coords(t0 + t)
    basis: MatQ
    change_of_coords: MatQ


def adapted_frame(v: ParamVariety, t0: Sequence | None = None) -> Frame:
    if t0 is None:
        t0 = v.default_point()
    t0 = tuple(as_rat(x) for x in t0)
    if len(t0) != v.n:
        raise ValueError(f"point needs {v.n} coordinates")
    shifted = tuple(c.shift(t0) if any(t0) else c for c in v.coords)
    N1 = v.ambient
    p = [c.constant() for c in shifted]
    if not any(p):
        raise ValueError("point not on chart: every homogeneous coordinate vanishes there")
    cols = [p]
    for al in range(v.n):
        e = tuple(int(i == al) for i in range(v.n))
        cols.append([c.coeff(e) for c in shifted])
    ech = Echelon()
    for col in cols:
        if ech.add({i: x for i, x in enumerate(col) if x}) is None:
            raise ValueError("singular point: the parametrization is not an immersion there")
    for i in range(N1):
        if len(cols) == N1:
            break
        if ech.add({i: Fraction(1)}) is not None:
            cols.append([Fraction(int(j == i)) for j in range(N1)])
    B = MatQ.from_columns(cols)
    return Frame(t0, shifted, B, B.inverse())


@dataclass(frozen=True)
class AdaptedChart:
    """Graph form x^mu = f^mu(s) of X near the marked point, in adapted coordinates."""

    n: int
    a: int
    f: tuple                # a Jets in s1..sn
    cap: int
    change_of_coords: MatQ  # y = C x
    frame: Frame = field(repr=False)
    variety: ParamVariety = field(repr=False)

    @property
    def t0(self):
        return self.frame.t0

    def adapted_coords(self) -> list[Jet]:
        """Jets of [1, s, f(s)]: the pullback of the adapted coordinates y."""
        one = Jet.const(self.n, 1, self.cap)
        return [one] + [Jet.var(self.n, i, self.cap) for i in range(self.n)] + list(self.f)

    def to_adapted(self, P: MPoly) -> MPoly:
        """Rewrite a form in the original coordinates x as a form in adapted coordinates y (x = B y)."""
        return P.linear_change(self.frame.basis.entries)

    def to_original(self, P: MPoly) -> MPoly:
        """Rewrite a form in adapted coordinates y in terms of x (y = C x)."""
        return P.linear_change(self.change_of_coords.entries)


def adapt_at_point(v: ParamVariety, t0: Sequence | None = None, cap: int = 7) -> AdaptedChart:
    if v.series_order is not None and cap > v.series_order:
        raise ValueError(f"chart cap {cap} exceeds the series order {v.series_order} of {v.label or 'the variety'}")
    fr = adapted_frame(v, t0)
    n, a = v.n, v.a
    C = fr.change_of_coords
    ys = []
    for row in C.entries:
        acc = MPoly.zero(n)
        for c, poly in zip(row, fr.shifted):
            if c:
                acc = acc + poly.truncate(cap).scale(c)
        ys.append(Jet(acc, cap))
    inv0 = jet_inverse(ys[0])
    u = [ys[1 + al] * inv0 for al in range(n)]
    g = [ys[1 + n + mu] * inv0 for mu in range(a)]
    s = [Jet.var(n, al, cap) for al in range(n)]
    h = [u[al] - s[al] for al in range(n)]
    phi = s
    if any(not x.is_zero() for x in h):
        for _ in range(cap):
            nxt = [s[al] - jet_compose(h[al].base, phi, cap) for al in range(n)]
            if all(x == y for x, y in zip(nxt, phi)):
                break
            phi = nxt
        f = tuple(jet_compose(gm.base, phi, cap) for gm in g)
    else:
        f = tuple(g)
    for fm in f:
        if fm.constant() or any(fm.part(1).terms.values()):
            raise AssertionError("adapted chart is not in graph form")
    return AdaptedChart(n, a, f, cap, C, fr, v)


# ---------------------------------------------------------------------------
# fundamental forms


@dataclass(frozen=True)
class FundData:
    """Taylor data of the graph functions as symmetric arrays keyed by sorted index tuples."""

    n: int
    a: int
    q: tuple
    r3: tuple
    r4: tuple
    r5: tuple | None

    def form(self, k: int, mu: int) -> MPoly:
        from .tensor import from_sym_array
        arr = {2: self.q, 3: self.r3, 4: self.r4, 5: self.r5}[k]
        if arr is None:
            raise ValueError(f"degree-{k} data is not available")
        return from_sym_array(arr[mu], self.n, k)


def fundamental_data(c: AdaptedChart) -> FundData:
    if c.cap < 5:
        raise ValueError("fundamental data needs a chart cap of at least 5")
    parts = {k: tuple(to_sym_array(fm.part(k), k) for fm in c.f) for k in (2, 3, 4, 5)}
    return FundData(c.n, c.a, parts[2], parts[3], parts[4], parts[5])


def third_fundamental_form(c: AdaptedChart) -> list[SymForm]:
    """Basis of |III|: cubic parts of the normal directions killed by II."""
    if c.cap < 3:
        raise ValueError("the third fundamental form needs a chart cap of at least 3")
    n = c.n
    quad_cols = [{e: x for e, x in fm.part(2).terms.items()} for fm in c.f]
    ker = kernel_of_columns(quad_cols)
    index = {e: i for i, e in enumerate(monomials(n, 3))}
    vecs = []
    for z in ker:
        cub = MPoly.zero(n)
        for mu, x in z.items():
            cub = cub + c.f[mu].part(3).scale(x)
        vecs.append({index[e]: x for e, x in cub.terms.items()})
    basis = rref_basis(vecs)
    space_basis = monomials(n, 3)
    return [SymForm.from_poly(MPoly(n, {space_basis[i]: x for i, x in b.items()}), 3) for b in basis]


def frame_action(d: FundData, g0: Sequence, g1: Sequence[Sequence], g0_normal: Sequence | None = None) -> FundData:
    """Change of (q, r3, r4) under the frame motion

        A_mu -> A_mu + g0_normal[mu] A_0 + sum_alpha g1[alpha][mu] A_alpha,
        A_alpha -> A_alpha + g0[alpha] A_0.

    q is unchanged.  The increments are written with plain cyclic sums and the
    result is projected onto symmetric arrays.  r5 is dropped.
    """
    n, a = d.n, d.a
    g0 = [as_rat(x) for x in g0]
    g1 = [[as_rat(x) for x in row] for row in g1]
    gn = [as_rat(x) for x in g0_normal] if g0_normal is not None else [Fraction(0)] * a
    if len(g0) != n or len(g1) != n or any(len(r) != a for r in g1) or len(gn) != a:
        raise ValueError("frame motion has the wrong shape")

    def q(mu, *idx):
        return sym_entry(d.q[mu], idx)

    def r3(mu, *idx):
        return sym_entry(d.r3[mu], idx)

    def cyc(idx):
        k = len(idx)
        return [idx[i:] + idx[:i] for i in range(k)]

    new_r3 = []
    new_r4 = []
    for mu in range(a):
        def f3(idx, mu=mu):
            tot = Fraction(0)
            for al, be, ga in cyc(tuple(idx)):
                tot += g0[al] * q(mu, be, ga)
                for de in range(n):
                    for nu in range(a):
                        if g1[de][nu]:
                            tot += g1[de][nu] * q(nu, al, be) * q(mu, ga, de)
            return tot

        def f4(idx, mu=mu):
            tot = Fraction(0)
            for al, be, ga, de in cyc(tuple(idx)):
                tot += g0[al] * r3(mu, be, ga, de)
                for ep in range(n):
                    for nu in range(a):
                        if g1[ep][nu]:
                            tot += g1[ep][nu] * (r3(nu, al, be, ga) * q(mu, de, ep) + q(nu, al, be) * r3(mu, ga, de, ep))
            al, be, ga, de = idx
            for nu in range(a):
                if gn[nu]:
                    tot += gn[nu] * q(mu, al, be) * q(nu, ga, de)
            return tot

        d3 = symmetrize_array(f3, n, 3)
        d4 = symmetrize_array(f4, n, 4)
        new_r3.append(_add_arrays(d.r3[mu], d3))
        new_r4.append(_add_arrays(d.r4[mu], d4))
    return FundData(n, a, d.q, tuple(new_r3), tuple(new_r4), None)


def _add_arrays(x: dict, y: dict) -> dict:
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


# ---------------------------------------------------------------------------
# ideal slices


def _poly_from_vec(vec: dict, basis: Sequence[tuple], nvars: int) -> MPoly:
    return MPoly(nvars, {basis[i]: x for i, x in vec.items()})


@lru_cache(maxsize=256)
def ideal_slice(v: ParamVariety, d: int) -> tuple:
    """Basis of I_d (forms of degree d in x0..x_{n+a} vanishing on X), canonical reduced form."""
    if v.series_order is not None:
        raise ValueError("ideal_slice needs a polynomial parametrization; this variety is a truncated series")
    N1 = v.ambient
    basis = monomials(N1, d)
    cache = PowerCache(list(v.coords))
    cols = [cache.monomial(e).terms for e in basis]
    ker = kernel_of_columns(cols)
    return tuple(_poly_from_vec(b, basis, N1) for b in rref_basis(ker))


def form_space(polys: Sequence[MPoly], nvars: int, d: int) -> Subspace:
    basis = monomials(nvars, d)
    index = {e: i for i, e in enumerate(basis)}
    return Subspace(len(basis), [{index[e]: x for e, x in p.terms.items()} for p in polys])


def space_polys(space: Subspace, nvars: int, d: int) -> list[MPoly]:
    basis = monomials(nvars, d)
    return [_poly_from_vec(b, basis, nvars) for b in space.basis]


def times_linear(polys: Sequence[MPoly], nvars: int, d: int) -> Subspace:
    """span of P * x_i for P in polys (degree d-1 forms) and all variables x_i."""
    xs = [MPoly.var(nvars, i) for i in range(nvars)]
    return form_space([p * x for p in polys for x in xs], nvars, d)


def times_forms(polys: Sequence[MPoly], nvars: int, d: int, e: int) -> Subspace:
    """span of P * m for P in polys and m running over monomials of degree e; result in degree d."""
    monos = [MPoly.monomial(m) for m in monomials(nvars, e)] if e > 0 else [MPoly.const(nvars, 1)]
    return form_space([p * m for p in polys for m in monos], nvars, d)


def conormal_vector(P: MPoly, frame: Frame, n: int, a: int) -> list[Fraction]:
    """Conormal components of dP at the marked point, in adapted coordinates."""
    p = [frame.basis[i, 0] for i in range(frame.basis.rows)]
    grad = [P.diff(i).evaluate(p) for i in range(P.nvars)]
    B = frame.basis
    comps = [sum((grad[i] * B[i, j] for i in range(B.rows)), Fraction(0)) for j in range(B.cols)]
    if any(comps[: n + 1]):
        raise AssertionError("ideal element has a differential with tangential components")
    return comps[n + 1:]


@dataclass
class Filtration:
    n: int
    a: int
    max_degree: int
    dims: list                # dim N*_k for k = 1..D
    jumps: list               # degrees d_j
    increments: list          # a_j
    exhausted: bool
    spaces: list = field(default_factory=list, repr=False)


def conormal_filtration(v: ParamVariety, t0=None, D: int = 3) -> Filtration:
    fr = adapted_frame(v, t0)
    dims, spaces, jumps, incs = [], [], [], []
    prev = 0
    for k in range(1, D + 1):
        vecs = [conormal_vector(P, fr, v.n, v.a) for P in ideal_slice(v, k)]
        sp = Subspace(v.a, vecs) if v.a else Subspace(0, [])
        dims.append(sp.rank)
        spaces.append(sp)
        if sp.rank > prev:
            jumps.append(k)
            incs.append(sp.rank - prev)
            prev = sp.rank
    return Filtration(v.n, v.a, D, dims, jumps, incs, prev == v.a, spaces)


@dataclass
class DegreeCI:
    k: int
    dim_ideal: int
    dim_trivial: int          # dim I_{k-1} o V*
    new_generators: int       # dim I_k / (I_{k-1} o V*)  (essential containments)
    conormal_increment: int
    kernel_dim: int
    injective: bool
    witness: MPoly | None


@dataclass
class CIReport:
    label: str
    max_degree: int
    degrees: list
    increments_sum: int
    a: int
    verdict: bool
    filtration: Filtration

    @property
    def verdict_text(self):
        if self.verdict:
            return f"complete intersection up to degree {self.max_degree}"
        return f"not a complete intersection (checked up to degree {self.max_degree})"


def ci_verdict(v: ParamVariety, t0=None, D: int = 3) -> CIReport:
    fr = adapted_frame(v, t0)
    N1 = v.ambient
    filt = conormal_filtration(v, t0, D)
    rows = []
    prev_polys: tuple = ()
    prev_conormal = Subspace(v.a, []) if v.a else Subspace(0, [])
    for k in range(1, D + 1):
        Ik = ideal_slice(v, k)
        Ik_space = form_space(Ik, N1, k)
        W = times_linear(prev_polys, N1, k) if prev_polys else Subspace(Ik_space.dim, [])
        if not Ik_space.contains_space(W):
            raise AssertionError("I_{k-1} o V* is not inside I_k")
        Nk = filt.spaces[k - 1]
        new = Ik_space.rank - W.rank
        inc = Nk.rank - prev_conormal.rank
        kdim = new - inc
        witness = None
        if kdim:
            witness = _ci_witness(Ik, W, prev_conormal, fr, v)
        rows.append(DegreeCI(k, Ik_space.rank, W.rank, new, inc, kdim, kdim == 0, witness))
        prev_polys = Ik
        prev_conormal = Nk
    total = sum(filt.increments)
    ok = all(r.injective for r in rows) and total == v.a
    return CIReport(v.label, D, rows, total, v.a, ok, filt)


def _ci_witness(Ik, W: Subspace, prev_conormal: Subspace, fr: Frame, v: ParamVariety) -> MPoly:
    """An element of I_k outside I_{k-1} o V* whose differential lies in N*_{k-1}."""
    N1 = v.ambient
    k = Ik[0].degree()
    # P -> dP mod N*_{k-1}; its kernel inside I_k
    comp = _complement_coords(prev_conormal, v.a)
    cols = []
    for P in Ik:
        vec = conormal_vector(P, fr, v.n, v.a)
        red = _reduce_dense(vec, prev_conormal)
        cols.append({j: red[j] for j in comp if red[j]})
    ker = kernel_of_columns(cols)
    cands = []
    for z in ker:
        acc = MPoly.zero(N1)
        for i, x in z.items():
            acc = acc + Ik[i].scale(x)
        cands.append(acc)
    basis = monomials(N1, k)
    index = {e: i for i, e in enumerate(basis)}
    from .exactalg import reduce_modulo
    for P in cands:
        rem = reduce_modulo({index[e]: x for e, x in P.terms.items()}, W)
        if rem:
            return _normalize(_poly_from_vec(rem, basis, N1))
    raise AssertionError("kernel of [d]_k is nonzero but no witness was found")


def _complement_coords(space: Subspace, dim: int) -> list[int]:
    piv = {min(b) for b in space.basis}
    return [j for j in range(dim) if j not in piv]


def _reduce_dense(vec, space: Subspace):
    from .exactalg import reduce_modulo
    red = reduce_modulo({j: x for j, x in enumerate(vec) if x}, space)
    return [red.get(j, Fraction(0)) for j in range(len(vec))]


def _normalize(P: MPoly) -> MPoly:
    if P.is_zero():
        return P
    lead = P.sorted_terms()[0][1]
    return P.scale(1 / lead)


def is_in_ideal_exact(v: ParamVariety, P: MPoly) -> bool:
    """True when P(coords(t)) is identically zero (to the series order for series parametrizations)."""
    cap = v.series_order
    pulled = P.substitute(list(v.coords), cap)
    return pulled.is_zero()


def xfmt(P: MPoly) -> str:
    return format_poly(P, x_names(P.nvars))
