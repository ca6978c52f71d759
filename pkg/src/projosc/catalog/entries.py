"""Catalog of parametrized varieties with known ideal data."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from ..exactalg import MPoly, as_rat, monomials, parse_poly
from ..quadsys import QuadricSystem, variety_from_quadrics
from ..variety import ParamVariety
from .compalg import CompAlgebra


def _vars(n):
    return [MPoly.var(n, i) for i in range(n)]


def plane_conic() -> ParamVariety:
    t, = _vars(1)
    one = MPoly.const(1, 1)
    return ParamVariety(1, 1, (one, t, t * t), "conic")


def plane_cubic() -> ParamVariety:
    """The cuspidal-at-infinity cubic [1, t, t^3]; marked point t = 1 (t = 0 is a flex)."""
    t, = _vars(1)
    one = MPoly.const(1, 1)
    return ParamVariety(1, 1, (one, t, t ** 3), "plane-cubic", point=(Fraction(1),))


def twisted_cubic() -> ParamVariety:
    t, = _vars(1)
    one = MPoly.const(1, 1)
    return ParamVariety(1, 2, (one, t, t * t, t ** 3), "twisted-cubic")


def veronese(n: int) -> ParamVariety:
    """v_2(P^n): [1, t_i, t_i t_j (i <= j)]."""
    if n < 1:
        raise ValueError("veronese needs n >= 1")
    t = _vars(n)
    coords = [MPoly.const(n, 1)] + t + [t[i] * t[j] for i in range(n) for j in range(i, n)]
    return ParamVariety(n, len(coords) - n - 1, tuple(coords), f"veronese-{n}")


def segre(m: int, n: int) -> ParamVariety:
    """P^m x P^n: [1, u_i, v_j, u_i v_j]; parameters t1..tm are u, the rest v."""
    if m < 1 or n < 1:
        raise ValueError("segre needs m, n >= 1")
    N = m + n
    t = _vars(N)
    u, v = t[:m], t[m:]
    coords = [MPoly.const(N, 1)] + u + v + [ui * vj for ui in u for vj in v]
    return ParamVariety(N, m * n, tuple(coords), f"segre-{m}-{n}")


def grass2(m: int) -> ParamVariety:
    """G(2, m) in Pluecker coordinates on the chart [I_2 | T], T a 2 x (m-2) matrix.

    Parameters: t1..t_{m-2} are the first row of T, the rest the second row.
    Coordinates: 2 x 2 minors p_ij, i < j, in lexicographic order.
    """
    if m < 4:
        raise ValueError("grass2 needs m >= 4")
    k = m - 2
    N = 2 * k
    t = _vars(N)
    one, zero = MPoly.const(N, 1), MPoly.zero(N)
    rows = [[one, zero] + t[:k], [zero, one] + t[k:]]
    coords = [rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i] for i, j in combinations(range(m), 2)]
    return ParamVariety(N, len(coords) - N - 1, tuple(coords), f"grass2-{m}")


# ---------------------------------------------------------------------------
# spinor variety

SPINOR_PAIRS = tuple(combinations(range(1, 6), 2))

# x_i = sign_i * Pf(the four indices other than i)
SPINOR_SIGNS = {1: 1, 2: -1, 3: 1, 4: -1, 5: 1}


def _pf(x, a, b, c, d):
    return x[(a, b)] * x[(c, d)] - x[(a, c)] * x[(b, d)] + x[(a, d)] * x[(b, c)]


def spinor10() -> ParamVariety:
    """S^10 in P^15: coordinates [x0, x_ij (i < j, lex order), x_1, ..., x_5].

    Parameters t1..t10 are the x_ij in lex order.  The degree-4 coordinates are
    signed sub-Pfaffians: x_i = SPINOR_SIGNS[i] * Pf(complement of i), so
    x5 = +Pf(1234), x4 = -Pf(1235), x3 = +Pf(1245), x2 = -Pf(1345), x1 = +Pf(2345).
    The ideal itself comes from ideal_slice; the classical printed list of ten
    quadrics is kept verbatim in SPINOR_PRINTED_EQUATIONS for comparison.
    """
    N = 10
    t = _vars(N)
    x = {p: t[i] for i, p in enumerate(SPINOR_PAIRS)}
    quart = []
    for i in range(1, 6):
        rest = [j for j in range(1, 6) if j != i]
        quart.append(_pf(x, *rest).scale(SPINOR_SIGNS[i]))
    coords = [MPoly.const(N, 1)] + t + quart
    return ParamVariety(N, 5, tuple(coords), "spinor10")


def spinor_coord_names() -> list[str]:
    return ["x0"] + [f"x{i}{j}" for i, j in SPINOR_PAIRS] + [f"x{i}" for i in range(1, 6)]


SPINOR_PRINTED_EQUATIONS = (
    "x5*x0 - (x12*x34 - x13*x24 - x14*x23)",
    "x4*x0 - (x12*x35 - x13*x25 - x15*x23)",
    "x3*x0 - (x12*x45 - x14*x25 - x15*x24)",
    "x2*x0 - (x13*x45 - x14*x35 - x15*x34)",
    "x1*x0 - (x23*x45 - x24*x35 - x25*x34)",
    "x15*x5 + x14*x4 + x13*x3 + x12*x2",
    "x25*x5 + x24*x4 + x23*x3 - x12*x1",
    "x35*x5 + x34*x4 - x23*x3 - x13*x1",
    "x45*x5 - x34*x3 - x24*x2 - x14*x1",
    "x45*x4 + x35*x3 + x25*x2 + x15*x1",
)


def spinor_printed_equations() -> list[MPoly]:
    """The ten classical quadric equations of the spinor variety, transcribed as printed."""
    return [parse_poly(s, spinor_coord_names()) for s in SPINOR_PRINTED_EQUATIONS]


# ---------------------------------------------------------------------------
# Severi varieties


def severi(alg: CompAlgebra | int) -> ParamVariety:
    """Rank-one Hermitian 3 x 3 matrices over a composition algebra.

    Parameters (u, v) in A^2; coordinates [r1, u1, u2, r2, r3, u3] =
    [1, u, v, N(u), N(v), conj(u) v], each algebra entry expanded in the basis.
    """
    if isinstance(alg, int):
        alg = CompAlgebra(alg)
    m = alg.dim
    N = 2 * m
    t = _vars(N)
    u, v = t[:m], t[m:]
    ru = alg.norm(u)
    rv = alg.norm(v)
    u3 = alg.mul(alg.conj(u), v)
    coords = [MPoly.const(N, 1)] + u + v + [ru, rv] + list(u3)
    return ParamVariety(N, m + 2, tuple(coords), f"severi-{m}")


def severi_blocks(alg: CompAlgebra, nvars: int | None = None):
    """Variables of the Hermitian-matrix entries as algebra elements of linear forms."""
    m = alg.dim
    nv = 3 * m + 3 if nvars is None else nvars
    x = _vars(nv)
    r1 = x[0]
    u1 = x[1:1 + m]
    u2 = x[1 + m:1 + 2 * m]
    r2 = x[1 + 2 * m]
    r3 = x[2 + 2 * m]
    u3 = x[3 + 2 * m:3 + 3 * m]
    return r1, u1, u2, r2, r3, u3


def severi_minor_equations(alg: CompAlgebra | int) -> list[MPoly]:
    """Components of the six families of 2 x 2 minor equations, in the coordinates of severi()."""
    if isinstance(alg, int):
        alg = CompAlgebra(alg)
    r1, u1, u2, r2, r3, u3 = severi_blocks(alg)
    S = alg.scalar
    fams = [
        alg.sub(alg.mul(S(r1), S(r2)), alg.mul(u1, alg.conj(u1))),
        alg.sub(alg.mul(S(r1), S(r3)), alg.mul(u2, alg.conj(u2))),
        alg.sub(alg.mul(S(r1), u3), alg.mul(alg.conj(u1), u2)),
        alg.sub(alg.mul(S(r2), u2), alg.mul(u1, u3)),
        alg.sub(alg.mul(S(r3), u1), alg.mul(u2, alg.conj(u3))),
        alg.sub(alg.mul(S(r2), S(r3)), alg.mul(u3, alg.conj(u3))),
    ]
    out = []
    for fam in fams:
        for comp in fam:
            if not comp.is_zero():
                out.append(comp)
    return out


# ---------------------------------------------------------------------------
# varieties built from quadric systems

SIX_QUADRICS = ("t1*t4", "t2*t5", "t3*t6", "t1*t5", "t2*t6", "t3*t4")


def six_quadric_system() -> QuadricSystem:
    return QuadricSystem.from_strings(6, SIX_QUADRICS)


def example_4_24() -> ParamVariety:
    """X^6 in P^12 from the six quadrics t1t4, t2t5, t3t6, t1t5, t2t6, t3t4 (coords x7..x12)."""
    return variety_from_quadrics(six_quadric_system(), "six-quadrics")


def six_quadric_cubic() -> MPoly:
    return parse_poly("x7*x8*x9 - x10*x11*x12", [f"x{i}" for i in range(13)])


def six_quadric_generators() -> list[MPoly]:
    names = [f"x{i}" for i in range(13)]
    texts = ["x0*x7 - x1*x4", "x0*x8 - x2*x5", "x0*x9 - x3*x6", "x0*x10 - x1*x5",
             "x0*x11 - x2*x6", "x0*x12 - x3*x4", "x7*x8*x9 - x10*x11*x12"]
    return [parse_poly(s, names) for s in texts]


DEFAULT_CODIM2_B = {"1_12": Fraction(1), "1_22": Fraction(2), "2_11": Fraction(-1), "2_12": Fraction(1, 2)}


def example_4_36(n: int = 2, lam: Sequence | None = None, b: dict | None = None,
                 series_order: int = 10) -> ParamVariety:
    """Codimension-two graph cut out by

        x^{n+1} x^0 = sum (x^i)^2 + b1_12 x^{n+1} x^{n+2} + b1_22 (x^{n+2})^2
        x^{n+2} x^0 = sum lam_i (x^i)^2 + b2_11 (x^{n+1})^2 + b2_12 x^{n+1} x^{n+2}

    b maps the keys "1_12", "1_22", "2_11", "2_12" to rationals.  With nonzero b
    the graph functions are power series, kept through `series_order`.
    """
    if n < 1:
        raise ValueError("example_4_36 needs n >= 1")
    lam = [Fraction(i + 1) for i in range(n)] if lam is None else [as_rat(x) for x in lam]
    if len(lam) != n:
        raise ValueError("need one lambda per parameter")
    b = dict(DEFAULT_CODIM2_B if b is None else b)
    coef = {k: as_rat(b.get(k, 0)) for k in ("1_12", "1_22", "2_11", "2_12")}
    t = _vars(n)
    q1 = sum((ti * ti for ti in t), MPoly.zero(n))
    q2 = sum((ti * ti).scale(l) for ti, l in zip(t, lam))
    polynomial = not any(coef.values())
    cap = None if polynomial else series_order
    f1, f2 = q1, q2
    if not polynomial:
        for _ in range(series_order):
            g1 = (q1 + f1.mul(f2, cap).scale(coef["1_12"]) + f2.mul(f2, cap).scale(coef["1_22"])).truncate(cap)
            g2 = (q2 + f1.mul(f1, cap).scale(coef["2_11"]) + f1.mul(f2, cap).scale(coef["2_12"])).truncate(cap)
            if g1 == f1 and g2 == f2:
                break
            f1, f2 = g1, g2
    coords = [MPoly.const(n, 1)] + t + [f1, f2]
    label = "codim2-series" if not polynomial else "codim2-diagonal"
    return ParamVariety(n, 2, tuple(coords), label, series_order=cap)


def codim2_series_generators(n: int = 2, lam: Sequence | None = None, b: dict | None = None) -> list[MPoly]:
    lam = [Fraction(i + 1) for i in range(n)] if lam is None else [as_rat(x) for x in lam]
    b = dict(DEFAULT_CODIM2_B if b is None else b)
    c = {k: as_rat(b.get(k, 0)) for k in ("1_12", "1_22", "2_11", "2_12")}
    N1 = n + 3
    x = _vars(N1)
    y1, y2 = x[n + 1], x[n + 2]
    sq = sum((x[1 + i] * x[1 + i] for i in range(n)), MPoly.zero(N1))
    sql = sum((x[1 + i] * x[1 + i]).scale(lam[i]) for i in range(n))
    g1 = y1 * x[0] - sq - (y1 * y2).scale(c["1_12"]) - (y2 * y2).scale(c["1_22"])
    g2 = y2 * x[0] - sql - (y1 * y1).scale(c["2_11"]) - (y1 * y2).scale(c["2_12"])
    return [g1, g2]


# ---------------------------------------------------------------------------
# random complete intersections


def _ci_random_data(degrees, seed, n):
    degrees = list(degrees)
    if not degrees or any(d < 2 for d in degrees):
        raise ValueError("ci_random needs degrees >= 2")
    rng = random.Random(seed)
    t = _vars(n)
    coords = [MPoly.const(n, 1)] + list(t)
    rhs = []
    for d in degrees:
        nv = len(coords)                  # x^0, x^1..x^n and the earlier graph coordinates
        G = {}
        for i in range(n):
            e = [0] * nv
            e[1 + i] = d
            G[tuple(e)] = Fraction(rng.randint(1, 3))
        for e in monomials(nv, d):
            if rng.random() < 0.3:
                G[e] = G.get(e, 0) + Fraction(rng.randint(-2, 2), rng.randint(1, 3))
        Gp = MPoly(nv, G)
        rhs.append(Gp)
        coords.append(Gp.substitute(coords))
    return coords, rhs


def ci_random(degrees: Sequence[int] = (2, 3), seed: int = 0, n: int = 3) -> ParamVariety:
    """Complete intersection in triangular graph form.

    Generator j is x^{n+j} (x^0)^{d_j - 1} = G_j(x^0, x^1..x^n, x^{n+1..n+j-1}) where G_j
    is a diagonal sum of d_j-th powers of x^1..x^n plus small random terms; the
    parametrization substitutes x^0 = 1, x^i = t_i.
    """
    coords, _ = _ci_random_data(degrees, seed, n)
    label = f"ci-random-{'-'.join(map(str, degrees))}-s{seed}"
    return ParamVariety(n, len(degrees), tuple(coords), label)


def ci_random_generators(degrees: Sequence[int] = (2, 3), seed: int = 0, n: int = 3) -> list[MPoly]:
    """Defining equations x^{n+j} (x^0)^{d_j-1} - G_j of the matching ci_random variety."""
    _, rhs = _ci_random_data(degrees, seed, n)
    N1 = n + len(degrees) + 1
    x = _vars(N1)
    out = []
    for j, (d, G) in enumerate(zip(degrees, rhs)):
        lift = MPoly(N1, {e + (0,) * (N1 - len(e)): c for e, c in G.terms.items()})
        out.append(x[n + 1 + j] * x[0] ** (d - 1) - lift)
    return out


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    build: Callable[[], ParamVariety]
    n: int
    a: int
    dim_i2: int | None            # None for series varieties
    iii_zero: bool
    linear_syzygies: int | None   # dim of the bracket part of II at the marked point
    note: str = ""

    def variety(self) -> ParamVariety:
        return self.build()


ENTRIES = {
    e.name: e
    for e in [
        CatalogEntry("conic", plane_conic, 1, 1, 1, True, 0),
        CatalogEntry("plane-cubic", plane_cubic, 1, 1, 0, True, 0, "marked point t = 1"),
        CatalogEntry("twisted-cubic", twisted_cubic, 1, 2, 3, False, 0),
        CatalogEntry("veronese-1", lambda: veronese(1), 1, 1, 1, True, 0),
        CatalogEntry("veronese-2", lambda: veronese(2), 2, 3, 6, True, 2),
        CatalogEntry("veronese-3", lambda: veronese(3), 3, 6, 20, True, 8),
        CatalogEntry("segre-1-1", lambda: segre(1, 1), 2, 1, 1, True, 0),
        CatalogEntry("segre-1-2", lambda: segre(1, 2), 3, 2, 3, True, 1),
        CatalogEntry("segre-2-2", lambda: segre(2, 2), 4, 4, 9, True, 4),
        CatalogEntry("grass2-4", lambda: grass2(4), 4, 1, 1, True, 0),
        CatalogEntry("grass2-5", lambda: grass2(5), 6, 3, 5, True, 2),
        CatalogEntry("spinor10", spinor10, 10, 5, 10, True, 5),
        CatalogEntry("severi-1", lambda: severi(1), 2, 3, 6, True, 2),
        CatalogEntry("severi-2", lambda: severi(2), 4, 4, 9, True, 4),
        CatalogEntry("severi-4", lambda: severi(4), 8, 6, 15, True, 8),
        CatalogEntry("severi-8", lambda: severi(8), 16, 10, 27, True, 16),
        CatalogEntry("six-quadrics", example_4_24, 6, 6, 12, True, 6),
        CatalogEntry("codim2-series", example_4_36, 2, 2, None, True, 0, "truncated power series"),
        CatalogEntry("ci-random", ci_random, 3, 2, 1, True, 0, "seed 0, degrees (2, 3)"),
    ]
}


def catalog_names() -> list[str]:
    return list(ENTRIES)


def get_variety(name: str) -> ParamVariety:
    try:
        return ENTRIES[name].variety()
    except KeyError:
        raise ValueError(f"unknown catalog variety {name!r}; try one of: {', '.join(ENTRIES)}") from None
