from fractions import Fraction as F
from itertools import combinations

import pytest
import sympy

from projosc.catalog import (
    example_4_24,
    plane_conic,
    plane_cubic,
    segre,
    spinor10,
    twisted_cubic,
    veronese,
    ci_random,
)
from projosc.exactalg import MPoly, rank_of_columns, sparse_rank
from projosc.variety import (
    FundData,
    ParamVariety,
    adapt_at_point,
    ci_verdict,
    conormal_filtration,
    dump_spec,
    frame_action,
    fundamental_data,
    ideal_slice,
    is_in_ideal_exact,
    third_fundamental_form,
    variety_from_spec,
    xfmt,
)


def s(n, i):
    return MPoly.var(n, i)


# ---------------------------------------------------------------------------
# charts


def test_conic_is_already_adapted():
    c = adapt_at_point(plane_conic(), (0,), 5)
    assert c.f[0].base == s(1, 0) ** 2


def test_twisted_cubic_chart_at_origin():
    c = adapt_at_point(twisted_cubic(), (0,), 5)
    assert c.f[0].base == s(1, 0) ** 2
    assert c.f[1].base == s(1, 0) ** 3


def test_twisted_cubic_chart_at_one_against_taylor_oracle():
    c = adapt_at_point(twisted_cubic(), (1,), 6)
    quads = [fm.part(2) for fm in c.f]
    assert sparse_rank([q.terms for q in quads]) == 1
    # oracle: graph over the tangent line, computed directly with sympy series
    t, u = sympy.symbols("t u")
    x = [sympy.Integer(1), 1 + t, (1 + t) ** 2, (1 + t) ** 3]
    C = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                      for row in c.change_of_coords.entries])
    y = C * sympy.Matrix(x)
    ratio = sympy.series(y[1] / y[0], t, 0, 7).removeO()
    # invert ratio = u by series reversion
    inv = u
    for _ in range(7):
        inv = sympy.expand(u - (ratio.subs(t, inv) - inv))
        inv = sympy.series(inv, u, 0, 7).removeO()
    for mu in range(2):
        g = sympy.series((y[2 + mu] / y[0]).subs(t, inv), u, 0, 7).removeO()
        mine = sum(sympy.Rational(cf.numerator, cf.denominator) * u ** e[0] for e, cf in c.f[mu].base.terms.items())
        assert sympy.expand(g - mine) == 0


def test_singular_point_and_chart_errors():
    t = s(1, 0)
    cusp = ParamVariety(1, 1, (MPoly.const(1, 1), t * t, t ** 3), "cusp")
    with pytest.raises(ValueError, match="singular point"):
        adapt_at_point(cusp, (0,), 4)
    off = ParamVariety(1, 1, (t, t * t, t ** 3), "off")
    with pytest.raises(ValueError, match="point not on chart"):
        adapt_at_point(off, (0,), 4)


# ---------------------------------------------------------------------------
# fundamental forms


def test_conic_fundamental_data():
    d = fundamental_data(adapt_at_point(plane_conic(), (0,), 5))
    assert d.q[0] == {(0, 0): F(1)}
    assert not d.r3[0] and not d.r4[0] and not d.r5[0]


def test_flex_of_plane_cubic():
    d = fundamental_data(adapt_at_point(plane_cubic(), (0,), 5))
    assert not d.q[0]
    assert d.r3[0] == {(0, 0, 0): F(1)}


def test_spinor_second_fundamental_form_is_the_pfaffian_system():
    c = adapt_at_point(spinor10(), None, 3)
    n = 10
    pairs = list(combinations(range(1, 6), 2))
    x = {p: s(n, i) for i, p in enumerate(pairs)}
    pf = []
    for rest in combinations(range(1, 6), 4):
        a, b, cc, d = rest
        pf.append(x[(a, b)] * x[(cc, d)] - x[(a, cc)] * x[(b, d)] + x[(a, d)] * x[(b, cc)])
    quads = [fm.part(2) for fm in c.f]
    both = [q.terms for q in quads] + [p.terms for p in pf]
    assert sparse_rank([q.terms for q in quads]) == 5
    assert sparse_rank(both) == 5


@pytest.mark.parametrize("make, dim", [(lambda: veronese(2), 0), (twisted_cubic, 1), (lambda: segre(1, 2), 0)])
def test_third_fundamental_form(make, dim):
    assert len(third_fundamental_form(adapt_at_point(make(), None, 4))) == dim


# ---------------------------------------------------------------------------
# frame action on a surface in P^5 with zero III


def surface_data():
    q = ({(0, 0): F(1)}, {(0, 1): F(1, 2)}, {(1, 1): F(1)})
    return FundData(2, 3, q, ({}, {}, {}), ({}, {}, {}), None)


MOTIONS = ["g01", "g02", "g13", "g14", "g15", "g23", "g24", "g25"]


def motion(name):
    g0 = [F(int(name == f"g0{i + 1}")) for i in range(2)]
    g1 = [[F(int(name == f"g{al + 1}{mu + 3}")) for mu in range(3)] for al in range(2)]
    return g0, g1


def delta_support():
    d = surface_data()
    out = {}
    for name in MOTIONS:
        nd = frame_action(d, *motion(name))
        for mu in range(3):
            for idx, v in nd.r3[mu].items():
                if v:
                    out.setdefault((mu + 3, "".join(str(i + 1) for i in idx)), set()).add(name)
    return out


def test_frame_action_identity():
    d = surface_data()
    nd = frame_action(d, [0, 0], [[0] * 3, [0] * 3])
    assert all(not r for r in nd.r3) and all(not r for r in nd.r4)


def test_frame_action_support_table():
    # reference supports, with two index corrections (g21 -> g23 and g23 -> g25)
    table = {
        (3, "111"): {"g01", "g13"}, (4, "111"): {"g23"},
        (3, "112"): {"g02", "g14"}, (4, "112"): {"g01", "g24", "g13"}, (5, "112"): {"g23"},
        (3, "122"): {"g15"}, (4, "122"): {"g02", "g14", "g25"}, (5, "122"): {"g01", "g24"},
        (4, "222"): {"g15"}, (5, "222"): {"g02", "g25"},
    }
    assert delta_support() == table


def test_frame_action_rank_is_six():
    d = surface_data()
    cols = []
    for name in MOTIONS:
        nd = frame_action(d, *motion(name))
        cols.append({(mu, idx): v for mu in range(3) for idx, v in nd.r3[mu].items() if v})
    assert rank_of_columns(cols) == 6


# ---------------------------------------------------------------------------
# ideal slices


def test_conic_ideal():
    (P,) = ideal_slice(plane_conic(), 2)
    assert xfmt(P) == "x0*x2 - x1^2"


def test_twisted_cubic_ideal():
    assert len(ideal_slice(twisted_cubic(), 2)) == 3


@pytest.mark.parametrize("make", [plane_conic, twisted_cubic, lambda: veronese(2), lambda: segre(1, 2), spinor10,
                                  example_4_24])
def test_ideal_elements_pull_back_to_zero(make):
    v = make()
    for d in (1, 2, 3):
        for P in ideal_slice(v, d):
            assert is_in_ideal_exact(v, P)


def test_spec_roundtrip():
    v = veronese(2)
    assert variety_from_spec(dump_spec(v)) == v


# ---------------------------------------------------------------------------
# conormal filtration and CI verdicts


def test_filtrations():
    f = conormal_filtration(plane_conic(), None, 3)
    assert (f.jumps, f.increments) == ([2], [1])
    f = conormal_filtration(twisted_cubic(), None, 3)
    assert (f.jumps, f.increments) == ([2], [2])
    f = conormal_filtration(ci_random((2, 3), 0), None, 3)
    assert (f.jumps, f.increments) == ([2, 3], [1, 1])


def test_ci_verdicts():
    assert ci_verdict(plane_conic(), None, 3).verdict
    tc = ci_verdict(twisted_cubic(), None, 3)
    assert not tc.verdict
    row = tc.degrees[1]
    assert (row.dim_ideal, row.conormal_increment, row.kernel_dim) == (3, 2, 1)
    assert is_in_ideal_exact(twisted_cubic(), row.witness)
    ver = ci_verdict(veronese(2), None, 2)
    assert not ver.verdict and ver.degrees[1].dim_ideal == 6 and ver.degrees[0].dim_ideal == 0
