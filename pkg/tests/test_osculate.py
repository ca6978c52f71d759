from fractions import Fraction as F
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from projosc.catalog import (
    ci_random,
    example_4_24,
    example_4_36,
    get_variety,
    plane_conic,
    segre,
    spinor10,
    twisted_cubic,
    veronese,
)
from projosc.exactalg import Jet, MPoly, format_poly, t_names
from projosc.osculate import (
    check_316,
    ci_2dd_test,
    classical_monge_residual,
    expected_dim_316,
    lower_bound_317,
    monge_profile,
    monge_quadrics,
    osculating_space,
    predict_higher_variations,
    quadratic_generation_check,
    singular_osculating,
)
from projosc.tensor import from_sym_array
from projosc.variety import adapt_at_point, fundamental_data, is_in_ideal_exact, xfmt


def oracle_osc_dim(v, d, k):
    """Independent count with sympy: degree-d forms in x vanishing to order k at the marked point."""
    n = v.n
    ts = sympy.symbols(f"t1:{n + 1}")
    ss = sympy.symbols(f"s1:{n + 1}")
    names = t_names(n)
    loc = dict(zip(names, ts))
    pt = v.default_point()
    xs = [sympy.sympify(format_poly(c, names), locals=loc).subs(
        {ts[i]: sympy.Rational(pt[i].numerator, pt[i].denominator) + ss[i] for i in range(n)}) for c in v.coords]
    monos = list(sympy.itermonomials(sympy.symbols(f"z0:{len(xs)}"), d, d))
    zs = sympy.symbols(f"z0:{len(xs)}")
    rows = {}
    for j, m in enumerate(monos):
        pb = sympy.Poly(sympy.expand(m.subs(dict(zip(zs, xs)), simultaneous=True)), *ss)
        for e, c in pb.as_dict().items():
            if sum(e) <= k:
                rows.setdefault(e, {})[j] = c
    M = sympy.Matrix([[r.get(j, 0) for j in range(len(monos))] for r in rows.values()]) if rows else None
    return len(monos) - (M.rank() if M is not None else 0)


@pytest.mark.parametrize("make, d, k", [
    (plane_conic, 2, 3), (plane_conic, 2, 4), (twisted_cubic, 2, 2), (twisted_cubic, 2, 4),
    (twisted_cubic, 3, 5), (lambda: veronese(2), 2, 3), (lambda: segre(1, 1), 2, 2), (lambda: segre(1, 1), 3, 3),
])
def test_osculation_dims_against_oracle(make, d, k):
    v = make()
    c = adapt_at_point(v, None, k)
    assert osculating_space(c, d, k).dim == oracle_osc_dim(v, d, k)


def test_osculation_basis_matches_dim_and_pulls_back():
    v = twisted_cubic()
    c = adapt_at_point(v, None, 6)
    sp = osculating_space(c, 2, 6)
    assert len(sp.basis) == sp.dim == 3
    assert sp.stabilized
    assert all(is_in_ideal_exact(v, P) for P in sp.original_basis())


@pytest.mark.parametrize("name", ["conic", "twisted-cubic", "veronese-2", "segre-1-2", "grass2-4"])
def test_monotone_and_stabilizes(name):
    v = get_variety(name)
    c = adapt_at_point(v, None, 2 * v.param_degree + 1)
    for d in (2,):
        dims = [osculating_space(c, d, k).dim for k in range(0, d * v.param_degree + 2)]
        assert dims == sorted(dims, reverse=True)
        assert dims[-1] == dims[-2]
        assert osculating_space(c, d, d * v.param_degree).stabilized


@pytest.mark.parametrize("name", ["conic", "twisted-cubic", "veronese-2", "segre-1-1", "segre-2-2", "grass2-5",
                                  "spinor10", "severi-2", "six-quadrics", "ci-random"])
def test_dimension_laws_on_catalog(name):
    v = get_variety(name)
    c = adapt_at_point(v, None, 5)
    for d in (1, 2):
        for p in range(d + 1):
            assert check_316(c, d, p).passed
    for d in (2,):
        assert lower_bound_317(c, d).passed


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), a=st.integers(1, 5), d=st.integers(0, 4), data=st.data())
def test_expected_dim_formula_counts_complement(n, a, d, data):
    p = data.draw(st.integers(0, d))
    # forms of degree d minus the monomials in the tangent variables of degree <= p
    assert expected_dim_316(n, a, d, p) == comb(n + a + d, d) - comb(n + p, p)


def test_expected_dim_guard():
    with pytest.raises(ValueError):
        expected_dim_316(2, 1, 1, 2)


def test_singular_osculating():
    c = adapt_at_point(plane_conic(), None, 4)
    assert singular_osculating(c, 2, 4).dim == 0
    c = adapt_at_point(twisted_cubic(), None, 4)
    assert singular_osculating(c, 2, 4).dim >= 1


@pytest.mark.parametrize("name", ["conic", "twisted-cubic", "veronese-2", "segre-1-2", "spinor10"])
def test_second_order_quadrics_lower_bound(name):
    v = get_variety(name)
    c = adapt_at_point(v, None, 3)
    assert osculating_space(c, 2, 2).dim >= comb(v.a + 1, 2)


# ---------------------------------------------------------------------------
# CI test


def test_ci_2dd():
    assert ci_2dd_test(plane_conic()).passed
    assert ci_2dd_test(ci_random((2, 3), 0), d=2).passed
    r = ci_2dd_test(twisted_cubic())
    assert not r.passed
    assert r.witness is not None and is_in_ideal_exact(twisted_cubic(), r.witness)
    assert not ci_2dd_test(veronese(2)).passed


def test_ci_2dd_rejects_series():
    with pytest.raises(ValueError):
        ci_2dd_test(example_4_36())


# ---------------------------------------------------------------------------
# Monge quadrics


def test_monge_conic():
    r = monge_quadrics(adapt_at_point(plane_conic(), None, 5))
    assert r.verdict == "MongeHolds" and r.membership == "exact"
    assert [xfmt(g) for g in r.generators] == ["x0*x2 - x1^2"]


def test_monge_series_example_recovers_quadrics():
    r = monge_quadrics(adapt_at_point(example_4_36(), None, 10))
    assert r.verdict == "MongeHolds"
    assert r.membership == "verified through order 10"
    assert [xfmt(g) for g in r.generators] == [
        "x0*x3 - x1^2 - x2^2 - x3*x4 - 2*x4^2",
        "x0*x4 - x1^2 - 2*x2^2 + x3^2 - 1/2*x3*x4",
    ]
    assert r.bounds == {3: 2 + 3, 4: 2}
    assert all(r.equality.values())


def test_monge_diagonal_is_exact():
    r = monge_quadrics(adapt_at_point(example_4_36(b={}), None, 6))
    assert r.verdict == "MongeHolds" and r.membership == "exact"


def test_monge_six_quadrics_reports_failed_hypothesis():
    r = monge_quadrics(adapt_at_point(example_4_24(), None, 6))
    assert r.verdict == "HypothesisFails"
    assert not r.hypotheses_hold
    assert (r.ker_dims[3], r.ker_dims[4]) == (33, 12)
    assert (r.bounds[3], r.bounds[4]) == (27, 6)
    assert r.generators == []


def test_monge_cubic_ci_fails_at_order_three():
    r = monge_quadrics(adapt_at_point(ci_random((2, 3), 0), None, 6))
    assert r.verdict == "Order3Fails"


def test_predictions_match_taylor_data():
    c = adapt_at_point(example_4_36(), None, 10)
    r = monge_quadrics(c)
    fd = fundamental_data(c)
    for k, have in ((3, fd.r3), (4, fd.r4), (5, fd.r5)):
        assert list(predict_higher_variations(fd, r.a_coeffs, r.b_coeffs, k)) == list(have)
    for k in (6, 7):
        pred = predict_higher_variations(fd, r.a_coeffs, r.b_coeffs, k)
        assert [from_sym_array(p, 2, k) for p in pred] == [fm.part(k) for fm in c.f]


def test_predictions_vanish_for_conic():
    c = adapt_at_point(plane_conic(), None, 5)
    r = monge_quadrics(c)
    fd = fundamental_data(c)
    assert all(not p for p in predict_higher_variations(fd, r.a_coeffs, r.b_coeffs, 4))
    with pytest.raises(ValueError):
        predict_higher_variations(fd, r.a_coeffs, r.b_coeffs, 2)


# ---------------------------------------------------------------------------
# profile, classical residual, generation


def test_profiles():
    assert monge_profile(ci_random((2, 3), 0), None, (2, 3), (1, 1)).passed
    assert monge_profile(plane_conic(), None, (2,), (1,)).passed
    assert not monge_profile(twisted_cubic(), None, (2,), (2,)).passed
    with pytest.raises(ValueError):
        monge_profile(plane_conic(), None, (2,), (2,))


def jet_of(coeffs, cap):
    return Jet(MPoly(1, {(i,): F(c) for i, c in enumerate(coeffs) if c}), cap)


def test_classical_residual():
    assert classical_monge_residual(jet_of([0, 0, 1], 8)).is_zero()
    r = classical_monge_residual(jet_of([0, 0, 1, 1], 8))
    assert r.constant() == -80
    # lower branch of the circle: y = 1 - sqrt(1 - t^2)
    t = sympy.symbols("t")
    ser = sympy.series(1 - sympy.sqrt(1 - t ** 2), t, 0, 9).removeO()
    coeffs = [sympy.Rational(ser.coeff(t, i)) for i in range(9)]
    y = Jet(MPoly(1, {(i,): F(int(c.p), int(c.q)) for i, c in enumerate(coeffs) if c}), 8)
    assert classical_monge_residual(y).is_zero()


def test_classical_residual_guards():
    with pytest.raises(ValueError):
        classical_monge_residual(jet_of([0, 0, 1], 4))
    with pytest.raises(ValueError):
        classical_monge_residual(jet_of([0, 0, 0, 1], 8))


def test_generation():
    assert quadratic_generation_check(spinor10()).generated
    assert quadratic_generation_check(veronese(2)).generated
    g = quadratic_generation_check(example_4_24())
    (row,) = g.rows
    assert row.excess == 1 and row.nonkoszul == 1
    (gen,) = row.excess_generators
    assert xfmt(gen) in ("x7*x8*x9 - x10*x11*x12", "-x7*x8*x9 + x10*x11*x12")
