import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from projosc.catalog import (
    ENTRIES,
    CompAlgebra,
    catalog_names,
    ci_random,
    ci_random_generators,
    codim2_series_generators,
    example_4_36,
    get_variety,
    severi,
    severi_minor_equations,
    six_quadric_cubic,
    six_quadric_generators,
    spinor10,
    spinor_coord_names,
    spinor_printed_equations,
)
from projosc.exactalg import MPoly, format_poly, t_names
from projosc.quadsys import QuadricSystem, bracket_part
from projosc.variety import adapt_at_point, ci_verdict, ideal_slice, is_in_ideal_exact, third_fundamental_form

SMALL = ["conic", "plane-cubic", "twisted-cubic", "veronese-1", "veronese-2", "segre-1-1", "segre-1-2", "grass2-4",
         "severi-1"]


def sympy_dim_i2(v):
    names = t_names(v.n)
    ts = sympy.symbols(f"t1:{v.n + 1}")
    xs = [sympy.sympify(format_poly(c, names), locals=dict(zip(names, ts))) for c in v.coords]
    prods = [sympy.Poly(sympy.expand(xs[i] * xs[j]), *ts) for i in range(len(xs)) for j in range(i, len(xs))]
    monos = sorted({m for p in prods for m in p.as_dict()})
    M = sympy.Matrix([[p.as_dict().get(m, 0) for p in prods] for m in monos])
    return len(prods) - M.rank()


@pytest.mark.parametrize("name", SMALL)
def test_dim_i2_against_oracle(name):
    e = ENTRIES[name]
    assert sympy_dim_i2(e.variety()) == e.dim_i2


@pytest.mark.parametrize("name", [k for k, e in ENTRIES.items() if e.dim_i2 is not None])
def test_entry_data(name):
    e = ENTRIES[name]
    v = e.variety()
    assert (v.n, v.a) == (e.n, e.a)
    assert len(ideal_slice(v, 2)) == e.dim_i2
    c = adapt_at_point(v, None, 3)
    assert (len(third_fundamental_form(c)) == 0) == e.iii_zero
    quads = [fm.part(2) for fm in c.f if not fm.part(2).is_zero()]
    syz = len(bracket_part(QuadricSystem.from_polys(v.n, quads))) if quads else 0
    assert syz == e.linear_syzygies


def test_registry():
    assert catalog_names() == list(ENTRIES)
    with pytest.raises(ValueError, match="unknown catalog variety"):
        get_variety("nothing")


# ---------------------------------------------------------------------------
# composition algebras


def rand_elt(dim, rng):
    return [F(rng.randint(-4, 4)) for _ in range(dim)]


@settings(max_examples=40, deadline=None)
@given(dim=st.sampled_from([1, 2, 4, 8]), seed=st.integers(0, 10 ** 6))
def test_composition_identities(dim, seed):
    A = CompAlgebra(dim)
    rng = random.Random(seed)
    x, y = rand_elt(dim, rng), rand_elt(dim, rng)
    xy = A.mul(x, y)
    assert A.norm(xy) == A.norm(x) * A.norm(y)
    assert A.conj(xy) == A.mul(A.conj(y), A.conj(x))
    assert A.mul(x, A.mul(x, y)) == A.mul(A.mul(x, x), y)
    assert A.mul(A.mul(y, x), x) == A.mul(y, A.mul(x, x))
    assert A.mul(A.unit(0), x) == x == A.mul(x, A.unit(0))


def test_split_octonions_are_not_associative():
    A = CompAlgebra(8)
    e = [A.unit(i) for i in range(8)]
    assert any(A.mul(A.mul(e[i], e[j]), e[k]) != A.mul(e[i], A.mul(e[j], e[k]))
               for i in range(1, 8) for j in range(1, 8) for k in range(1, 8))


def test_split_norm_is_indefinite():
    A = CompAlgebra(2)
    assert {A.norm(A.unit(0)), A.norm(A.unit(1))} == {F(1), F(-1)}
    with pytest.raises(ValueError):
        CompAlgebra(3)


# ---------------------------------------------------------------------------
# named equations


@pytest.mark.parametrize("dim", [1, 2, 4])
def test_severi_minor_equations_vanish(dim):
    v = severi(dim)
    eqs = severi_minor_equations(dim)
    assert eqs and all(is_in_ideal_exact(v, P) for P in eqs)


def test_severi_minor_equations_span_ideal():
    v = severi(2)
    from projosc.exactalg import sparse_rank
    eqs = severi_minor_equations(2)
    assert sparse_rank([P.terms for P in eqs]) == len(ideal_slice(v, 2))


def test_spinor_printed_list_shape():
    names = spinor_coord_names()
    assert len(names) == 16 and names[0] == "x0"
    eqs = spinor_printed_equations()
    assert len(eqs) == 10 and all(P.is_homogeneous() and P.degree() == 2 for P in eqs)


def test_six_quadric_named_polys():
    v = get_variety("six-quadrics")
    assert all(is_in_ideal_exact(v, P) for P in six_quadric_generators())
    assert is_in_ideal_exact(v, six_quadric_cubic())


def test_ci_random_generators_and_verdicts():
    for seed in range(3):
        v = ci_random((2, 3), seed)
        assert all(is_in_ideal_exact(v, P) for P in ci_random_generators((2, 3), seed))
        assert ci_verdict(v, None, 3).verdict


def test_codim2_series_generators_vanish_through_order():
    v = example_4_36()
    for P in codim2_series_generators():
        pulled = P.substitute(list(v.coords), cap=v.series_order)
        assert pulled.truncate(v.series_order).is_zero()


def test_codim2_example_guards():
    with pytest.raises(ValueError):
        example_4_36(n=0)
    with pytest.raises(ValueError):
        example_4_36(lam=[1])
