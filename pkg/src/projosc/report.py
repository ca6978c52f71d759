"""Analysis reports as plain dicts (JSON-ready) plus a text renderer."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .exactalg import MPoly, format_poly, x_names
from .osculate import (
    expected_dim_316,
    lower_bound_317,
    monge_quadrics,
    osculating_space,
    quadratic_generation_check,
)
from .quadsys import (
    QuadricSystem,
    bracket_part,
    prolongation,
    quadratic_relations,
    thresholds,
)
from .variety import (
    ParamVariety,
    adapt_at_point,
    ci_verdict,
    ideal_slice,
    third_fundamental_form,
)


def fmt_rat(x) -> str:
    return str(Fraction(x))


def ytext(P: MPoly) -> str:
    return format_poly(P, [f"y{i}" for i in range(P.nvars)])


def xtext(P: MPoly) -> str:
    return format_poly(P, x_names(P.nvars))


def stext(P: MPoly) -> str:
    return format_poly(P, [f"s{i + 1}" for i in range(P.nvars)])


def random_point(v: ParamVariety, seed: int, tries: int = 50) -> tuple:
    """Small-height rational point where the chart is defined, drawn from a seeded generator."""
    from .variety import adapted_frame
    rng = random.Random(seed)
    for _ in range(tries):
        pt = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(v.n))
        try:
            adapted_frame(v, pt)
        except ValueError:
            continue
        return pt
    raise ValueError(f"no usable random point found in {tries} draws (seed {seed})")


def _chart_section(c) -> dict:
    n = c.n
    parts = {}
    for k in range(2, min(c.cap, 5) + 1):
        parts[f"F{k}" if k > 2 else "II"] = [stext(fm.part(k)) for fm in c.f]
    iii = third_fundamental_form(c) if c.cap >= 3 else []
    return {
        "cap": c.cap,
        "forms": parts,
        "iii_dim": len(iii),
        "iii": [stext(f.to_poly()) for f in iii],
        "coordinate_change": [[fmt_rat(x) for x in row] for row in c.change_of_coords.entries],
        "tangent_vars": n,
    }


def osculation_table(c, D: int, K: int) -> list[dict]:
    rows = []
    n, a = c.n, c.a
    for d in range(1, D + 1):
        for k in range(0, min(K, c.cap) + 1):
            sp = osculating_space(c, d, k)
            bound = None
            kind = None
            flag = None
            if k <= d:
                bound = expected_dim_316(n, a, d, k)
                kind = "dimension formula"
                flag = sp.dim == bound
            elif k == 2 * d - 1 and d >= 2:
                bound = lower_bound_317(c, d).expected
                kind = "lower bound"
                flag = sp.dim >= bound
            rows.append({
                "degree": d,
                "order": k,
                "vector_dim": sp.dim,
                "projective_dim": sp.dim - 1,
                "paper_bound": bound,
                "paper_bound_projective": None if bound is None else bound - 1,
                "bound_kind": kind,
                "equality_flag": flag,
                "stabilized": sp.stabilized,
            })
    return rows


def syzygy_section(c) -> dict:
    quads = [fm.part(2) for fm in c.f if not fm.part(2).is_zero()]
    if not quads:
        return {"a": 0, "prolongation": 0, "bracket": 0, "linear_syzygies": [], "quadratic_relations": []}
    A = QuadricSystem.from_polys(c.n, quads)
    br = bracket_part(A)
    rel = quadratic_relations(A)
    names = [f"Q{i + 1}" for i in range(A.a)]
    return {
        "a": A.a,
        "tensor": A.a * c.n,
        "prolongation": len(prolongation(A)),
        "bracket": len(br),
        "linear_syzygies": [s.describe() for s in br],
        "quadratic_relations": [format_poly(r, names) for r in rel],
    }


def monge_section(c) -> dict:
    rep = monge_quadrics(c)
    return {
        "verdict": rep.verdict,
        "hypotheses": rep.hypotheses,
        "kernel_dims": {str(k): v for k, v in rep.ker_dims.items()},
        "bounds": {str(k): v for k, v in rep.bounds.items()},
        "bounds_projective": {str(k): v - 1 for k, v in rep.bounds.items()},
        "equality": {str(k): v for k, v in rep.equality.items()},
        "stages": {str(k): {"solvable": s.solvable, "unknowns": s.unknowns, "solution_dim": s.solution_dim}
                   for k, s in rep.stages.items()},
        "a_coeffs": None if rep.a_coeffs is None else [[[fmt_rat(x) for x in r] for r in m] for m in rep.a_coeffs],
        "b_coeffs": None if rep.b_coeffs is None else [[[fmt_rat(x) for x in r] for r in m] for m in rep.b_coeffs],
        "generators": [xtext(P) for P in rep.generators],
        "generators_adapted": [ytext(P) for P in rep.generators_adapted],
        "membership": rep.membership,
    }


def ci_section(v: ParamVariety, t0, D: int) -> dict:
    rep = ci_verdict(v, t0, D)
    return {
        "verdict": rep.verdict,
        "verdict_text": rep.verdict_text,
        "degrees": [
            {"degree": r.k, "dim_ideal": r.dim_ideal, "dim_trivial": r.dim_trivial,
             "new_generators": r.new_generators, "conormal_increment": r.conormal_increment,
             "kernel_dim": r.kernel_dim, "injective": r.injective,
             "witness": None if r.witness is None else xtext(r.witness)}
            for r in rep.degrees
        ],
        "filtration": {"dims": rep.filtration.dims, "jumps": rep.filtration.jumps,
                       "increments": rep.filtration.increments},
    }


def ideal_section(v: ParamVariety, D: int) -> dict:
    return {str(d): [xtext(P) for P in ideal_slice(v, d)] for d in range(1, D + 1)}


def analyze(v: ParamVariety, point: Sequence | None = None, D: int = 3, K: int = 7,
            seed: int | None = None, checks: Sequence[str] = ("osculation", "syzygies", "monge", "ci",
                                                                "thresholds"),
            b_sing: int = -1) -> dict:
    if D < 1:
        raise ValueError("max degree must be at least 1")
    if "monge" in checks and K < 5:
        raise ValueError("the Monge checks need max order at least 5")
    t0 = tuple(point) if point is not None else v.default_point()
    cap = K if v.series_order is None else min(K, v.series_order)
    c = adapt_at_point(v, t0, max(cap, 2))
    rep = {
        "variety": v.to_spec(),
        "point": [fmt_rat(x) for x in t0],
        "seed": seed,
        "max_degree": D,
        "max_order": K,
        "chart": _chart_section(c),
    }
    polynomial = v.series_order is None
    if "osculation" in checks:
        rep["osculation"] = osculation_table(c, D, K)
    if "syzygies" in checks:
        rep["syzygies"] = syzygy_section(c)
    if "monge" in checks:
        rep["monge"] = monge_section(c) if c.cap >= 5 else {"verdict": "skipped", "reason": "chart cap below 5"}
    if polynomial:
        rep["ideal"] = ideal_section(v, min(D, 3))
        if "ci" in checks:
            rep["ci"] = ci_section(v, t0, D)
    else:
        rep["ideal"] = None
        if "ci" in checks:
            rep["ci"] = {"verdict": None, "verdict_text": "skipped: the parametrization is a truncated series"}
    if "thresholds" in checks:
        th = thresholds(v.n, v.a, b_sing)
        rep["thresholds"] = {"sing_dim": b_sing, "prolongation_forced_zero": th.prolongation_forced_zero,
                             "no_linear_syzygies_forced": th.no_linear_syzygies_forced,
                             "ci_if_quadric_generated": th.ci_if_quadric_generated}
    if "generation" in checks and polynomial:
        g = quadratic_generation_check(v, t0, D)
        rep["generation"] = {
            "generated": g.generated, "conormal_ok": g.conormal_ok,
            "rows": [{"degree": r.e, "dim_ideal": r.dim_ideal, "dim_from_quadrics": r.dim_from_quadrics,
                      "excess": r.excess, "excess_generators": [xtext(p) for p in r.excess_generators],
                      "nonkoszul": r.nonkoszul} for r in g.rows],
        }
    return rep


def ci_report(v: ParamVariety, point=None, D: int = 3, seed=None) -> dict:
    t0 = tuple(point) if point is not None else v.default_point()
    return {"variety": v.to_spec(), "point": [fmt_rat(x) for x in t0], "seed": seed, "max_degree": D,
            "ci": ci_section(v, t0, D)}


def monge_report(v: ParamVariety, point=None, K: int = 7, seed=None) -> dict:
    t0 = tuple(point) if point is not None else v.default_point()
    cap = K if v.series_order is None else min(K, v.series_order)
    if cap < 5:
        raise ValueError("the Monge pipeline needs a chart cap of at least 5")
    c = adapt_at_point(v, t0, cap)
    return {"variety": v.to_spec(), "point": [fmt_rat(x) for x in t0], "seed": seed, "max_order": K,
            "chart": _chart_section(c), "syzygies": syzygy_section(c), "monge": monge_section(c)}


# ---------------------------------------------------------------------------
# text rendering


def render_text(rep: dict) -> str:
    out = []
    v = rep["variety"]
    out.append(f"variety {v.get('label') or '(unnamed)'}: n = {v['n']}, a = {v['a']}")
    out.append(f"point {rep['point']}" + (f" (seed {rep['seed']})" if rep.get("seed") is not None else ""))
    if "chart" in rep:
        ch = rep["chart"]
        out.append(f"chart cap {ch['cap']}")
        for name, forms in ch["forms"].items():
            out.append(f"  {name}: " + "; ".join(forms))
        out.append(f"  III dim {ch['iii_dim']}" + (": " + "; ".join(ch["iii"]) if ch["iii"] else ""))
    if rep.get("osculation"):
        out.append("osculation (vector dims; projective = vector - 1)")
        out.append("  d  k  dim  proj  bound  kind               flag  stable")
        for r in rep["osculation"]:
            b = "-" if r["paper_bound"] is None else str(r["paper_bound"])
            kind = r["bound_kind"] or "-"
            flag = "-" if r["equality_flag"] is None else ("ok" if r["equality_flag"] else "FAIL")
            out.append(f"  {r['degree']:<2} {r['order']:<2} {r['vector_dim']:<4} {r['projective_dim']:<5} "
                       f"{b:<6} {kind:<18} {flag:<5} {'yes' if r['stabilized'] else 'no'}")
    if rep.get("syzygies"):
        s = rep["syzygies"]
        out.append(f"second fundamental form: {s['a']} independent quadrics; prolongation dim {s['prolongation']}, "
                   f"linear syzygies {s['bracket']}, quadratic relations {len(s['quadratic_relations'])}")
        for line in s["linear_syzygies"]:
            out.append(f"  linear syzygy: {line}")
        for line in s["quadratic_relations"]:
            out.append(f"  quadratic relation: {line}")
    if rep.get("monge"):
        m = rep["monge"]
        out.append(f"Monge verdict: {m['verdict']}")
        if "hypotheses" in m:
            out.append("  hypotheses: " + ", ".join(f"{k}={v}" for k, v in m["hypotheses"].items()))
            for k in m["kernel_dims"]:
                b = m["bounds"].get(k)
                eq = m["equality"].get(k)
                extra = "" if b is None else f" (bound {b}, projective {b - 1}, equality {eq})"
                out.append(f"  order {k}: osculating quadrics dim {m['kernel_dims'][k]}{extra}")
            for k, st in m["stages"].items():
                out.append(f"  stage {k}: solvable {st['solvable']}, solution set dim {st['solution_dim']}")
            if m["b_coeffs"] is not None and any(x != "0" for mat in m["b_coeffs"] for r in mat for x in r):
                out.append(f"  b coefficients (nonzero): {m['b_coeffs']}")
            for g in m["generators"]:
                out.append(f"  generator: {g}")
            out.append(f"  membership: {m['membership']}")
    if rep.get("ideal"):
        for d, gens in rep["ideal"].items():
            out.append(f"ideal degree {d}: dim {len(gens)}")
            for g in gens[:12]:
                out.append(f"  {g}")
            if len(gens) > 12:
                out.append(f"  ... ({len(gens) - 12} more)")
    if rep.get("ci"):
        c = rep["ci"]
        out.append(f"CI: {c['verdict_text']}")
        for r in c.get("degrees", []):
            w = f", witness {r['witness']}" if r["witness"] else ""
            out.append(f"  degree {r['degree']}: dim I {r['dim_ideal']}, trivial {r['dim_trivial']}, "
                       f"new {r['new_generators']}, conormal +{r['conormal_increment']}, "
                       f"kernel {r['kernel_dim']}{w}")
        if "filtration" in c:
            f = c["filtration"]
            out.append(f"  conormal filtration dims {f['dims']}, jumps {f['jumps']}, increments {f['increments']}")
    if rep.get("generation"):
        g = rep["generation"]
        out.append(f"generated by quadrics: {g['generated']} (conormal condition {g['conormal_ok']})")
        for r in g["rows"]:
            out.append(f"  degree {r['degree']}: dim I {r['dim_ideal']}, from quadrics {r['dim_from_quadrics']}, "
                       f"excess {r['excess']}" + (f", non-Koszul relations {r['nonkoszul']}" if r["nonkoszul"] is not None else ""))
            for p in r["excess_generators"]:
                out.append(f"    excess generator: {p}")
    if rep.get("thresholds"):
        t = rep["thresholds"]
        out.append("thresholds: " + ", ".join(f"{k}={v}" for k, v in t.items()))
    return "\n".join(out)
