"""Catalog varieties and the composition-algebra engine behind the Severi entries."""

from .compalg import CompAlgebra
from .entries import (
    ENTRIES,
    CatalogEntry,
    catalog_names,
    ci_random,
    ci_random_generators,
    example_4_24,
    six_quadric_cubic,
    six_quadric_generators,
    six_quadric_system,
    example_4_36,
    codim2_series_generators,
    get_variety,
    grass2,
    plane_conic,
    plane_cubic,
    segre,
    severi,
    severi_minor_equations,
    spinor10,
    spinor_coord_names,
    spinor_printed_equations,
    twisted_cubic,
    veronese,
)

__all__ = [
    "CompAlgebra", "ENTRIES", "CatalogEntry", "catalog_names", "ci_random", "ci_random_generators",
    "example_4_24", "six_quadric_cubic", "six_quadric_generators", "six_quadric_system", "example_4_36",
    "codim2_series_generators", "get_variety", "grass2", "plane_conic", "plane_cubic", "segre", "severi",
    "severi_minor_equations", "spinor10", "spinor_coord_names", "spinor_printed_equations", "twisted_cubic",
    "veronese",
]
