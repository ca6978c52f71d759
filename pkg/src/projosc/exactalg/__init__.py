"""Exact rational arithmetic: polynomials, jets and linear algebra over Q."""

from fractions import Fraction as Rat

from .jet import Jet, jet_compose, jet_inverse, jet_pow_rational
from .linalg import (
    Echelon,
    MatQ,
    Subspace,
    densify,
    intersection,
    kernel,
    kernel_of_columns,
    quotient_dim,
    rank_of_columns,
    reduce_modulo,
    rref_basis,
    solve_sparse,
    sparse_kernel,
    sparse_rank,
    sparsify,
    subspace_ops,
    subspace_sum,
)
from .poly import (
    MPoly,
    PowerCache,
    as_rat,
    count_monomials,
    format_poly,
    monomials,
    monomials_upto,
    parse_poly,
    poly_from_vector,
    poly_to_vector,
    t_names,
    x_names,
)

__all__ = [
    "Rat", "Jet", "jet_compose", "jet_inverse", "jet_pow_rational", "Echelon", "MatQ", "Subspace",
    "densify", "intersection", "kernel", "kernel_of_columns", "quotient_dim", "rank_of_columns",
    "reduce_modulo", "rref_basis", "solve_sparse", "sparse_kernel", "sparse_rank", "sparsify",
    "subspace_ops", "subspace_sum", "MPoly", "PowerCache", "as_rat", "count_monomials", "format_poly",
    "monomials", "monomials_upto", "parse_poly", "poly_from_vector", "poly_to_vector", "t_names", "x_names",
]
