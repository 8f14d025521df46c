from gapchain.ff.prime_field import PrimeField, field_ops, is_prime
from gapchain.ff.linalg import (
    FieldMat,
    FieldVec,
    bilinear_f,
    format_mat,
    format_vec,
    nullspace_basis,
    parse_mat,
    parse_vec,
    poly_eval,
    rank_mod_p,
    row_reduce,
    stack_mats,
)

__all__ = [
    "PrimeField",
    "field_ops",
    "is_prime",
    "FieldVec",
    "FieldMat",
    "bilinear_f",
    "poly_eval",
    "format_vec",
    "parse_vec",
    "format_mat",
    "parse_mat",
    "row_reduce",
    "rank_mod_p",
    "nullspace_basis",
    "stack_mats",
]
