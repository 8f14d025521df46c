from gapchain.ldt.tabulated import (
    TabulatedFunction,
    format_table,
    monomials,
    parse_table,
    polynomial_table,
    random_function_table,
    random_polynomial_table,
)
from gapchain.ldt.tester import (
    DistanceReport,
    LdtParams,
    RejectRate,
    distance_to_degree,
    interpolation_identity_holds,
    ldt_coefficients,
    line_test,
    reject_rate,
    self_correct,
    self_corrected_table,
    soundness_floor,
)

__all__ = [
    "TabulatedFunction",
    "format_table",
    "parse_table",
    "monomials",
    "polynomial_table",
    "random_function_table",
    "random_polynomial_table",
    "LdtParams",
    "RejectRate",
    "DistanceReport",
    "ldt_coefficients",
    "line_test",
    "reject_rate",
    "self_correct",
    "self_corrected_table",
    "distance_to_degree",
    "interpolation_identity_holds",
    "soundness_floor",
]
