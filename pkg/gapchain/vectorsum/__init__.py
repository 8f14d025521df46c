from gapchain.vectorsum.instance import (
    PartitionLayout,
    VectorSumInstance,
    format_instance,
    parse_instance,
)
from gapchain.vectorsum.reduction import (
    assignment_to_witness,
    encode_part,
    partition_clauses,
    reduce_sat_to_vectorsum,
    witness_to_assignment,
)
from gapchain.vectorsum.gadgets import (
    GadgetReport,
    check_gadget_properties,
    solve_vectorsum_bruteforce,
)

__all__ = [
    "PartitionLayout",
    "VectorSumInstance",
    "format_instance",
    "parse_instance",
    "partition_clauses",
    "encode_part",
    "reduce_sat_to_vectorsum",
    "assignment_to_witness",
    "witness_to_assignment",
    "GadgetReport",
    "check_gadget_properties",
    "solve_vectorsum_bruteforce",
]
