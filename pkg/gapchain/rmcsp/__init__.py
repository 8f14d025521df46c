from gapchain.rmcsp.instance import RmCspInstance, default_ell, format_rmcsp, parse_rmcsp
from gapchain.rmcsp.matrices import MatrixReport, sample_matrices, verify_matrix_properties
from gapchain.rmcsp.checks import (
    Assignment,
    RmFamily,
    RmTest,
    check_test,
    enumerate_tests,
    failing_tests,
    family_size,
    intended_assignment,
    make_test,
)
from gapchain.rmcsp.graph import (
    CliqueVertex,
    RmCliqueGraph,
    RmGroup,
    WitnessClique,
    build_grouped_graph,
    format_vertex,
    parse_vertex,
    type3_layer,
    verify_witness_clique,
    witness_clique,
)
from gapchain.rmcsp.oracle import SoundnessProbe, find_passing_assignment, probe_soundness

__all__ = [
    "RmCspInstance",
    "default_ell",
    "format_rmcsp",
    "parse_rmcsp",
    "MatrixReport",
    "sample_matrices",
    "verify_matrix_properties",
    "Assignment",
    "RmFamily",
    "RmTest",
    "check_test",
    "enumerate_tests",
    "failing_tests",
    "family_size",
    "intended_assignment",
    "make_test",
    "CliqueVertex",
    "RmCliqueGraph",
    "RmGroup",
    "WitnessClique",
    "build_grouped_graph",
    "format_vertex",
    "parse_vertex",
    "type3_layer",
    "verify_witness_clique",
    "witness_clique",
    "SoundnessProbe",
    "find_passing_assignment",
    "probe_soundness",
]
