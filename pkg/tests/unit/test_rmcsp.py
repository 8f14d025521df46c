#!/usr/bin/env python
import numpy as np
import pytest

from gapchain.exceptions import (
    CompletenessError,
    ParseError,
    PreconditionError,
    SamplingFailed,
    VerificationFailed,
)
from gapchain.cnf import parse_dimacs, sat_bruteforce, tovey_normalize
from gapchain.ff import FieldMat
from gapchain.rmcsp import (
    Assignment,
    CliqueVertex,
    RmCliqueGraph,
    RmCspInstance,
    RmFamily,
    RmGroup,
    WitnessClique,
    check_test,
    default_ell,
    enumerate_tests,
    failing_tests,
    family_size,
    find_passing_assignment,
    format_rmcsp,
    format_vertex,
    intended_assignment,
    parse_rmcsp,
    parse_vertex,
    probe_soundness,
    sample_matrices,
    type3_layer,
    verify_matrix_properties,
    verify_witness_clique,
    witness_clique,
)
from gapchain.rmcsp.instance import instance_summary
from gapchain.vectorsum import (
    VectorSumInstance,
    assignment_to_witness,
    reduce_sat_to_vectorsum,
)

SATISFIABLE = [
    "p cnf 3 2\n1 2 3 0\n-1 2 3 0\n",
    "p cnf 3 3\n1 -2 0\n2 -3 0\n3 1 0\n",
    "p cnf 4 4\n1 2 0\n-1 3 0\n-3 4 0\n-2 -4 0\n",
    "p cnf 2 1\n1 -2 0\n",
    "p cnf 5 4\n1 2 3 0\n-1 -2 0\n4 -5 0\n5 -3 0\n",
    "p cnf 1 4\n1 0\n1 0\n1 0\n1 0\n",
]
UNSATISFIABLE = [
    "p cnf 1 2\n1 0\n-1 0\n",
    "p cnf 2 3\n1 0\n-1 2 0\n-2 0\n",
    "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n",
]


@pytest.fixture
def trivial_inst(trivial_source, unit_mats):
    return RmCspInstance(trivial_source, unit_mats)


@pytest.fixture
def no_inst(no_source, unit_mats):
    return RmCspInstance(no_source, unit_mats)


@pytest.fixture
def pair_inst(f5, unit_mats):
    """k = 1 with V_1 = {(0), (1)}: a yes-instance whose group holds two vectors."""
    return RmCspInstance(VectorSumInstance.build(f5, [[[0], [1]]]), unit_mats)


def test_default_ell(trivial_source, f5):
    assert default_ell(trivial_source) == 2
    # k = 2, n = 14
    source = VectorSumInstance.build(f5, [[[0]] * 7, [[0]] * 7])
    assert default_ell(source) == 4 + 4 * 4


def test_group_count_and_copies(trivial_inst):
    graph = RmCliqueGraph(trivial_inst)
    assert graph.group_count == 5000
    assert graph.copies == {1: 2, 2: 5, 3: 100}
    assert graph.vertex_bound() == 2 * 5**8 + 2 * 5**6 + 4 * 5**5
    assert instance_summary(trivial_inst)["k_prime"] == 5000


def test_group_index_space(trivial_inst):
    graph = RmCliqueGraph(trivial_inst)
    assert graph.group_at(0) == RmGroup(1, "LD", (0, 0, 0, 0), 0)
    assert graph.group_at(1) == RmGroup(1, "LD", (0, 0, 0, 0), 1)
    assert graph.group_at(1250).kind == "LA"
    assert graph.group_at(1875).kind == "LB"
    assert graph.group_at(4999) == RmGroup(3, "V", (4, 4), 99)
    with pytest.raises(PreconditionError):
        graph.group_at(5000)


def test_family_sizes(trivial_inst):
    sizes = {f: family_size(trivial_inst, f) for f in RmFamily}
    assert sizes[RmFamily.LOW_DEGREE] == 625
    assert sizes[RmFamily.LINEARITY_ALPHA] + sizes[RmFamily.LINEARITY_BETA] == 250
    assert sizes[RmFamily.NEIGHBOR] == 25
    assert sizes[RmFamily.WRAP] == 25
    for family in (RmFamily.LOW_DEGREE, RmFamily.NEIGHBOR, RmFamily.WRAP):
        assert sum(1 for _ in enumerate_tests(trivial_inst, family)) == sizes[family]


def test_sample_matrices_deterministic(trivial_source):
    mats, report = sample_matrices(trivial_source, 2, seed=7)
    again, _ = sample_matrices(trivial_source, 2, seed=7)
    assert report.ok
    assert mats == again
    assert len(mats) == 2


def test_sample_matrices_zero_ell(trivial_source):
    with pytest.raises(PreconditionError):
        sample_matrices(trivial_source, 0)


def test_sample_matrices_gives_up(f5):
    """One 1x1 matrix can never separate triples."""
    source = VectorSumInstance.build(f5, [[[1], [2], [3]]])
    with pytest.raises(SamplingFailed):
        sample_matrices(source, 1, max_retries=3)


def test_zero_matrix_is_not_injective(no_source, f5):
    report = verify_matrix_properties([FieldMat.of(f5, [[0]])], no_source)
    assert not report.injective
    assert report.witnesses["injective"] == (1,)
    assert report.failed() == ["injective"]
    with pytest.raises(VerificationFailed):
        RmCspInstance(no_source, [FieldMat.of(f5, [[0]])])


def test_pair_separation(f5):
    source = VectorSumInstance.build(f5, [[[1], [2]]])
    assert verify_matrix_properties([FieldMat.of(f5, [[1]])], source).pair_separating
    report = verify_matrix_properties([FieldMat.of(f5, [[0]])], source)
    assert not report.pair_separating
    assert report.witnesses["pair_separating"][:3] == (0, 0, 1)


def test_matrix_shape_checked(trivial_source, f5):
    with pytest.raises(PreconditionError):
        RmCspInstance(trivial_source, [FieldMat.of(f5, [[1, 0]])])
    with pytest.raises(PreconditionError):
        RmCspInstance(trivial_source, [])


def test_intended_assignment_is_bilinear(f5):
    source = VectorSumInstance.build(f5, [[[1, 0]], [[4, 0]]], d=2)
    mats = [FieldMat.of(f5, [[1, 2], [0, 1]]), FieldMat.of(f5, [[3, 0], [1, 1]])]
    inst = RmCspInstance(source, mats)
    asg = intended_assignment(inst, [source.groups[0][0], source.groups[1][0]])
    for beta in inst.alphas():
        assert asg[(0, 0) + beta] == (0, 0)
    for alpha in inst.alphas():
        assert asg[alpha + (0, 0)] == (0, 0)
        for b1 in ((1, 0), (2, 3)):
            for b2 in ((0, 4), (1, 1)):
                b12 = tuple((x + y) % 5 for x, y in zip(b1, b2))
                total = tuple((x + y) % 5 for x, y in zip(asg[alpha + b1], asg[alpha + b2]))
                assert total == asg[alpha + b12]


def test_intended_assignment_passes_every_test(pair_inst):
    asg = intended_assignment(pair_inst, [pair_inst.source.groups[0][0]])
    assert failing_tests(asg, pair_inst) == {}


def test_zero_assignment_fails_neighbor(no_inst):
    failing = failing_tests(Assignment.zero(no_inst), no_inst)
    assert RmFamily.NEIGHBOR in failing
    assert RmFamily.WRAP not in failing
    assert RmFamily.LOW_DEGREE not in failing
    assert failing[RmFamily.NEIGHBOR].anchor[0] != 0


def test_same_group_is_independent(trivial_inst):
    graph = RmCliqueGraph(trivial_inst)
    group = RmGroup(3, "V", (0, 0), 0)
    assert not graph.adjacent(CliqueVertex(group, ((0,),)), CliqueVertex(group, ((1,),)))


def test_copies_are_linked(trivial_inst):
    graph = RmCliqueGraph(trivial_inst)
    a = CliqueVertex(RmGroup(3, "V", (2, 3), 0), ((4,),))
    b = CliqueVertex(RmGroup(3, "V", (2, 3), 1), ((4,),))
    c = CliqueVertex(RmGroup(3, "V", (2, 3), 1), ((3,),))
    assert graph.adjacent(a, b)
    assert graph.adjacent(b, a)
    assert not graph.adjacent(a, c)


def test_variable_against_low_degree_test(trivial_inst):
    graph = RmCliqueGraph(trivial_inst)
    # points (i, 0) for i = 0..3 carrying the values of i^2
    test = CliqueVertex(RmGroup(1, "LD", (0, 0, 1, 0), 0), ((0,), (1,), (4,), (4,)))
    assert graph.satisfies(test)
    assert graph.adjacent(CliqueVertex(RmGroup(3, "V", (1, 0), 0), ((1,),)), test)
    assert not graph.adjacent(CliqueVertex(RmGroup(3, "V", (1, 0), 0), ((2,),)), test)
    # (4, 4) is not queried by the test
    assert graph.adjacent(CliqueVertex(RmGroup(3, "V", (4, 4), 0), ((2,),)), test)


def test_variable_pairs(no_inst):
    graph = RmCliqueGraph(no_inst)

    def var(x, val):
        return CliqueVertex(RmGroup(3, "V", x, 0), ((val,),))

    # alpha = 0: the neighbor and wrap differences are both 0
    assert graph.adjacent(var((0, 1), 3), var((0, 2), 3))
    assert not graph.adjacent(var((0, 1), 3), var((0, 2), 4))
    # alpha = 1: neighbor wants difference 1, wrap wants 0
    assert not graph.adjacent(var((1, 1), 3), var((1, 2), 4))
    assert not graph.adjacent(var((1, 1), 3), var((1, 2), 3))
    # different alphas are never constrained
    assert graph.adjacent(var((1, 1), 3), var((2, 1), 0))


def test_vertex_text(trivial_inst):
    graph = RmCliqueGraph(trivial_inst)
    v = CliqueVertex(RmGroup(1, "LD", (0, 0, 1, 0), 1), ((0,), (1,), (4,), (4,)))
    text = format_vertex(v)
    assert text == "LD:0,0,1,0#1=0|1|4|4"
    assert parse_vertex(text, graph) == v
    for bad in ("LD:0,0,1,0#1=0|1|4|3", "XX:0,0#0=1", "V:0,0#100=1", "V:0,0#0=7", "nonsense"):
        with pytest.raises(ParseError):
            parse_vertex(bad, graph)


def test_witness_clique_on_trivial_source(trivial_inst):
    clique = witness_clique(trivial_inst, (0,))
    assert len(clique) == 5000
    check = verify_witness_clique(clique, samples=500, seed=3)
    assert check.ok
    assert check.groups == 5000
    assert check.variable_pairs == 25 + 25 * 24 // 2


def test_witness_clique_needs_a_witness(no_inst):
    with pytest.raises(PreconditionError):
        witness_clique(no_inst, (0,))


def test_witness_clique_rejects_broken_assignment(no_inst):
    clique = WitnessClique(RmCliqueGraph(no_inst), Assignment.zero(no_inst))
    assert clique.vertex(RmGroup(3, "V", (1, 1), 0)).payload == ((0,),)
    check = verify_witness_clique(clique, samples=0, all_groups=False)
    assert not check.ok


def test_incomplete_vertex_raises(f5, unit_mats):
    inst = RmCspInstance(VectorSumInstance.build(f5, [[[0]]]), unit_mats)
    table = np.arange(25, dtype=np.int64).reshape(25, 1)

    clique = WitnessClique(RmCliqueGraph(inst), Assignment(inst, table))
    with pytest.raises(CompletenessError):
        clique.vertex(RmGroup(2, "LA", (0, 0, 1), 0))


def test_passing_assignment(pair_inst, no_inst):
    asg = find_passing_assignment(pair_inst)
    assert asg is not None
    assert failing_tests(asg, pair_inst) == {}
    assert find_passing_assignment(no_inst) is None


def test_soundness_probe(no_inst):
    """Rows with alpha != 0 are 5-cycles without edges: 5 + 4 * 2 variables survive."""
    probe = probe_soundness(no_inst)
    assert not probe.full_clique
    assert probe.layer_groups == 25
    assert probe.layer_best == 13
    # no passing assignment exists, so the layer selection breaks some family
    assert probe.failing
    evaluated = failing_tests(probe.assignment, no_inst)
    assert probe.failing == tuple(f.value for f in evaluated)
    for t in evaluated.values():
        assert not check_test(probe.assignment, t, no_inst)


def test_type3_layer(trivial_inst):
    layer = type3_layer(RmCliqueGraph(trivial_inst))
    assert layer.group_count == 25


def test_instance_text(trivial_inst):
    text = format_rmcsp(trivial_inst)
    assert text.startswith("rmcsp 1\nvectorsum\n")
    assert text.endswith("matrix 1\n1\nend\n")
    again = parse_rmcsp(text)
    assert again.mats == trivial_inst.mats
    assert again.source == trivial_inst.source
    with pytest.raises(ParseError):
        parse_rmcsp(text.replace("rmcsp 1", "rmcsp x"))
    with pytest.raises(ParseError):
        parse_rmcsp(text.replace("matrix 1", "matrix 2"))
    with pytest.raises(ParseError):
        parse_rmcsp(text + "more\n")


def reduce_formula(dimacs, seed=3):
    """sat2vs with one part, then one sampled matrix."""
    f = tovey_normalize(parse_dimacs(dimacs))
    source = reduce_sat_to_vectorsum(f, 1)
    mats, report = sample_matrices(source, 1, seed=seed)
    assert report.ok
    return f, source, RmCspInstance(source, mats)


@pytest.mark.parametrize("dimacs", SATISFIABLE)
def test_satisfiable_formula_gives_full_clique(dimacs):
    f, source, inst = reduce_formula(dimacs)
    tau = sat_bruteforce(f)
    assert tau is not None
    check = verify_witness_clique(
        witness_clique(inst, assignment_to_witness(source, tau)), samples=100_000, seed=1
    )
    assert check.ok
    assert check.groups == 8 * 5**4
    assert check.sampled_pairs == 100_000
    assert family_size(inst, RmFamily.LOW_DEGREE) == 5**4
    linearity = family_size(inst, RmFamily.LINEARITY_ALPHA)
    assert linearity + family_size(inst, RmFamily.LINEARITY_BETA) == 2 * 5**3
    assert family_size(inst, RmFamily.NEIGHBOR) == 5**2
    assert family_size(inst, RmFamily.WRAP) == 5**2


@pytest.mark.parametrize("dimacs", UNSATISFIABLE)
def test_unsatisfiable_formula_has_no_full_clique(dimacs):
    f, source, inst = reduce_formula(dimacs)
    assert sat_bruteforce(f) is None
    assert source.empty_groups == (0,)
    probe = probe_soundness(inst)
    assert not probe.full_clique
    assert not probe.lower_bound_only
    assert probe.layer_groups == 25
    # no neighbor test can pass, so each row of five variables keeps two non-neighbors
    assert probe.layer_best == 10
    assert "NB" in probe.failing
