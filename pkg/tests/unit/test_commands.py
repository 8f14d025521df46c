#!/usr/bin/env python
from os.path import dirname, exists, join

import pytest

from gapchain import (
    ConfigInvalidException,
    PipelineConfig,
    cmd_adj,
    cmd_ldt,
    cmd_oracle,
    cmd_reduce,
    cmd_verify,
)
from gapchain.rmcsp import format_rmcsp
from gapchain.rmcsp.instance import RmCspInstance
from gapchain.utilities import report_as_dict
from gapchain.vectorsum import format_instance

RESOURCE_FOLDER = join(dirname(dirname(__file__)), "etc")


def resource(name):
    return join(RESOURCE_FOLDER, name)


def test_reduce_sat2vs(tmp_path):
    out = str(tmp_path / "two_clause.vs")
    result = cmd_reduce("sat2vs", resource("two_clause.cnf"), out, PipelineConfig(k=2))
    assert result.exit_code == 0
    assert result.output.startswith("vectorsum\n")
    assert open(out).read() == result.output
    values = report_as_dict(result.report)
    assert values["chain"] == "sat2vs"
    assert values["seed"] == "0"
    assert values["exit"] == "0"


def test_reduce_unknown_chain(tmp_path):
    result = cmd_reduce("sat2clique", resource("two_clause.cnf"), str(tmp_path / "x"))
    assert result.exit_code == 2
    assert "error = PreconditionError" in result.report
    assert not exists(str(tmp_path / "x"))


def test_reduce_bad_input(tmp_path):
    result = cmd_reduce("sat2vs", resource("planted.graph"), str(tmp_path / "x"))
    assert result.exit_code == 2
    assert "error = ParseError" in result.report


def test_reduce_side_artifacts(tmp_path):
    out = str(tmp_path / "planted.bic")
    result = cmd_reduce(
        "clique2biclique,compress",
        resource("planted.graph"),
        out,
        PipelineConfig(k=2, disperser_cap=True),
    )
    assert result.exit_code == 0
    assert set(result.extra) == {".disperser"}
    assert open(str(tmp_path / "planted.disperser")).read() == result.extra[".disperser"]
    assert report_as_dict(result.report)["chain"] == "clique2biclique,compress"


def test_reduce_oversized_disperser(tmp_path):
    out = tmp_path / "planted.bic"
    result = cmd_reduce("clique2biclique,compress", resource("planted.graph"), str(out))
    assert result.exit_code == 2
    assert "error = PreconditionError" in result.report
    assert not out.exists()


def test_reduce_deterministic(tmp_path):
    """Same input and seed give byte-identical artifacts and reports."""
    config = PipelineConfig(seed=5, k=2)
    runs = []
    for name in ("a", "b"):
        out = str(tmp_path / f"{name}.rmcsp")
        report_file = str(tmp_path / f"{name}.report")
        result = cmd_reduce(
            "sat2vs,vs2clique", resource("two_clause.cnf"), out, config, report_file
        )
        assert result.exit_code == 0
        runs.append((open(out).read(), open(report_file).read()))
    assert runs[0] == runs[1]
    assert runs[0][0].startswith("rmcsp")


def test_reduce_budget(tmp_path):
    config = PipelineConfig(t=2, budget_materialize=10)
    result = cmd_reduce("amplify", resource("planted.graph"), str(tmp_path / "x"), config)
    assert result.exit_code == 3
    assert "error = BudgetExceeded" in result.report


def test_config_error():
    with pytest.raises(ConfigInvalidException):
        cmd_reduce("sat2vs", resource("two_clause.cnf"), config=PipelineConfig(p=6))


def test_verify_graph():
    result = cmd_verify("graph", [resource("planted.graph")])
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["groups"] == "4"
    assert values["edges"] == "8"
    assert values["groups_independent"] == "true"
    assert values["result"] == "pass"


def test_verify_instance(tmp_path):
    vs_file = str(tmp_path / "two_clause.vs")
    cmd_reduce("sat2vs", resource("two_clause.cnf"), vs_file, PipelineConfig(k=2))
    result = cmd_verify("instance", [vs_file])
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["kind"] == "vectorsum"
    assert values["gadget_p3"] == "true"


def test_verify_rmcsp_instance(tmp_path, trivial_source, unit_mats):
    rm_file = tmp_path / "trivial.rmcsp"
    rm_file.write_text(format_rmcsp(RmCspInstance(trivial_source, unit_mats)))
    result = cmd_verify("instance", [str(rm_file)])
    assert result.exit_code == 0
    assert report_as_dict(result.report)["kind"] == "rmcsp"


def test_verify_disperser_fails():
    result = cmd_verify("disperser", [resource("thin.disperser")])
    assert result.exit_code == 4
    values = report_as_dict(result.report)
    assert values["threshold"] == "3"
    assert values["counterexample_subsets"] == "0"
    assert values["counterexample_union"] == "2"
    assert values["error"] == "VerificationFailed"


def test_verify_capped_disperser(tmp_path):
    disperser = tmp_path / "capped.disperser"
    disperser.write_text("disperser 4 2 4 1 1/2 capped\n0 1 2 3\n0 1 2 3\n")
    result = cmd_verify("disperser", [str(disperser)])
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["capped"] == "true"
    assert values["disperser"] == "capped"


def test_verify_witness():
    files = [resource("planted.graph"), resource("planted.witness")]
    result = cmd_verify("witness", files)
    assert result.exit_code == 0
    assert report_as_dict(result.report)["is_clique"] == "true"

    files = [resource("planted.graph"), resource("broken.witness")]
    result = cmd_verify("witness", files)
    assert result.exit_code == 4
    assert report_as_dict(result.report)["is_clique"] == "false"


def test_verify_rmcsp_witness(tmp_path, trivial_source, unit_mats):
    rm_file = tmp_path / "trivial.rmcsp"
    rm_file.write_text(format_rmcsp(RmCspInstance(trivial_source, unit_mats)))
    witness = tmp_path / "trivial.witness"
    witness.write_text("witness vectorsum 1\n1 0\nend\n")
    result = cmd_verify("witness", [str(rm_file), str(witness)])
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["groups"] == "5000"
    assert values["failures"] == "0"


@pytest.mark.parametrize(
    "rows, message",
    [
        (["1 abc"], "row 1: vector index 'abc' is not an integer"),
        (["1 7"], "group 1 has no vector 7"),
        (["1 0", "1 0"], "row 2 repeats group 1"),
        (["2 0"], "row 1 names group 2 of 1"),
        ([], "leaves groups [1] without a vector"),
    ],
)
def test_verify_rmcsp_witness_rows(tmp_path, trivial_source, unit_mats, rows, message):
    rm_file = tmp_path / "trivial.rmcsp"
    rm_file.write_text(format_rmcsp(RmCspInstance(trivial_source, unit_mats)))
    witness = tmp_path / "bad.witness"
    body = "".join(row + "\n" for row in rows)
    witness.write_text(f"witness vectorsum {len(rows)}\n{body}end\n")
    result = cmd_verify("witness", [str(rm_file), str(witness)])
    assert result.exit_code == 2
    assert "error = ParseError" in result.report
    assert message in result.report


@pytest.mark.parametrize(
    "target, files",
    [("graph", []), ("witness", ["planted.graph"]), ("proof", ["planted.graph"])],
)
def test_verify_bad_arguments(target, files):
    result = cmd_verify(target, [resource(f) for f in files])
    assert result.exit_code == 2
    assert "error = PreconditionError" in result.report


def test_oracle_sat():
    result = cmd_oracle("sat", resource("two_clause.cnf"))
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["satisfiable"] == "true"
    assert values["assignment"] == "0,1,0"

    result = cmd_oracle("sat", resource("contradiction.cnf"))
    assert report_as_dict(result.report)["satisfiable"] == "false"


def test_oracle_sat_budget():
    result = cmd_oracle("sat", resource("two_clause.cnf"), PipelineConfig(budget_enum=4))
    assert result.exit_code == 3


def test_oracle_vectorsum(tmp_path, trivial_source):
    vs_file = tmp_path / "trivial.vs"
    vs_file.write_text(format_instance(trivial_source))
    out = str(tmp_path / "trivial.witness")
    result = cmd_oracle("vectorsum", str(vs_file), out_file=out)
    assert result.exit_code == 0
    assert report_as_dict(result.report)["solvable"] == "true"
    assert open(out).read() == "witness vectorsum 1\n1 0\nend\n"


def test_oracle_clique(tmp_path):
    out = str(tmp_path / "planted.witness")
    result = cmd_oracle("clique", resource("planted.graph"), out_file=out)
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["size"] == "4"
    assert values["lower_bound_only"] == "false"
    # the written witness checks out
    assert cmd_verify("witness", [resource("planted.graph"), out]).exit_code == 0


def test_oracle_rmcsp(tmp_path, no_source, unit_mats):
    rm_file = tmp_path / "no.rmcsp"
    rm_file.write_text(format_rmcsp(RmCspInstance(no_source, unit_mats)))
    result = cmd_oracle("clique", str(rm_file))
    assert result.exit_code == 0
    values = report_as_dict(result.report)
    assert values["full_clique"] == "false"
    assert values["layer_groups"] == "25"
    assert values["layer_best"] == "13"


def test_oracle_biclique_and_densest(tmp_path):
    bic = str(tmp_path / "planted.bic")
    cmd_reduce("clique2biclique", resource("planted.graph"), bic)
    result = cmd_oracle("biclique", bic)
    assert result.exit_code == 0
    assert report_as_dict(result.report)["size"] == "4,4"

    result = cmd_oracle("densest", resource("planted.graph"))
    assert result.exit_code == 0
    assert report_as_dict(result.report)["edges"] == "6"


def test_oracle_unknown_problem():
    assert cmd_oracle("coloring", resource("planted.graph")).exit_code == 2


def test_adj_graph():
    values = report_as_dict(cmd_adj(resource("planted.graph"), "0", "2").report)
    assert values["adjacent"] == "true"
    values = report_as_dict(cmd_adj(resource("planted.graph"), "0", "1").report)
    assert values["adjacent"] == "false"
    assert cmd_adj(resource("planted.graph"), "0", "x").exit_code == 2
    assert cmd_adj(resource("planted.graph"), "0", "99").exit_code == 2


def test_adj_rmcsp(tmp_path, trivial_source, unit_mats):
    rm_file = tmp_path / "trivial.rmcsp"
    rm_file.write_text(format_rmcsp(RmCspInstance(trivial_source, unit_mats)))
    result = cmd_adj(str(rm_file), "LD:0,0,1,0#0=0|0|0|0", "LD:0,0,1,0#1=0|0|0|0")
    assert result.exit_code == 0
    assert report_as_dict(result.report)["adjacent"] == "true"


def test_ldt(tmp_path):
    report_file = str(tmp_path / "ldt.report")
    result = cmd_ldt(resource("affine.table"), degree=1, report_file=report_file)
    assert result.exit_code == 0
    values = report_as_dict(open(report_file).read())
    assert values["m"] == "1"
    assert values["ell"] == "2"
    assert values["rejected"] == "0"
    assert values["distance"] == "0"
    assert values["distance_method"] == "exhaustive"
    assert values["soundness_holds"] == "true"


def test_ldt_montecarlo():
    config = PipelineConfig(mode="montecarlo", trials=200, seed=3)
    first = cmd_ldt(resource("affine.table"), config, degree=1)
    assert first.exit_code == 0
    assert report_as_dict(first.report)["rejected"] == "0"
    assert "[formula: 3 / T]" in first.report
    assert cmd_ldt(resource("affine.table"), config, degree=1).report == first.report


def test_output_directories_are_created(tmp_path):
    out = tmp_path / "runs" / "one" / "two_clause.vs"
    result = cmd_reduce("sat2vs", resource("two_clause.cnf"), str(out), PipelineConfig(k=2))
    assert result.exit_code == 0
    assert out.read_text() == result.output
