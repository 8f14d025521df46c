#!/usr/bin/env python
from os.path import dirname, join

import pytest

from gapchain.cli_tools import (
    gapchain_adj,
    gapchain_ldt,
    gapchain_oracle,
    gapchain_reduce,
    gapchain_verify,
)
from gapchain.cli_tools.cli_options import config_from_args
from gapchain.rmcsp import format_rmcsp
from gapchain.rmcsp.instance import RmCspInstance
from gapchain.utilities import report_as_dict

RESOURCE_FOLDER = join(dirname(dirname(__file__)), "etc")


def resource(name):
    return join(RESOURCE_FOLDER, name)


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.delenv("GAPCHAIN_CFG", raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_reduce(capsys, isolated):
    out = str(isolated / "two_clause.vs")
    assert gapchain_reduce.main(["sat2vs", resource("two_clause.cnf"), out, "--k", "2"]) == 0
    values = report_as_dict(capsys.readouterr().out)
    assert values["n"] == "14"
    assert values["exit"] == "0"
    assert open(out).read().startswith("vectorsum")


def test_reduce_is_deterministic(capsys, isolated):
    """Two runs with the same seed print the same report and write the same artifact."""
    outputs = []
    for name in ("a", "b"):
        out = str(isolated / f"{name}.graph")
        args = ["amplify", resource("planted.graph"), out, "--t", "2", "--seed", "17"]
        assert gapchain_reduce.main(args) == 0
        outputs.append((capsys.readouterr().out, open(out).read()))
    assert outputs[0] == outputs[1]


def test_report_file(capsys, isolated):
    report = str(isolated / "run.report")
    args = ["clique2biclique", resource("planted.graph"), str(isolated / "b"), "--report", report]
    assert gapchain_reduce.main(args) == 0
    assert open(report).read() == capsys.readouterr().out


def test_cfg_file(capsys, isolated):
    cfg = isolated / "run.yml"
    cfg.write_text("k: 2\nseed: 4\n")
    out = str(isolated / "two_clause.vs")
    args = ["sat2vs", resource("two_clause.cnf"), out, "--cfg", str(cfg)]
    assert gapchain_reduce.main(args) == 0
    assert report_as_dict(capsys.readouterr().out)["seed"] == "4"


@pytest.mark.parametrize(
    "args",
    [
        ["--field", "4"],
        ["--eps", "2"],
        ["--eps", "half"],
        ["--cfg", "missing.yml"],
    ],
)
def test_config_errors(capsys, isolated, args):
    out = str(isolated / "x")
    assert gapchain_reduce.main(["sat2vs", resource("two_clause.cnf"), out] + args) == 2
    assert "error = ConfigInvalidException" in capsys.readouterr().err


def test_missing_input(capsys, isolated):
    assert gapchain_reduce.main(["sat2vs", str(isolated / "none.cnf"), "out"]) == 2
    assert "error = FileNotFoundError" in capsys.readouterr().err


def test_budget_exit_code(capsys):
    args = ["sat", resource("two_clause.cnf"), "--budget-enum", "4"]
    assert gapchain_oracle.main(args) == 3
    assert "error = BudgetExceeded" in capsys.readouterr().out


def test_verify_exit_codes(capsys):
    assert gapchain_verify.main(["graph", resource("planted.graph")]) == 0
    assert gapchain_verify.main(["disperser", resource("thin.disperser")]) == 4
    files = [resource("planted.graph"), resource("planted.witness")]
    assert gapchain_verify.main(["witness"] + files) == 0


def test_verify_bad_witness_label(capsys, isolated, trivial_source, unit_mats):
    rm_file = isolated / "trivial.rmcsp"
    rm_file.write_text(format_rmcsp(RmCspInstance(trivial_source, unit_mats)))
    witness = isolated / "trivial.witness"
    witness.write_text("witness vectorsum 1\n1 abc\nend\n")
    assert gapchain_verify.main(["witness", str(rm_file), str(witness)]) == 2
    assert "error = ParseError" in capsys.readouterr().out


def test_oracle_writes_witness(capsys, isolated):
    out = str(isolated / "w.txt")
    assert gapchain_oracle.main(["clique", resource("planted.graph"), "--out", out]) == 0
    assert open(out).read().startswith("witness clique 4\n")


def test_adj(capsys):
    assert gapchain_adj.main([resource("planted.graph"), "2", "4"]) == 0
    assert report_as_dict(capsys.readouterr().out)["adjacent"] == "true"


def test_ldt(capsys):
    assert gapchain_ldt.main([resource("affine.table"), "--test-degree", "1"]) == 0
    values = report_as_dict(capsys.readouterr().out)
    assert values["degree"] == "1"
    assert values["reject_rate"] == "0"


def test_ldt_montecarlo(capsys):
    args = [resource("affine.table"), "--montecarlo", "--trials", "100", "--seed", "1"]
    assert gapchain_ldt.main(args) == 0
    assert report_as_dict(capsys.readouterr().out)["distance_method"] == "self-correction"


def test_main_ep_exits():
    with pytest.raises(SystemExit) as e:
        gapchain_verify.main_ep(["graph", resource("planted.graph")])
    assert e.value.code == 0


def test_argparse_rejects_unknown_target(capsys):
    with pytest.raises(SystemExit) as e:
        gapchain_verify.main(["proof", resource("planted.graph")])
    assert e.value.code == 2


def test_config_from_args():
    cli_args = gapchain_reduce.parse_arguments(
        ["amplify", "in", "out", "--t", "3", "--eps", "1/4", "--exact", "--budget-oracle", "9"]
    )
    config = config_from_args(cli_args)
    assert config.t == 3
    assert str(config.eps) == "1/4"
    assert config.mode == "exact"
    assert config.budget_oracle == 9
    assert config.disperser_cap is False
    cli_args = gapchain_reduce.parse_arguments(["compress", "in", "out", "--disperser-cap"])
    assert config_from_args(cli_args).disperser_cap is True
