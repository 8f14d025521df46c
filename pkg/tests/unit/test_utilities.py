#!/usr/bin/env python

import io
import logging
import os
from os.path import dirname, join

import pytest

from gapchain import utilities
from gapchain.exceptions import BudgetExceeded

RESOURCE_FOLDER = join(dirname(dirname(__file__)), "etc")
CONFIG_FILENAME = join(RESOURCE_FOLDER, ".gapchain.yml")


@pytest.fixture
def isolated(tmp_path, monkeypatch):
    """No configuration file reachable through the environment, cwd or home."""
    monkeypatch.delenv("GAPCHAIN_CFG", raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_load_yaml_file():
    """Read a YAML file successfully"""
    filename = join(RESOURCE_FOLDER, "yaml_test.yml")
    expected = {
        "answer": 42,
        "hello": "world",
        "complex": {"truth": False, "key": "value"},
    }
    assert utilities.load_yaml_file(filename) == expected


def test_invalid_yaml_file():
    """Try to read an invalid YAML file"""
    filename = join(RESOURCE_FOLDER, "this_should_not_exist.yml")
    with pytest.raises(SystemExit) as e:
        utilities.load_yaml_file(filename)
    assert "Unable to open YAML file" in str(e.value)


def test_find_cfg_file_explicit_path(isolated):
    assert utilities.find_cfg_file(CONFIG_FILENAME) == CONFIG_FILENAME


def test_find_cfg_file_env_var_file(isolated, monkeypatch):
    monkeypatch.setenv("GAPCHAIN_CFG", CONFIG_FILENAME)
    assert utilities.find_cfg_file() == CONFIG_FILENAME


def test_find_cfg_file_env_var_dir(isolated, monkeypatch):
    monkeypatch.setenv("GAPCHAIN_CFG", RESOURCE_FOLDER)
    assert utilities.find_cfg_file() == f"{RESOURCE_FOLDER}/.gapchain.yml"


def test_find_cfg_file_cwd(isolated):
    (isolated / "gapchain.yml").write_text("seed: 1\n")
    assert utilities.find_cfg_file() == "./gapchain.yml"


def test_find_cfg_file_missing(isolated):
    with pytest.raises(IOError):
        utilities.find_cfg_file()


def test_ensure_dir_exists(tmp_path):
    target = str(tmp_path / "reports")
    utilities.ensure_dir_exists(target)
    assert os.path.isdir(target)
    # second call is a no-op
    utilities.ensure_dir_exists(target)
    a_file = tmp_path / "file.txt"
    a_file.write_text("x")
    with pytest.raises(ValueError):
        utilities.ensure_dir_exists(str(a_file))


def test_write_bytes():
    assert utilities.write_bytes("k = 2\n") == b"k = 2\n"
    assert utilities.write_bytes("λ = 1/3", encoding="utf-8") == "λ = 1/3".encode("utf-8")
    assert utilities.write_bytes("λ = 1/3") == b" = 1/3"
    assert utilities.write_bytes(b"raw") == b"raw"
    with pytest.raises(ValueError):
        utilities.write_bytes(42)


def test_derive_seed():
    """Stage streams are reproducible, distinct per label and 64 bits wide."""
    assert utilities.derive_seed(0, "vs2clique") == utilities.derive_seed(0, "vs2clique")
    assert utilities.derive_seed(0, "vs2clique") != utilities.derive_seed(0, "compress")
    assert utilities.derive_seed(0, "ldt") != utilities.derive_seed(1, "ldt")
    assert 0 <= utilities.derive_seed(2**64 - 1, "ldt") < 2**64


def test_check_budget():
    utilities.check_budget("assignments", 8, 8)
    with pytest.raises(BudgetExceeded) as e:
        utilities.check_budget("assignments", 9, 8)
    assert (e.value.what, e.value.needed, e.value.budget) == ("assignments", 9, 8)
    assert str(e.value) == "assignments: needs 9, budget is 8"


def test_fsm_to_dict():
    header = ["Key", "Val"]
    rows = [["k", "2"], ["d", "3"]]
    assert utilities.fsm_to_dict(header, rows) == [
        {"key": "k", "val": "2"},
        {"key": "d", "val": "3"},
    ]


def test_parse_report():
    """Report lines parse into key, value and formula; summary lines are skipped"""
    with io.open(join(RESOURCE_FOLDER, "report.txt"), encoding="utf-8") as f:
        raw = f.read()
    rows = utilities.parse_report(raw)
    assert [row["key"] for row in rows] == ["chain", "k", "d", "exit"]
    assert rows[2] == {"key": "d", "val": "3", "formula": "d = |X| + 2|Y|"}
    assert rows[1]["formula"] == ""


def test_report_as_dict():
    raw = "n = 14 [formula: n = sum_i |V_i|]\nsatisfiable = true\n# done\n"
    assert utilities.report_as_dict(raw) == {"n": "14", "satisfiable": "true"}


def test_log_call(caplog):
    @utilities.log_call
    def double(x):
        return 2 * x

    with caplog.at_level(logging.DEBUG, logger="gapchain"):
        assert double(21) == 42
    assert "calling test_log_call.<locals>.double" in caplog.text
    assert double.__name__ == "double"
