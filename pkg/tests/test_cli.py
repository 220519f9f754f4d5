from __future__ import annotations

import json
import subprocess
import sys

import pytest

from deformcat.cli import RunConfig, explain, main, render, run
from deformcat.suites import TASKS


def _json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


def test_trivial_group_all_suites_pass(capsys):
    code, rep = _json(capsys, ["--groups", "C1", "--tasks", "all"])
    assert code == 0 and rep["ok"]
    assert [t["task"] for t in rep["tasks"]] == list(TASKS)
    assert rep["schema_version"] == 1


def test_ssc_generic_C2(capsys):
    code, rep = _json(capsys, ["--groups", "C2", "--ell", "generic", "--tasks", "ssc"])
    assert code == 0
    assert rep["tasks"][0]["result"]["verdict"] == "certified-semisimple"


def test_ssc_at_lambda_one_reports_radical_witness(capsys):
    code, rep = _json(capsys, ["--groups", "C2", "--ell", "assign:2=1", "--tasks", "ssc"])
    res = rep["tasks"][0]["result"]
    assert code == 0
    assert res["verdict"] == "certified-not-semisimple"
    assert res["r_witnesses"][0]["in_radical"]
    assert len(res["witnesses"]) == 3


def test_reports_are_byte_identical():
    cfg = RunConfig(groups=["C2", "C3"], tasks=["bases", "gamma", "ssc"], seed=5, max_pairs=50)
    assert render(run(cfg), "json") == render(run(cfg), "json")


def test_text_format(capsys):
    assert main(["--groups", "C2", "--tasks", "dims", "trivial", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert "PASS dims" in out and "certificate: True" in out


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["--groups", "C2", "--tasks", "dims", "--output", str(out)]) == 0
    assert json.loads(out.read_text())["ok"]


def test_errors(capsys):
    assert main(["--groups", "C128", "--tasks", "dims"]) == 2
    assert main(["--groups", "C6", "--ell", "assign:2=1", "--tasks", "dims"]) == 2
    assert main(["--groups", "Z7"]) == 2
    with pytest.raises(SystemExit):
        main(["--groups", "C2", "--tasks", "bogus"])
    capsys.readouterr()


def test_explain(capsys):
    assert "T_E^L" in explain("ssc")
    assert "nu" in explain("gamma")
    with pytest.raises(KeyError) as e:
        explain("bogus")
    assert "dims" in str(e.value)
    assert main(["explain", "bogus"]) == 2
    capsys.readouterr()


def test_help_states_order_based_dihedral_naming():
    out = subprocess.run([sys.executable, "-m", "deformcat", "--help"], capture_output=True, text=True).stdout
    assert "ORDER" in out and "D8" in out


def test_failed_suite_gives_nonzero_exit(monkeypatch, capsys):
    from deformcat import suites

    monkeypatch.setitem(suites.TASKS, "dims", suites.TaskInfo("dims", lambda alg, **kw: {"ok": False}, ""))
    assert main(["--groups", "C2", "--tasks", "dims"]) == 1
    capsys.readouterr()


def test_cache_dir(tmp_path, capsys):
    assert main(["--groups", "C2", "--tasks", "dims", "--cache-dir", str(tmp_path)]) == 0
    assert list(tmp_path.glob("lattice-*.json"))
    capsys.readouterr()


@pytest.mark.parametrize("groups,ell", [(["C2", "C3"], "generic"), (["S3"], "generic"), (["C2xC2"], "power:1"), (["C4"], "assign:2=1")])
def test_all_suites_pass_on_corpus(groups, ell):
    rep = run(RunConfig(groups=groups, ell=ell, tasks=["all"]))
    assert rep["ok"], [t for t in rep["tasks"] if not t["ok"]]
