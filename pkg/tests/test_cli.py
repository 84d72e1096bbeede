import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from apexis import cli
from apexis.graph import complete
from apexis.graph6 import decode, encode
from apexis.parallel import Runner, default_jobs

DATA = Path(__file__).parent / "data"
SCHEMA = json.loads(resources.files("apexis").joinpath("data/report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    rep = json.loads(out)
    jsonschema.validate(rep, SCHEMA)
    return code, rep


def test_planar_exit_codes(capsys):
    code, rep = report(capsys, "planar", "C~")
    assert code == 0 and rep["planar"] and rep["certificate"]["type"] == "embedding"
    code, rep = report(capsys, "planar", encode(complete(5)))
    assert code == 1 and rep["certificate"]["pattern"] == "K5"


def test_malformed_input_exits_2(capsys):
    code, _, err = run(capsys, "planar", "x")
    assert code == 2 and "malformed" in err
    assert run(capsys, "apex", "-l", "7", "C~")[0] == 2
    assert run(capsys, "unknot-check", str(DATA / "missing.txt"))[0] == 2


def test_apex(capsys):
    code, rep = report(capsys, "apex", "-l", "2", encode(complete(7)))
    assert code == 1 and rep["result"]["apex"] is False
    code, rep = report(capsys, "apex", "-l", "1", encode(complete(5)))
    assert code == 0 and len(rep["result"]["apex_set"]) == 1


def test_timing_is_optional(capsys):
    _, rep = report(capsys, "planar", "C~")
    assert rep["run"]["jobs"] >= 1
    _, rep = report(capsys, "planar", "C~", "--no-timing")
    assert "run" not in rep


def test_enumerate_stdout_and_file(capsys, tmp_path):
    code, out, err = run(capsys, "enumerate", "-n", "6", "-e", "9", "--filter", "nonplanar")
    assert code == 0 and len(out.split()) == 1
    assert decode(out.split()[0]).size == 9 and "count 1" in err
    dest = tmp_path / "g.g6"
    code, rep = report(capsys, "enumerate", "-n", "5", "-e", "0", "--e-max", "10", "-o", str(dest))
    assert code == 0 and rep["count"] == 34 and len(dest.read_text().split()) == 34


def test_family_writes_outputs(capsys, tmp_path):
    code, rep = report(capsys, "family", "--no-timing", "-o", str(tmp_path))
    assert code == 0 and rep["count"] == 14
    assert len((tmp_path / "family.g6").read_text().split()) == 14
    assert json.loads((tmp_path / "manifest.json").read_text())["count"] == 14


def test_unknot_check(capsys):
    code, rep = report(capsys, "unknot-check", str(DATA / "unknotted_k4.txt"))
    assert code == 0 and rep["summary"]["Unknot"] == 7
    assert rep["maximal_crossing_sets"] == ["1"]
    code, rep = report(capsys, "unknot-check", str(DATA / "trefoil_theta.txt"))
    assert code == 1 and rep["summary"]["Knotted"] == 1


def test_bad_diagram_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("vertex a\nedge e a b\n")
    code, _, err = run(capsys, "unknot-check", str(bad))
    assert code == 2 and "line 2" in err


def test_jobs_env(monkeypatch):
    monkeypatch.setenv("APEXIS_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("APEXIS_JOBS", "lots")
    assert default_jobs() == 1


def test_jobs_do_not_change_output(capsys):
    outs = []
    for jobs in ("1", "3"):
        code, out, _ = run(capsys, "edge-bound", "--max-n", "8", "--max-e", "11", "--no-timing",
                           "--jobs", jobs)
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_checkpoint_resume(capsys, tmp_path):
    ck = tmp_path / "ck"
    argv = ["verify-main", "--max-n", "7", "--no-timing", "--checkpoint", str(ck)]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    shards = sorted(ck.rglob("*.json"))
    assert shards
    # a resumed run reads the shards instead of recomputing them
    victim = shards[0]
    cached = json.loads(victim.read_text())
    cached["result"]["99"] = {"count": 1, "digest": 0, "hits": []}
    victim.write_text(json.dumps(cached))
    assert json.loads(run(capsys, *argv)[1])["total"] == json.loads(first)["total"] + 1
    # shards whose arguments changed are recomputed
    cached["args"] = "stale"
    victim.write_text(json.dumps(cached))
    assert run(capsys, *argv)[1] == first


def test_runner_merges_in_order(tmp_path):
    r = Runner(2, tmp_path)
    assert r.map("sq", abs, [-3, 2, -1]) == [3, 2, 1]
    assert Runner(1, tmp_path).map("sq", abs, [-3, 2, -1]) == [3, 2, 1]


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "--help")[0] == 0
