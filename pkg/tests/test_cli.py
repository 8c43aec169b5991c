from __future__ import annotations

import json
import subprocess
import sys

import pytest

from nearbrace.cli import main


def run(argv, stdin: str = "", capsys=None, monkeypatch=None):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin="": run(argv, stdin, capsys, monkeypatch)


def test_pipeline(cli):
    code, out, _ = cli(["brace", "trivial", "--group", "cyclic:4", "--kappa", "2"])
    assert code == 0
    code, out, _ = cli(["solve", "build", "--z1", "0", "--z2", "1", "--xi", "3"], out)
    assert code == 0
    code, out, _ = cli(["solve", "analyze"], out)
    rep = json.loads(out)
    assert code == 0 and rep["verdicts"]["braid_ok"] is True
    assert set(rep) == {"command", "inputs", "verdicts", "witnesses", "info", "artifacts"}
    code, out, _ = cli(["pbraid", "check"], out)
    assert code == 0 and all(json.loads(out)["verdicts"].values())


def test_mutated_solution_exit_1(cli, tmp_path):
    _, out, _ = cli(["brace", "trivial", "--group", "cyclic:4", "--kappa", "2"])
    _, out, _ = cli(["solve", "build", "--z1", "0", "--z2", "1", "--xi", "3"], out)
    doc = json.loads(out)["artifacts"][0]
    doc["sigma"][1][2] = (doc["sigma"][1][2] + 1) % 4
    path = tmp_path / "broken_solution.doc"
    path.write_text(json.dumps(doc))
    code, out, _ = cli(["solve", "analyze", "--input", str(path)])
    rep = json.loads(out)
    assert code == 1 and rep["verdicts"]["braid_ok"] is False
    assert any(w["check"] == "C1" for w in rep["witnesses"])


def test_qoi_check(cli):
    code, out, _ = cli(["qoi", "check", "--z1", "i", "--z2", "i", "--xi", "-1", "--samples", "200", "--seed", "42"])
    rep = json.loads(out)
    assert code == 0 and rep["info"]["c1"] == "i" and rep["info"]["c2"] == "i"


def test_qoi_check_broken_constants(cli):
    code, out, _ = cli(["qoi", "check", "--z1", "1", "--z2", "1", "--xi", "i"])
    assert code == 1 and json.loads(out)["verdicts"]["constants"] is False


def test_qoi_bad_literal(cli):
    code, _, err = cli(["qoi", "check", "--z1", "1/2", "--z2", "1", "--xi", "i"])
    assert code == 2 and "odd" in err


def test_qoi_sample(cli):
    code, out, _ = cli(["qoi", "sample", "--samples", "5", "--seed", "3"])
    assert code == 0 and len(json.loads(out)["info"]["samples"]) == 5


def test_byte_identical_reports(cli):
    argv = ["brace", "enumerate", "--group", "symmetric:3"]
    _, a, _ = cli(argv)
    _, b, _ = cli(argv)
    assert a == b and json.loads(a)["info"]["count"] == 30


def test_unknown_subcommand(cli):
    code, _, _ = cli(["bogus"])
    assert code == 2
    code, _, _ = cli(["solve", "nothing"])
    assert code == 2


def test_invalid_input_exit_2(cli):
    bad = json.dumps({"kind": "solution", "order": 2, "sigma": [[0, 1], [0, 1]], "tau": [[0, 1], [0, 1]],
                      "brace": {"kind": "nearbrace", "order": 2, "add": [[0, 1], [1, 1]], "mul": [[0, 1], [1, 0]]}})
    code, _, err = cli(["solve", "analyze"], bad)
    assert code == 2
    msg = json.loads(err)
    assert "row 1" in msg["error"] and msg["diagnostics"]["ok"] is False
    code, _, _ = cli(["solve", "analyze"], "not json")
    assert code == 2
    code, _, _ = cli(["solve", "analyze"], json.dumps({"kind": "group", "order": 1, "table": [[0]]}))
    assert code == 2


def test_group_commands(cli):
    code, out, _ = cli(["group", "build", "--group", "symmetric:3", "--print-labels"])
    rep = json.loads(out)
    assert code == 0 and rep["info"]["labels"]["0"] == "123"
    code, out, _ = cli(["group", "validate"], json.dumps({"kind": "group", "order": 2, "table": [[0, 1], [1, 1]]}))
    assert code == 1
    code, out, _ = cli(["group", "validate"], json.dumps(rep))
    assert code == 0
    code, _, _ = cli(["group", "build", "--group", "cyclic:99"])
    assert code == 2


def test_brace_commands(cli):
    code, out, _ = cli(["brace", "trivial", "--group", "symmetric:3", "--kappa", "1"])
    assert code == 1
    _, nb, _ = cli(["brace", "trivial", "--group", "cyclic:4", "--kappa", "2"])
    assert cli(["brace", "validate"], nb)[0] == 0
    code, out, _ = cli(["brace", "report"], nb)
    assert code == 0 and json.loads(out)["info"]["is_singular"] is True
    code, out, _ = cli(["brace", "shift"], nb)
    sk = json.loads(out)["artifacts"][0]
    assert code == 0 and sk["add"] == sk["mul"]
    code, out, _ = cli(["brace", "shift", "--by", "2"], out)
    assert code == 0 and json.loads(out)["artifacts"][0] == json.loads(nb)["artifacts"][0]
    assert cli(["brace", "shift", "--by", "1"], nb)[0] == 2
    bad = {"kind": "nearbrace", "order": 6, "add": [list(range(6))] * 1, "mul": []}
    assert cli(["brace", "validate"], json.dumps(bad))[0] == 2


def test_brace_from_sigma(cli):
    ok = {"kind": "sigma", "order": 4, "z": 0, "sigma": [[(y + 2) % 4 for y in range(4)]] * 4}
    code, out, _ = cli(["brace", "from-sigma", "--group", "cyclic:4"], json.dumps(ok))
    assert code == 0 and json.loads(out)["artifacts"][0]["add"][0] == [2, 3, 0, 1]
    bad = {"kind": "sigma", "order": 3, "z": 0, "sigma": [[0, 1, 2], [1, 0, 2], [0, 1, 2]]}
    code, out, _ = cli(["brace", "from-sigma", "--group", "cyclic:3"], json.dumps(bad))
    assert code == 1 and json.loads(out)["witnesses"]


def test_params_and_solve_commands(cli):
    _, s3, _ = cli(["brace", "trivial", "--group", "symmetric:3", "--kappa", "0"])
    code, out, _ = cli(["params", "list"], s3)
    assert code == 0 and {"z1": 0, "z2": 0, "xi": 0, "c1": 0, "c2": 0} in json.loads(out)["info"]["triples"]
    assert cli(["params", "check", "--z1", "0", "--z2", "0", "--xi", "0"], s3)[0] == 0
    code, out, _ = cli(["params", "check", "--z1", "0", "--z2", "0", "--xi", "1"], s3)
    assert code == 1 and json.loads(out)["witnesses"][0]["check"] == "c1"
    assert cli(["solve", "build", "--z1", "0", "--z2", "0", "--xi", "1"], s3)[0] == 1
    assert cli(["solve", "build", "--z1", "0", "--z2", "0"], s3)[0] == 2
    assert cli(["solve", "invert", "--z1", "0", "--z2", "0", "--xi", "0"], s3)[0] == 0
    code, out, _ = cli(["solve", "gv"], s3)
    assert code == 0 and json.loads(out)["info"]["involutive"] is False
    assert cli(["solve", "rump"], s3)[0] == 2
    _, c4, _ = cli(["brace", "trivial", "--group", "cyclic:4", "--kappa", "0"])
    assert cli(["solve", "rump"], c4)[0] == 0
    code, out, _ = cli(["solve", "twist", "--z", "0"], c4)
    assert code == 0 and json.loads(out)["info"]["identity_found"] is True
    _, c3, _ = cli(["brace", "trivial", "--group", "cyclic:3", "--kappa", "1"])
    code, out, _ = cli(["solve", "twist", "--z", "0"], c3)
    assert code == 0 and json.loads(out)["info"]["count"] == 0


def test_pbraid_needs_group(cli):
    flip = {"kind": "solution", "order": 2, "sigma": [[0, 1], [0, 1]], "tau": [[0, 1], [0, 1]]}
    assert cli(["pbraid", "check"], json.dumps(flip))[0] == 2
    assert cli(["pbraid", "check", "--group", "cyclic:2"], json.dumps(flip))[0] == 0


def test_text_format_and_output_file(cli, tmp_path):
    out_path = tmp_path / "r.txt"
    code, out, _ = cli(["brace", "trivial", "--group", "cyclic:2", "--kappa", "1", "--format", "text",
                        "--output", str(out_path)])
    assert code == 0 and out == ""
    assert "wall time" in out_path.read_text()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "nearbrace", "group", "build", "--group", "cyclic:2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["artifacts"][0]["table"] == [[0, 1], [1, 0]]
