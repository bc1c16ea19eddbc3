import json
import subprocess
import sys

import pytest

from eghforge.cli import main, parse_request
from eghforge.egh import Trust

OCTAHEDRON = {
    "vertices": ["1", "2", "3", "4", "5", "6"],
    "facets": [[a, b, c] for a in "12" for b in "34" for c in "56"],
}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return write


def run(argv, capsys):
    status = main(argv)
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return status, report, out.err


def test_parse_request():
    req = parse_request(["egh", "ideal.json", "--caps", "2,2"])
    assert req.command == "egh" and req.caps == (2, 2) and req.trust is Trust.LINEAR


def test_usage_errors(capsys):
    assert main(["egh", "ideal.json", "--caps", "3,2"]) == 2
    assert "caps must be non-decreasing" in capsys.readouterr().err
    assert main(["cm-check", "cx.json", "--char", "4"]) == 2
    assert "4 not prime" in capsys.readouterr().err
    assert main(["hilbert", "i.json", "--char", "2"]) == 2
    assert main(["nonsense"]) == 2


def test_env_default_max_degree(monkeypatch):
    monkeypatch.setenv("EGHFORGE_MAX_DEGREE", "4")
    assert parse_request(["hilbert", "i.json"]).max_degree == 4
    assert parse_request(["hilbert", "i.json", "--max-degree", "2"]).max_degree == 2


def test_egh_triangle(files, capsys):
    path = files("tri.json", {"vars": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]})
    status, rep, err = run(["egh", path, "--caps", "2,2"], capsys)
    assert status == 0
    assert rep["result"]["witness"] == {"vars": 3, "gens": ["x1^2", "x1*x2", "x2^2"]}
    assert rep["result"]["certified"] is True
    assert set(rep["assertions"].values()) == {"pass"}
    assert "pass" in err


def test_egh_report_reverifies(files, capsys, tmp_path):
    path = files("tri.json", "vars: 3\nx1*x2\nx1*x3\nx2*x3\n")
    out = tmp_path / "rep.json"
    assert main(["egh", path, "--out", str(out)]) == 0
    capsys.readouterr()
    status, rep, _ = run(["egh-verify", path, str(out)], capsys)
    assert status == 0 and rep["result"]["certified"] is True


def test_egh_monomial_trust_without_certificate(files, capsys):
    path = files("tri.json", {"vars": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]})
    status, rep, _ = run(["egh", path, "--caps", "2,2", "--trust", "monomial"], capsys)
    assert status == 1 and rep["result"]["kind"] == "certificate-not-found"


def test_egh_rejects_out_of_range_caps(files, capsys):
    path = files("tri.json", {"vars": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]})
    status, rep, _ = run(["egh", path, "--caps", "2,3"], capsys)
    assert status == 2 and rep["result"]["kind"] == "DegreeSequenceRejected"


def test_regseq_verify(files, capsys):
    status, rep, _ = run(["regseq-verify", files("p.json", ["x1;x2", "x1;x3"])], capsys)
    assert status == 1
    cert = rep["result"]["certificate"]
    assert cert["regular"] is False and cert["witness_forms"] == ["x1", "x1"]
    status, rep, _ = run(["regseq-verify", files("q.json", ["x1;x2", "x3;x1+x2"])], capsys)
    assert status == 0 and rep["result"]["certificate"]["selections_checked"] == "4"


def test_regseq_verify_with_ideal(files, capsys):
    p = files("p.json", {"vars": 3, "products": ["x1;x2", "x3;x1+x2"]})
    i = files("i.json", {"vars": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]})
    status, rep, _ = run(["regseq-verify", p, i], capsys)
    assert status == 0 and rep["assertions"]["contained_in_ideal"] == "pass"


def test_regseq_search(files, capsys):
    i = files("i.json", {"vars": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]})
    status, rep, _ = run(["regseq-search", i, "--caps", "2,2", "--seed", "3"], capsys)
    assert status == 0 and rep["seed"] == 3 and len(rep["result"]["products"]) == 2


def test_transfer_octahedron(files, capsys, tmp_path):
    cx = files("oct.json", OCTAHEDRON)
    out = tmp_path / "t.json"
    assert main(["transfer", cx, "--caps", "2,2,2", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["result"]["partition"]["bounds"] == [1, 1, 1]
    assert rep["result"]["h_output"][:4] == ["1", "3", "3", "1"]
    capsys.readouterr()
    status, rep, _ = run(["balanced-check", str(out), str(out)], capsys)
    assert status == 0 and rep["result"]["balanced"] is True


def test_complex_commands(files, capsys):
    cx = files("oct.json", OCTAHEDRON)
    assert run(["fvec", cx], capsys)[1]["result"]["f_vector"] == ["1", "6", "12", "8"]
    assert run(["hvec", cx], capsys)[1]["result"]["h_vector"] == ["1", "3", "3", "1"]
    sr = run(["sr", cx], capsys)[1]["result"]["ideal"]
    assert sr == {"vars": 6, "gens": ["x1*x2", "x3*x4", "x5*x6"]}
    status, rep, _ = run(["cm-check", cx, "--char", "3"], capsys)
    assert status == 0 and rep["result"]["reduced_homology"] == ["0", "0", "0", "1"]
    i = files("sr.json", sr)
    status, rep, _ = run(["complex", i], capsys)
    assert len(rep["result"]["complex"]["facets"]) == 8


def test_ideal_commands(files, capsys):
    i = files("i.json", {"vars": 3, "gens": ["x1*x2", "x1*x3", "x2*x3"]})
    rep = run(["hilbert", i, "--max-degree", "3"], capsys)[1]
    assert rep["result"]["values"] == ["1", "3", "3", "3"]
    rep = run(["series", i], capsys)[1]
    assert rep["result"]["series"]["numerator"] == ["1", "0", "-3", "2"]
    assert rep["result"]["reduced"] == {"numerator": ["1", "2"], "denom_power": 1}
    assert run(["height", i], capsys)[1]["result"]["height"] == 2
    rep = run(["polarize", files("p.json", {"vars": 1, "gens": ["x1^2"]})], capsys)[1]
    assert rep["result"]["names"] == ["x1", "y1_1"]


def test_bad_inputs(files, capsys):
    status, rep, _ = run(["hilbert", files("bad.json", "{not json")], capsys)
    assert status == 2 and "bad.json:1:2" in rep["result"]["error"]
    status, rep, _ = run(["hilbert", "/nonexistent/i.json"], capsys)
    assert status == 2
    status, rep, _ = run(["hilbert", files("b.json", {"vars": 2, "gens": ["x3"]})], capsys)
    assert status == 2


def test_module_entry_point(files):
    i = files("i.json", {"vars": 2, "gens": ["x1*x2"]})
    proc = subprocess.run([sys.executable, "-m", "eghforge", "height", i], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["height"] == 1
