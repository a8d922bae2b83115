import json
import subprocess
import sys

import pytest

from quivergkm.cli import UsageError, dispatch, main, parse_quiver_file
from quivergkm.quiver import jordan_quiver


@pytest.fixture
def qfile(tmp_path):
    def make(text, name="q.json"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return make


@pytest.fixture
def a2(qfile):
    return qfile('{"vertices":["a","b"],"arrows":[["a","b"]]}', "a2.json")


@pytest.fixture
def jordan(qfile):
    return qfile('{"vertices":["v"],"arrows":[["v","v"]]}', "jordan.json")


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr()


def test_parse_quiver_file(jordan, qfile):
    assert parse_quiver_file(jordan) == jordan_quiver()
    bad = qfile('{"vertices": ["a", "b"],\n "arrows": [["a", "c"]]}')
    with pytest.raises(UsageError, match=r":2: .*'c'"):
        parse_quiver_file(bad)
    dup = qfile('{"vertices": ["a",\n"a"]}')
    with pytest.raises(UsageError, match="duplicate vertex 'a'"):
        parse_quiver_file(dup)
    mal = qfile('{"vertices": ["a"]\n "arrows": []}')
    with pytest.raises(UsageError, match=r":2: malformed JSON"):
        parse_quiver_file(mal)


def test_dims_table(a2, capsys):
    code, out = run(["dims", a2, "--max-degree", "4"], capsys)
    assert code == 0
    assert "(2,2): free 6, ideal 3, dim 3" in out.out.splitlines()


def test_ncsf_expand(capsys):
    code, out = run(["ncsf", "expand", "S", "3"], capsys)
    assert code == 0
    assert "3S_3 = Psi_3 + Psi_1 Psi_2 + 1/2 Psi_2 Psi_1 + 1/2 Psi_1^3" in out.out
    _, out = run(["ncsf", "expand", "S", "2"], capsys)
    assert "2S_2 = Psi_2 + Psi_1^2" in out.out


def test_components(jordan, capsys):
    code, out = run(["components", jordan, "--max-d", "4", "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 0
    assert [r["components"] for r in rep["results"][0]["payload"]["rows"]] == [1, 1, 2, 3, 5]


def test_multi_vertex_components_are_info(a2):
    rep, _, _ = dispatch(["components", a2, "--max-d", "3"])
    assert {r["status"] for r in rep["results"]} == {"info"}
    assert rep["exit_status"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "{a2}"],
        ["serre-check", "{a2}", "--bound", "4"],
        ["serre-check", "{a2}", "--bound", "4", "--quantum"],
        ["twist-check", "{a2}", "--bound", "4"],
        ["coproduct-check", "{jordan}", "--bound", "3"],
        ["ncsf", "check", "--max", "6"],
        ["qbinom", "--max-n", "6"],
        ["lattice", "{jordan}", "--form", "tilde", "--max-degree", "3"],
    ],
)
def test_report_schema_and_roundtrip(argv, a2, jordan, capsys):
    argv = [x.format(a2=a2, jordan=jordan) for x in argv]
    code, out = run(argv + ["--json"], capsys)
    rep = json.loads(out.out)
    assert set(rep) == {"command", "input", "results", "exit_status"}
    assert code == rep["exit_status"] == 0
    for r in rep["results"]:
        assert set(r) == {"check", "status", "payload"}
        assert r["status"] in {"ok", "fail", "info"}
    assert json.loads(json.dumps(rep)) == rep
    # deterministic
    _, out2 = run(argv + ["--json"], capsys)
    assert out2.out == out.out


def test_failing_twist_gives_exit_1(a2, qfile, capsys):
    psi = qfile('{"psi": [[0, 0], [0, 0]]}', "psi.json")
    code, out = run(["twist-check", a2, "--bound", "3", "--psi", psi, "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 1 and rep["exit_status"] == 1
    assert rep["results"][0]["status"] == "fail"


def test_qbinom_flags_case_split_rule(capsys):
    code, out = run(["qbinom", "--max-n", "10", "--json"], capsys)
    rep = json.loads(out.out)
    assert code == 0
    assert all(not r["payload"]["case_split_agrees"] for r in rep["results"])


def test_usage_errors(qfile, capsys):
    assert main(["bogus"]) == 2
    assert main(["dims", "/nonexistent/q.json"]) == 2
    assert main(["dims", qfile('{"vertices": ["a"], "arrows": [["a", "z"]]}')]) == 2
    err = capsys.readouterr().err
    assert "'z'" in err


def test_module_entry_point(a2):
    r = subprocess.run([sys.executable, "-m", "quivergkm", "dims", a2, "--max-degree", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and "(1,1): free 2, ideal 0, dim 2" in r.stdout
