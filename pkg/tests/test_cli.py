import json

import pytest

from lagrangia.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from lagrangia.hypergraph import loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def k5(tmp_path, capsys):
    path = tmp_path / "k5.hg"
    assert main(["construct", "complete:3:5", "-o", str(path)]) == EXIT_OK
    capsys.readouterr()
    return path


def test_construct_stdout(capsys):
    code, out, _ = run(capsys, "construct", "matching:3:2")
    assert code == EXIT_OK
    G = loads(out)
    assert G.edges == ((1, 2, 3), (4, 5, 6))


def test_compute(capsys, k5):
    code, out, _ = run(capsys, "compute", str(k5), "--restarts", "5")
    data = json.loads(out)
    assert code == EXIT_OK and abs(data["result"]["value"] - 0.08) < 1e-8
    code, out, _ = run(capsys, "compute", str(k5), "--bound", "1/4")
    assert json.loads(out)["result"]["bounded_by"] == "1/4"


def test_compute_exact_for_2graphs(capsys, tmp_path):
    path = tmp_path / "c.hg"
    path.write_text("2 5\n1 2\n2 3\n3 4\n4 5\n1 5\n")
    code, out, _ = run(capsys, "compute", str(path))
    assert json.loads(out)["exact"] == "1/4"


def test_compress_verbs(capsys, tmp_path):
    path = tmp_path / "s.hg"
    path.write_text("3 4\n2 3 4\n")
    code, out, _ = run(capsys, "compress", str(path), "--weights", "2/5,3/10,1/5,1/10")
    data = json.loads(out)
    assert data["graph"]["edges"] == [[1, 2, 3]] and len(data["trace"]["steps"]) == 1
    code, out, _ = run(capsys, "compress", str(path), "--pair", "1", "4")
    assert json.loads(out)["graph"]["edges"] == [[1, 2, 3]]
    code, _, err = run(capsys, "compress", str(path))
    assert code == EXIT_USAGE and "error" in err


def test_dense_and_symmetrize(capsys, k5):
    code, out, _ = run(capsys, "dense-sub", str(k5), "--restarts", "5")
    assert code == EXIT_OK and len(json.loads(out)["graph"]["edges"]) == 10
    code, out, _ = run(capsys, "symmetrize", str(k5), "--alpha", "1/2", "--forbid", "matching:3:2:6")
    data = json.loads(out)
    assert code == EXIT_OK and data["trace"]["steps"] == [] and data["trace"]["violations"] == []


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--r", "2", "--n", "3", "--pred", "matching-free:2")
    data = json.loads(out)
    assert code == EXIT_OK and data["count"] == 4 and len(data["graphs"]) == 4
    code, out, _ = run(capsys, "enumerate", "--r", "3", "--n", "9", "--count")
    assert code == EXIT_USAGE


def test_enumerate_env_override(capsys, monkeypatch):
    monkeypatch.setenv("LAGRANGIA_MAX_CELLS", "5")
    code, _, err = run(capsys, "enumerate", "--r", "2", "--n", "4", "--count")
    assert code == EXIT_USAGE and "LAGRANGIA_MAX_CELLS" in err


def test_turan(capsys):
    code, out, _ = run(capsys, "turan", "--brute", "--r", "2", "--n", "5", "--forbid", "complete:2:3")
    assert json.loads(out)["ex"] == 6
    code, out, _ = run(capsys, "turan", "--r", "3", "--m", "5", "--n", "12")
    assert json.loads(out)["edges"] == 134
    code, _, _ = run(capsys, "turan", "--brute", "--r", "3", "--n", "5", "--forbid", "complete:2:3")
    assert code == EXIT_USAGE


def test_closed_form(capsys):
    code, out, _ = run(capsys, "closed-form", "matching-free-bounded", "t=3", "b=1/8")
    assert json.loads(out)["value"] == "23/256"
    code, _, err = run(capsys, "closed-form", "star-bounded", "b=1/2")
    assert code == EXIT_USAGE


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "blowup", "--param", "graphs=5")
    assert code == EXIT_OK and json.loads(out)["status"] == "pass"
    report = tmp_path / "frankl.json"
    code, out, _ = run(capsys, "verify", "frankl", "--param", "graphs=40", "-o", str(report))
    assert code == EXIT_FAIL and json.loads(report.read_text())["status"] == "fail"
    code, _, _ = run(capsys, "verify", "nope")
    assert code == EXIT_USAGE


def test_verify_pretty(capsys):
    code, out, _ = run(capsys, "verify", "kkt", "--param", "graphs=3", "--pretty")
    assert code == EXIT_OK and "kkt/residual" in out


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE
    code, _, _ = run(capsys, "compute", "/no/such/file.hg")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "construct", "hexagon:3")
    assert code == EXIT_USAGE
