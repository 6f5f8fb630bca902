import json

import pytest

from qsuper.cli import main
from qsuper.suite import validate_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_timing(doc):
    for row in doc["rows"]:
        row.pop("seconds", None)
    doc.get("summary", {}).pop("seconds", None)
    return doc


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "x[2,2]*x[1,1]")
    assert code == 0
    assert "xi[1,2]*xi[2,1]" in out


def test_nf_json(capsys):
    code, out, _ = run(capsys, "--json", "-", "nf", "xi[1,2]*x[1,1]")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == [1, 1] and doc["input"] == "xi[1,2]*x[1,1]"


def test_delta_and_antipode(capsys):
    assert run(capsys, "delta", "x[1,1]")[0] == 0
    code, out, _ = run(capsys, "antipode", "Dm^-1")
    assert code == 0 and out.strip()


def test_qdet(capsys):
    code, out, _ = run(capsys, "--m", "2", "qdet", "--block", "11")
    assert code == 0 and "x[1,1]*x[2,2]" in out


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "nf", "x[1,1] +")
    assert code == 2 and "position" in err
    assert run(capsys, "nf", "x[9,9]")[0] == 2


def test_bad_config_exit_code(capsys):
    assert run(capsys, "--q", "0", "nf", "x[1,1]")[0] == 2
    assert run(capsys, "--m", "0", "--n", "0", "nf", "1")[0] == 2


def test_large_symbolic_guard(capsys):
    code, _, err = run(capsys, "--m", "2", "--n", "2", "verify", "--suites", "hopf")
    assert code == 2 and "allow-slow" in err


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "--max-terms", "3", "--json", "-", "verify", "--suites", "localization")
    assert code == 3
    assert json.loads(out)["status"] == "budget"


def test_verify_json_validates_and_is_deterministic(capsys, tmp_path):
    argv = ["--json", "-", "verify", "--suites", "presentation,qspaces,points", "--trials", "5", "--triples", "3"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    first = json.loads(out)
    validate_report(first)
    assert first["status"] == "pass"
    _, out2, _ = run(capsys, *argv)
    assert strip_timing(first) == strip_timing(json.loads(out2))


def test_json_to_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "--json", str(path), "invcheck")
    assert code == 0 and out.strip()
    validate_report(json.loads(path.read_text()))


def test_coaction(capsys):
    assert run(capsys, "coaction", "--dual", "1")[0] == 0
    assert run(capsys, "--m", "2", "coaction", "--dual", "0")[0] == 0


def test_env_defaults(capsys, monkeypatch):
    monkeypatch.setenv("QSUPER_M", "2")
    monkeypatch.setenv("QSUPER_Q", "2")
    code, out, _ = run(capsys, "--json", "-", "berezinian")
    doc = json.loads(out)
    assert code == 0 and doc["size"] == [2, 1] and doc["q"] == "2"
    # explicit flags win over the environment
    _, out, _ = run(capsys, "--json", "-", "--m", "1", "berezinian")
    assert json.loads(out)["size"] == [1, 1]


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
