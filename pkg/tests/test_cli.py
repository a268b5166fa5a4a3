import io
import json
from importlib import resources

import pytest

from sextic.cli import run


def _run(argv):
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def classify_json():
    return _run(["classify", "--point", "E7", "--format", "json"])


def test_classify_report(classify_json):
    code, text = classify_json
    assert code == 0
    report = json.loads(text)
    assert len(report["rows"]) == 11
    assert report["total_classes"] == 19


def test_classify_is_deterministic(classify_json):
    assert _run(["classify", "--point", "E7", "--format", "json", "--seed", "3"]) == classify_json


def test_classify_text():
    code, text = _run(["classify", "--format", "text"])
    assert code == 0 and "E7+2A4+2A2" in text


def test_group_row1_facts():
    code, text = _run(["group", "--row", "1", "--verify-facts"])
    facts = json.loads(text)
    assert code == 0
    assert (facts["order"], facts["derived_order"], facts["derived_perfect"], facts["order_a1"]) == \
        (41040, 6840, True, 114)


def test_group_assembled_variant():
    code, text = _run(["group", "--row", "3", "--variant", "2", "--source", "assembled"])
    assert code == 0 and json.loads(text)["order"] == 6


def test_group_skeleton_file(tmp_path):
    src = resources.files("sextic").joinpath("data/skeleton_e7_e8_a4.txt").read_text(encoding="utf-8")
    path = tmp_path / "g.txt"
    path.write_text(src, encoding="utf-8")
    code, text = _run(["group", "--skeleton", str(path)])
    assert code == 0
    assert json.loads(text)["set"] == "E7+E8+A4"


def test_bad_skeleton_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("# distinguished dart: 0\nskeleton 2\nedge 0 5\n", encoding="utf-8")
    assert _run(["group", "--skeleton", str(path)])[0] == 2
    assert "line 3" in capsys.readouterr().err


def test_verify_bundled():
    code, text = _run(["verify", "--table-e7", "bundled"])
    assert code == 0 and json.loads(text)["match"]


def test_verify_tampered(tmp_path):
    data = json.loads(resources.files("sextic").joinpath("data/tab_e7.json").read_text(encoding="utf-8"))
    data["rows"][2]["classes"] = [1, 1]
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, text = _run(["verify", "--table-e7", str(path)])
    assert code == 1
    assert any("rows[2].classes" in line for line in json.loads(text)["diff"])


def test_input_errors(capsys):
    assert _run(["frobnicate"])[0] == 2
    assert _run(["classify", "--bogus"])[0] == 2
    assert _run(["classify", "--point", "E8"])[0] == 2
    assert _run(["group", "--row", "12"])[0] == 2
    assert _run(["verify", "--table-e7", "/nonexistent/file.json"])[0] == 2
    assert "nonexistent" in capsys.readouterr().err


def test_limit_is_inconclusive(capsys):
    assert _run(["group", "--row", "1", "--max-cosets", "100"])[0] == 2
    assert "inconclusive" in capsys.readouterr().err


def test_environment_limit(monkeypatch, capsys):
    monkeypatch.setenv("SEXTIC_MAX_COSETS", "100")
    assert _run(["group", "--row", "1"])[0] == 2
    monkeypatch.setenv("SEXTIC_MAX_COSETS", "many")
    assert _run(["group", "--row", "3"])[0] == 2


def test_perturb_and_split():
    code, text = _run(["perturb", "--row", "1"])
    assert code == 0
    assert {p["order"] for p in json.loads(text)["perturbations"]} == {6}
    code, text = _run(["split"])
    assert code == 0
    assert len(json.loads(text)["records"]) == 5


def test_enumerate_output(tmp_path):
    path = tmp_path / "models.json"
    assert _run(["enumerate", "--output", str(path)])[0] == 0
    assert len(json.loads(path.read_text(encoding="utf-8"))["models"]) == 19


def test_cli_has_no_domain_constructors():
    src = resources.files("sextic").joinpath("cli.py").read_text(encoding="utf-8")
    for name in ("SexticModel(", "FpPresentation(", "Braid3(", "SingularitySet("):
        assert name not in src
