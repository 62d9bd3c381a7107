import json
import subprocess
import sys
from pathlib import Path

import pytest

from affgrass.cli import main

FIXTURES = Path(__file__).parent / "fixtures"

GOLDEN = {
    "admissible_n2_s1_tau1.json": ["admissible", "--n", "2", "--s", "1", "--tau", "1"],
    "shuffle_n2_34_l1.json": ["shuffle", "--n", "2", "--s", "1", "--base", "3,4", "--level", "1"],
    "kostka_21_111.json": ["kostka", "--lam", "2,1", "--mu", "1,1,1"],
    "conjecture_mu2_m2.json": ["conjecture", "--mu", "2", "--m", "2", "--n", "2"],
    "verify_all_n2_s1_seed7.json": ["verify-all", "--n", "2", "--s", "1", "--seed", "7"],
}


def run(argv, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, out.read_text()


def test_admissible_command(tmp_path):
    code, text = run(["admissible", "--n", "2", "--s", "1", "--tau", "1"], tmp_path)
    doc = json.loads(text)
    assert code == 0 and doc["schema"] == 1
    assert doc["data"]["tuples"] == [[1, 3], [2, 3], [2, 4], [3, 4]]


def test_conjecture_command(tmp_path):
    code, text = run(["conjecture", "--mu", "2", "--m", "2", "--n", "2"], tmp_path)
    data = json.loads(text)["data"]
    assert code == 0
    assert (data["filtration_dim"], data["predicted"], data["match"]) == (9, 9, True)


def test_mismatch_exits_one(tmp_path):
    # the transposed rectangle gives a determinant power, dimension 1
    code, text = run(["conjecture", "--mu", "2", "--m", "2", "--convention", "cols"], tmp_path)
    doc = json.loads(text)
    assert code == 1 and doc["pass"] is False and doc["data"]["predicted"] == 1


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["admissible"])
    assert exc.value.code == 2
    assert main(["admissible", "--n", "2", "--tau", "99"]) == 2
    assert main(["conjecture", "--mu", "2", "--m", "1", "--n", "3"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "k.json"
    proc = subprocess.run(
        [sys.executable, "-m", "affgrass", "kostka", "--lam", "2,1", "--mu", "1,1,1", "--out", str(out)],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert json.loads(out.read_text())["data"]["poly"] == [0, 1, 1]
    bad = subprocess.run([sys.executable, "-m", "affgrass", "nope"], capture_output=True)
    assert bad.returncode == 2 and b"usage" in bad.stderr


def test_stdout_when_no_out(capsys):
    assert main(["chain", "--n", "2"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["tuple"] for c in doc["data"]["chain"]] == [[1, 3], [2, 4], [3, 4]]


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_reports(name, tmp_path):
    code, text = run(GOLDEN[name], tmp_path)
    assert code == 0
    assert text == (FIXTURES / name).read_text()


def test_reports_are_deterministic(tmp_path):
    argv = ["verify-all", "--n", "2", "--s", "1", "--seed", "7"]
    _, a = run(argv, tmp_path, "a.json")
    _, b = run(argv, tmp_path, "b.json")
    assert a == b
    doc = json.loads(a)
    names = [c["name"] for c in doc["checks"]]
    assert names == sorted(names)
    assert doc["pass"] == all(c["pass"] for c in doc["checks"])


@pytest.mark.parametrize(
    "argv",
    [
        ["straighten", "--n", "2", "--label", "1,4"],
        ["ideal-gens", "--n", "2", "--tau", "1"],
        ["basis-check", "--n", "3", "--tau", "2"],
        ["counts", "--n", "3"],
        ["orbit-member", "--mu", "2,1"],
        ["lusztig", "--mu", "3"],
        ["filtration", "--mu", "2,1", "--m", "2"],
        ["orbit-equations", "--mu", "2,1"],
        ["cutout", "--mu", "2,1"],
        ["bmu-character", "--mu", "2,1", "--max-degree", "3"],
        ["level-one", "--mu", "2,1"],
    ],
)
def test_every_command_runs(argv, tmp_path):
    code, text = run(argv, tmp_path)
    doc = json.loads(text)
    assert code == 0 and doc["command"] == argv[0] and doc["pass"]


def test_env_cap(monkeypatch, tmp_path):
    monkeypatch.setenv("AFFGRASS_ENUM_CAP", "5")
    assert main(["admissible", "--n", "3", "--tau", "1", "--out", str(tmp_path / "x.json")]) == 2
