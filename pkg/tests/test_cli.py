import json
import subprocess
import sys

import pytest

from colimkit.cli import JobSpec, main, run
from colimkit.errors import ValidationError

C2 = {"objects": ["*"], "morphisms": [{"name": "t", "dom": "*", "cod": "*"}],
      "compose": [["t", "t", "1_*"]]}
TRIVIAL = {"coeff": "Z", "dims": {"*": 1}, "maps": {"t": [[1]]}}
ZERO2 = {"generators": [{"name": "x", "weight": 1}, {"name": "y", "weight": 1}],
         "algebra": {"dim": 2, "unital": False, "weights": [1, 1],
                     "table": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]},
         "images": {"x": [1, 0], "y": [0, 1]}}


@pytest.fixture
def docs(tmp_path):
    out = {}
    for name, doc in (("cat", C2), ("functor", TRIVIAL), ("pres", ZERO2)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc), encoding="utf-8")
        out[name] = str(p)
    return out


def run_main(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_colim_table(docs, capsys):
    code, out, _ = run_main(["colim", "--category", docs["cat"], "--functor", docs["functor"],
                             "--max-degree", "3"], capsys)
    assert code == 0
    assert out.splitlines()[2:] == ["0  Z", "1  Z/2", "2  0", "3  Z/2"]


def test_colim_json_roundtrip(docs, capsys):
    code, out, _ = run_main(["colim", "--category", docs["cat"], "--functor", docs["functor"],
                             "--max-degree", "2", "--json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["degrees"][1] == {"betti": 0, "degree": 1, "dim": 0, "torsion": [2]}


def test_hopf_verdict(docs, capsys):
    code, out, _ = run_main(["hopf", "--presentation", docs["pres"], "--n", "0",
                             "--max-weight", "6"], capsys)
    assert code == 0
    assert out.strip().endswith("AGREE")
    assert "     2     1          1" in out


@pytest.mark.parametrize("argv", [
    ["group-homology", "--group", "{g}"],
    ["hochschild", "--algebra", "Q[e]", "--max-weight", "4"],
    ["cyclic", "--algebra", "QxQ"],
    ["cyclic-reduced", "--algebra", "Q"],
    ["lemma56", "--m", "2", "--max-weight", "5"],
    ["magnus-check", "--presentation", "{pres}", "--max-weight", "4"],
    ["sbi", "--algebra", "Q[e]", "--max-weight", "6"],
    ["steinberg-check", "--ring", "Z/4"],
    ["gamma-check", "--source", "Z/4", "--target", "Z/2"],
])
def test_commands_succeed(argv, docs, tmp_path, capsys):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"cyclic": 3}))
    argv = [a.format(g=g, pres=docs["pres"]) for a in argv]
    code, out, err = run_main(argv + ["--json"], capsys)
    assert code == 0, err
    report = json.loads(out)
    assert report["command"] == argv[0]


def test_roundtrip_matches_in_memory(docs):
    from colimkit.algebras import dual_numbers
    from colimkit.hochcyclic import hochschild
    job = JobSpec("hochschild", {"algebra": "Q[e]"}, max_degree=3, max_weight=5, json=True)
    status, text = run(job)
    assert status == 0
    assert json.loads(text)["result"] == hochschild(dual_numbers(), None, 3, 5).as_dict()


def test_unknown_command(capsys):
    code, _, err = run_main(["frobnicate"], capsys)
    assert code == 1 and "unknown command" in err


def test_validation_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"objects": ["a"], "morphisms": [{"name": "f", "dom": "a", "cod": "zz"}]}))
    code, _, err = run_main(["colim", "--category", str(bad), "--functor", str(bad)], capsys)
    assert code == 2 and "morphism f" in err


def test_broken_json_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_main(["hochschild", "--algebra", str(bad)], capsys)
    assert code == 2 and "invalid JSON" in err


def test_torsion_coeff_rules(capsys):
    code, _, err = run_main(["cyclic", "--algebra", "Q", "--coeff", "Z"], capsys)
    assert code == 2
    with pytest.raises(ValidationError):
        JobSpec("colim", max_degree=0).validate()


def test_graded_needs_weight(capsys):
    code, _, err = run_main(["hochschild", "--algebra", "Q[e]"], capsys)
    assert code == 2 and "--max-weight" in err


def test_selftest_subset(capsys):
    code, out, _ = run_main(["selftest", "--only", "4,11"], capsys)
    assert code == 0
    assert out.count("[PASS]") == 2


def test_output_is_deterministic(docs):
    cmd = [sys.executable, "-m", "colimkit.cli", "hopf", "--presentation", docs["pres"],
           "--n", "1", "--max-weight", "5", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"AGREE" in a
