import json
import subprocess
import sys
from pathlib import Path

import pytest

from mcperm.cli import build_parser, help_text, main

GOLDEN = Path(__file__).parent / "golden" / "help.txt"


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else json.dumps(content))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_help_matches_golden(monkeypatch):
    monkeypatch.setenv("COLUMNS", "80")
    assert help_text() == GOLDEN.read_text()


def test_help_lists_every_subcommand_and_flag(monkeypatch):
    monkeypatch.setenv("COLUMNS", "80")
    text = help_text()
    for cmd in ("perm", "mcp-poly", "check-stability", "stats", "eulerian", "apolar", "verify"):
        assert f"=== {cmd} ===" in text
    for flag in ("--input", "--seed", "--trials", "--jobs", "--report", "--n", "--k", "--v",
                 "--alpha", "--diagonal", "--engine"):
        assert flag in text


def test_perm_of_all_ones(capsys, write):
    path = write("j3.json", {"rows": 3, "cols": 3, "entries": [[1, 1, 1]] * 3})
    assert run(capsys, "perm", "--input", path)[:2] == (0, "6\n")


def test_perm_variants(capsys, write):
    path = write("m.json", {"entries": [["1", "1/2"], [3, 4]]})
    assert run(capsys, "perm", "--input", path, "--engine", "ryser")[1] == "11/2\n"
    assert run(capsys, "perm", "--input", path, "--k", "1")[1] == "17/2\n"
    assert run(capsys, "perm", "--input", path, "--alpha")[1] == "4*alpha^2 + 3/2*alpha\n"
    assert run(capsys, "perm", "--input", path, "--alpha", "1")[1] == "11/2\n"
    csv = write("m.csv", "1,2\n3,4\n")
    assert run(capsys, "perm", "--input", csv)[1] == "10\n"


def test_mcp_poly(capsys, write):
    path = write("a.json", {"rows": 2, "entries": [[1, 1], [0, 0]]})
    assert run(capsys, "mcp-poly", "--input", path)[1] == "2*z1*z2 + z1 + z2\n"
    code, out, _ = run(capsys, "mcp-poly", "--input", path, "--diagonal")
    assert code == 0 and out == "2*t^2 + 2*t\nreal_rooted: true\n"
    code, out, _ = run(capsys, "mcp-poly", "--input", write("f.json", {"rows": 5, "heights": [0, 1, 3, 4, 4]}),
                       "--diagonal")
    assert out.endswith("real_rooted: true\n")


def test_check_stability_exit_codes(capsys, write):
    code, out, _ = run(capsys, "check-stability", "--input", write("p.txt", "z1*z2\n"))
    assert code == 0 and json.loads(out)["verdict"]["kind"] == "passed-sampling"
    code, out, _ = run(capsys, "check-stability", "--input", write("q.txt", "z1^2 + z2^2"),
                       "--seed", "5", "--trials", "10")
    report = json.loads(out)
    assert code == 2 and report["verdict"]["kind"] == "refuted"
    assert report["seed"] == 5 and report["trials"] == 10
    assert report["verdict"]["witness"]["base"]


def test_check_stability_rayleigh_and_report(capsys, write, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "check-stability", "--input", write("p.txt", "1 + z1*z2"),
                       "--rayleigh", "1,2", "--points", "20", "--report", str(out_path))
    report = json.loads(out)
    assert code == 2 and report["rayleigh"]["passed"] is False
    assert json.loads(out_path.read_text()) == report


def test_check_stability_is_reproducible(capsys, write):
    path = write("p.txt", "z1^2*z2 + z2^2 - z1 + 3")
    first = run(capsys, "check-stability", "--input", path, "--seed", "11")
    assert first == run(capsys, "check-stability", "--input", path, "--seed", "11")


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "--perm", "341526978")
    data = json.loads(out)
    assert code == 0
    assert data["cyc"] == 4 and data["linear_map"] == "314526987"
    assert data["cycles"] == ["(1 3)", "(2 4 5)", "(6)", "(7 9 8)"]


def test_eulerian(capsys):
    assert run(capsys, "eulerian", "--n", "3")[1] == "y2*y3 + y2 + 3*y3 + 1\n"
    assert run(capsys, "eulerian", "--n", "3", "--diagonal")[1] == \
        "t^2 + 4*t + 1\nreal_rooted: true\n"
    assert run(capsys, "eulerian", "--multiset", "2,1")[1] == "2*y2 + 1\n"
    for extra in ([], ["--shift", "2"], ["--alpha"]):
        a = run(capsys, "eulerian", "--n", "4", *extra)[1]
        b = run(capsys, "eulerian", "--n", "4", "--engine", "enumeration", *extra)[1]
        assert a == b
    v1 = run(capsys, "eulerian", "--v", "2,1,2")[1]
    assert v1 == run(capsys, "eulerian", "--v", "2,1,2", "--engine", "enumeration")[1]


def test_apolar_actions(capsys, write):
    code, out, _ = run(capsys, "apolar", "form", "--input", write("f.json", {"f": [-1, 1],
                                                                              "g": [1, 1]}))
    assert code == 0 and out == "2\napolar: false\n"
    code, out, _ = run(capsys, "apolar", "complement",
                       "--input", write("c.json", {"g": "t^3 - t", "free": ["1", "2"]}))
    f = out.strip()
    code, out, _ = run(capsys, "apolar", "form",
                       "--input", write("f2.json", {"f": f, "g": "t^3 - t"}))
    assert out == "0\napolar: true\n"
    code, out, _ = run(capsys, "apolar", "mobius",
                       "--input", write("m.json", {"f": {"roots": [1, -1]}, "map": [1, 1, 0, 1]}))
    assert out == "t^2 - 2*t\n"
    code, out, _ = run(capsys, "apolar", "grace-demo", "--input",
                       write("g.json", {"half_plane": {"point": 0, "normal": [0, 1]}}),
                       "--trials", "25")
    data = json.loads(out)
    assert code == 0 and data["violations"] == 0 and data["trials"] == 25


def test_verify_reports(capsys, tmp_path):
    out_path = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", "recurrence", "--n", "4", "--report", str(out_path))
    assert code == 0 and "70/70" in out
    data = json.loads(out_path.read_text())
    assert data["universe"] == 70 and data["schema"] == 1 and "wall_time" not in data
    run(capsys, "verify", "recurrence", "--n", "3", "--report", str(out_path), "--timing")
    assert "wall_time" in json.loads(out_path.read_text())


def test_verify_seeded_rerun_is_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p, jobs in zip(paths, ("1", "2")):
        code, out, _ = run(capsys, "verify", "conjecture-probe", "--n", "3", "--seed", "9",
                           "--trials", "8", "--points", "20", "--jobs", jobs, "--report", str(p))
        assert "seed=9" in out and "trials=8" in out
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_single_input(capsys, write):
    path = write("a.json", {"rows": 5, "heights": [0, 1, 3, 4, 4]})
    code, out, _ = run(capsys, "verify", "mmcpc", "--input", path, "--points", "50")
    assert code == 0 and "1/1" in out


@pytest.mark.parametrize("argv,needle", [
    (["perm"], "--input"),
    (["nope"], "invalid choice"),
    (["verify", "recurrence", "--n", "0"], "positive integer"),
    (["verify", "all", "--seed", "-1"], "seed"),
    (["eulerian", "--v", "2,x"], "comma-separated"),
])
def test_usage_errors_exit_1(capsys, argv, needle):
    code, _, err = run(capsys, *argv)
    assert code == 1 and needle in err


@pytest.mark.parametrize("content,needle", [
    ({"entries": [[1, "x"], [1, 2]]}, "entries[0][1]"),
    ({"entries": [[1, 2], [3]]}, "entries[1]"),
    ({"entries": [[1.5]]}, "entries[0][0]"),
    ({"rows": 3, "entries": [[1]]}, "rows"),
    ({"heights": [2, 1]}, "heights"),
    ([1, 2], "matrix JSON"),
    ("{not json", "invalid JSON"),
])
def test_malformed_input_names_the_field(capsys, write, content, needle):
    code, _, err = run(capsys, "perm", "--input", write("bad.json", content))
    assert code == 1 and needle in err


def test_other_input_errors(capsys, write):
    assert run(capsys, "perm", "--input", "/nonexistent/m.json")[0] == 1
    code, _, err = run(capsys, "mcp-poly", "--input", write("m.json", {"entries": [[0, 1], [1, 0]]}))
    assert code == 1 and "column 1 increases" in err
    code, _, err = run(capsys, "check-stability", "--input", write("p.txt", "z1 +"))
    assert code == 1 and "polynomial" in err
    code, _, err = run(capsys, "stats", "--perm", "1123")
    assert code == 1 and "perm" in err
    code, _, err = run(capsys, "eulerian", "--n", "12")
    assert code == 1 and "cap" in err
    code, _, err = run(capsys, "apolar", "complement",
                       "--input", write("c.json", {"g": [1, 2, 3], "free": []}))
    assert code == 1 and "free" in err


def test_module_entry_point(tmp_path):
    path = tmp_path / "j.json"
    path.write_text(json.dumps({"entries": [[1, 1], [1, 1]]}))
    proc = subprocess.run([sys.executable, "-m", "mcperm", "perm", "--input", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"


def test_parser_builds():
    assert build_parser().prog == "mcperm"
