import csv
import io
import json
import subprocess
import sys

import pytest

from adlvkit.cli import main, parse_b, parse_vector
from adlvkit.rootdata import parse_datum_spec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_gl2(capsys):
    code, out, _ = run(capsys, "count", "A1:gl", "--b", "w1", "--mu", "1,0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["verdict"] == "OK"
    assert data["rows"][0]["classes"] == 1 and data["rows"][0]["crystal"] == 1


def test_count_table_output(capsys):
    code, out, _ = run(capsys, "count", "A1:gl", "--b", "w1", "--mu", "1,0")
    assert code == 0 and "classes" in out and "OK" in out


def test_tensor_json(capsys):
    code, out, _ = run(capsys, "tensor", "A2:gl", "--mu", "1,0,0", "--mu", "1,0,0", "--format", "json")
    rows = {tuple(r["highest"]): r["multiplicity"] for r in json.loads(out)["rows"]}
    assert code == 0 and rows == {(2, 0, 0): 1, (1, 1, 0): 1}


def test_appendixb_certificate_file(tmp_path, capsys):
    target = tmp_path / "e7.json"
    code, _, _ = run(capsys, "appendixb", "E7:adjoint", "--all-b", "--format", "json", "--output", str(target))
    data = json.loads(target.read_text())
    assert code == 0 and data["verdict"] == "OK"
    assert [2, 5, 7] in [r["J"] for r in data["rows"]]
    assert "wall_time" in data


def test_crystal_csv(capsys):
    code, out, _ = run(capsys, "crystal", "C2", "--mu", "0,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["weight", "multiplicity"] and len(rows) == 5


def test_crystal_graph_json(capsys):
    code, out, _ = run(capsys, "crystal", "GL_3", "--mu", "1,0,0", "--format", "json", "--graph")
    assert code == 0 and len(json.loads(out)["edges"]) == 2


def test_restrict(capsys):
    code, out, _ = run(capsys, "restrict", "GL_3", "--mu", "1,0,0", "--levi", "1", "--format", "json")
    rows = {tuple(r["highest"]): r["multiplicity"] for r in json.loads(out)["rows"]}
    assert code == 0 and rows == {(1, 0, 0): 1, (0, 0, 1): 1}


def test_classify_agrees_with_criterion(capsys):
    code, out, _ = run(capsys, "classify", "C2", "--b", "w2", "--mu", "0,1", "--window", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "OK"
    assert max(r["dim"] for r in data["rows"]) == data["expected_dim"]


def test_superbasic_tables(capsys):
    code, out, _ = run(capsys, "superbasic", "GL_3:d=2", "--mu", "1,0,0", "--mu", "1,0,0", "--window", "3",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["m"] == 2
    assert all(r["dim"] == r["R"] for r in data["rows"])


def test_count_all_b(capsys):
    code, out, _ = run(capsys, "count", "C2", "--all-b", "--mu", "0,0", "--mu", "0,1", "--format", "json")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 2


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        main(["classify", "GL_3", "--b", "1", "--mu", "1,0,0", "--window", "3", "--format", "csv", "-o", str(target)])
    assert a.read_text() == b.read_text()


@pytest.mark.parametrize("argv", [
    ["count", "X9", "--mu", "1"],
    ["count", "GL_3", "--b", "w1", "--mu", "1,0"],
    ["count", "GL_3", "--b", "bogus", "--mu", "1,0,0"],
    ["classify", "GL_2", "--b", "w1", "--mu", "1,0", "--window", "0"],
    ["superbasic", "GL_3", "--mu", "1,1,1"],
    ["suite", "--criteria", "9"],
    ["nonsense"],
])
def test_parse_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_b_forms_agree():
    d = parse_datum_spec("GL_3")
    assert parse_b("2", d) == parse_b("w1^2", d) == parse_b("w1*w1", d)
    assert parse_b("w1^-1", d) * parse_b("w1", d) == parse_b(None, d)
    assert parse_b("t^(1,0,0)*s1s2", d).translation == (1, 0, 0)
    assert parse_vector("(1, 0, -2)") == (1, 0, -2)


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "adlvkit.cli", "tensor", "GL_2", "--mu", "1,0", "--mu", "1,0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "(2,0)" in proc.stdout
