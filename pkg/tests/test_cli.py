import json
import subprocess
import sys
from fractions import Fraction

import pytest

from gelfandpairs import qjohnson
from gelfandpairs.cli import main
from gelfandpairs.exactnum import from_text
from gelfandpairs.qfunc import qjohnson_phi


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out) if out else None


def test_orbits_qhamming_by_rank(capsys):
    code, doc = run_json(capsys, "orbits", "--preset", "qhamming", "--n", "3", "--m", "1")
    assert code == 0
    assert [o["label"] for o in doc["orbits"]] == ["(0,2,1)", "(0,2,2)"]
    assert doc["X_size"] == 4 and doc["checks"]["mass"] == "OK"


def test_orbits_nonbinary_mass(capsys):
    code, doc = run_json(capsys, "orbits", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1",
                         "--r", "0", "--s", "1", "--verify", "full")
    assert code == 0
    assert doc["mass"] == doc["X_size"] == 6
    assert doc["checks"] == {"mass": "OK", "base": "OK", "engine": "OK"}


def test_invalid_parameters_exit_2(capsys):
    code, _ = run(capsys, "orbits", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1", "--r", "2", "--s", "0")
    assert code == 2
    code, _ = run(capsys, "orbits", "--preset", "qjohnson", "--n", "3")
    assert code == 2
    code, _ = run(capsys, "orbits", "--preset", "qjohnson", "--n", "3", "--m", "1", "--q", "6")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["orbits"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["harmonic", "--preset", "qjohnson", "--component", "1,2"])
    assert e.value.code == 2


def test_gelfand_check_wreath_examples(capsys):
    code, doc = run_json(capsys, "gelfand-check", "--preset", "wreath", "--blocks", "1|2,3", "--D", "3")
    assert code == 0
    assert doc["certificate"]["commutative"] is True and doc["certificate"]["symmetric"] is False
    code, doc = run_json(capsys, "gelfand-check", "--preset", "wreath", "--blocks", "1,2|3,4", "--D", "3")
    assert code == 0
    assert doc["certificate"]["condition_i"] is False and doc["verdict"] == "OK"


def test_gelfand_check_qjohnson_all_true(capsys):
    code, doc = run_json(capsys, "gelfand-check", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1",
                         "--r", "0", "--s", "1")
    assert code == 0
    cert = doc["certificate"]
    assert all(cert[k] for k in ("commutative", "symmetric", "condition_i", "condition_ii", "consistent"))


def test_spherical_qjohnson_rows(capsys):
    code, doc = run_json(capsys, "spherical", "--preset", "qjohnson", "--n", "4", "--m", "2")
    assert code == 0
    comps = doc["components"]
    assert len(comps) == 3
    p = qjohnson.QJParams(2, 4, 0, 0, 2)
    for c in comps:
        v = int(c["label"].strip("()").split(",")[1])
        for lab, val in c["values"].items():
            i = int(lab.strip("()").split(",")[1])
            assert from_text(val) == qjohnson_phi(4, 2, v, i, 2)
    assert doc["verdicts"]["orthogonality"] == "OK"
    assert p.X_size == sum(doc["weights"].values()) == 35


def test_spherical_full_verdicts(capsys):
    code, doc = run_json(capsys, "spherical", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1",
                         "--r", "0", "--s", "1", "--verify", "full")
    assert code == 0
    assert doc["verdicts"] == {"orthogonality": "OK", "three_way": "OK"}


def test_spherical_trivial_preset(capsys):
    code, doc = run_json(capsys, "spherical", "--preset", "qjohnson", "--n", "3", "--m", "0")
    assert code == 0
    assert len(doc["components"]) == 1
    assert list(doc["components"][0]["values"].values()) == ["1"]


def test_spherical_wreath_full(capsys):
    code, doc = run_json(capsys, "spherical", "--preset", "wreath", "--blocks", "1|2,3", "--D", "3",
                         "--verify", "full")
    assert code == 0
    assert doc["verdicts"] == {"orthogonality": "OK", "formula": "OK"}


def test_spherical_noncommutative_exit_3(capsys):
    code, _ = run(capsys, "spherical", "--preset", "wreath", "--blocks", "1,2|3,4", "--D", "3")
    assert code == 3


def test_spherical_csv(capsys):
    code, out = run(capsys, "spherical", "--preset", "qjohnson", "--n", "4", "--m", "2", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "component,orbit,value,weight,norm"
    assert len(lines) == 1 + 3 * 3
    assert all("." not in line.split(",")[2] for line in lines[1:])


def test_harmonic_examples(capsys):
    code, doc = run_json(capsys, "harmonic", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1",
                         "--r", "0", "--s", "1", "--component", "0,0,0")
    assert code == 0
    assert len({v["value"] for v in doc["values"]}) == 1
    code, doc = run_json(capsys, "harmonic", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1",
                         "--r", "0", "--s", "1", "--component", "0,0,1", "--seed", "1", "--verify", "full")
    assert code == 0
    assert set(doc["verdicts"].values()) == {"OK"}
    assert any(v["value"] != "0" for v in doc["values"])


def test_harmonic_out_of_range_exit_2(capsys):
    code, _ = run(capsys, "harmonic", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1",
                  "--r", "0", "--s", "1", "--component", "3,0,0")
    assert code == 2


def test_instance_file(tmp_path, capsys):
    doc = {"A": [2, 2, 2],
           "H": {"generators": [{"perm": [1, 0, 2], "aut": [[0, 1, 0], [1, 0, 0], [0, 0, 1]], "y": [1, 0, 2]},
                                {"perm": [1, 2, 0], "aut": [[0, 1, 0], [0, 0, 1], [1, 0, 0]], "y": [1, 2, 0]}]},
           "y0": 0, "C": [[1, 1, 1]]}
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(doc))
    code, rep = run_json(capsys, "orbits", "--instance", str(path))
    assert code == 0
    assert rep["mass"] == rep["X_size"] == 12
    code, _ = run(capsys, "orbits", "--instance", str(tmp_path / "missing.json"))
    assert code == 2


def test_out_flag_and_byte_identical(tmp_path, capsys):
    args = ["spherical", "--preset", "nonbinary-qjohnson", "--n", "4", "--m", "2", "--r", "1", "--s", "1",
            "--seed", "7"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""
    h = ["harmonic", "--preset", "nonbinary-qjohnson", "--n", "3", "--m", "1", "--r", "0", "--s", "1",
         "--component", "0,0,1", "--seed", "4"]
    assert run(capsys, *h) == run(capsys, *h)


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "gelfandpairs", "orbits", "--preset", "qhamming", "--n", "3",
                          "--m", "1"], capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["mass"] == 4
    bad = subprocess.run([sys.executable, "-m", "gelfandpairs", "orbits", "--preset", "qhamming", "--n", "3",
                          "--m", "5"], capture_output=True, text=True)
    assert bad.returncode == 2
