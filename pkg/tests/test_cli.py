import io
import json
import subprocess
import sys

import pytest

from surfjump.cli import run
from conftest import INSTANCES


def call(*argv, stdin=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def inst(name):
    return str(INSTANCES / name)


def test_gen_duval_pipe_jn(monkeypatch):
    code, gen, _ = call("gen", "duval", "--type", "E8")
    assert code == 0
    code, out, _ = call("jn", "-", stdin=gen, monkeypatch=monkeypatch)
    assert code == 0
    assert "1/6, 7/6, 3/2, 2" in out
    assert "λ>2 jumping iff λ−1 jumping" in out


def test_jn_attribution():
    code, out, _ = call("jn", inst("x13_y5.json"), "--attribution", "--bound", "1")
    assert code == 0
    below = [ln for ln in out.splitlines() if ln.startswith("  ") and "/65" in ln]
    assert len(below) == 24
    assert all(ln.endswith(": E6 (critical)") for ln in below)


def test_jn_json_schema():
    code, out, _ = call("jn", inst("x13_y5.json"), "--json")
    data = json.loads(out)
    assert data["lct"] == "18/65"
    assert data["jumping_numbers"][0] == {
        "value": "18/65", "contributors": [{"chain": ["E6"], "critical": True}]}
    assert data["note"] == "λ>2 jumping iff λ−1 jumping"
    assert data["periodicity_base"][-1] == "2"


def test_jn_json_above_two():
    _, out, _ = call("jn", inst("duval_e8.json"), "--json", "--bound", "3")
    items = json.loads(out)["jumping_numbers"]
    assert items[-1] == {"value": "3", "periodic_from": "2"}


def test_lct_and_crosscheck():
    assert call("lct", inst("two_cusps.json"))[1] == "1/2\n"
    assert call("crosscheck", inst("parabola_cusp.json"))[1] == "AGREE\n"


def test_oracle():
    code, out, _ = call("oracle", inst("duval_a4.json"), "--json")
    assert code == 0 and json.loads(out) == ["1", "2"]


def test_mult_divisor():
    code, out, _ = call("mult-divisor", inst("two_cusps.json"), "--lambda", "1/4")
    assert code == 0 and json.loads(out) == {}
    code, out, _ = call("mult-divisor", inst("two_cusps.json"), "--lambda", "1/2")
    assert json.loads(out)
    assert call("mult-divisor", inst("two_cusps.json"), "--lambda", "0")[0] == 4


def test_gen_cyclic_and_invariants(tmp_path):
    _, out, _ = call("gen", "cyclic", "--n", "5", "--k", "2")
    path = tmp_path / "c.json"
    path.write_text(out)
    code, out, _ = call("invariants", str(path))
    data = json.loads(out)
    assert data["K"] == {"E1": "-2/5", "E2": "-1/5"}
    assert data["multiplicity"] == 3 and data["embedding_dimension"] == 4


def test_build_matches_instance():
    code, out, _ = call("build", inst("x13_y5.blowups.json"))
    assert code == 0
    assert json.loads(out) == json.loads((INSTANCES / "x13_y5.json").read_text())


def test_factor_and_simple(tmp_path):
    seq = {"steps": [{"center": [], "curve_mult": 0}, {"center": ["E1"], "curve_mult": 0}],
           "ideal": {"E1": 1, "E2": 1}}
    src = tmp_path / "seq.json"
    src.write_text(json.dumps(seq))
    _, built, _ = call("build", str(src))
    inst_path = tmp_path / "i.json"
    inst_path.write_text(built)
    code, out, _ = call("factor", str(inst_path))
    assert code == 0 and json.loads(out) == {"exponents": {"E1": 1, "E2": 1}}
    code, out, _ = call("simple", str(inst_path))
    assert json.loads(out) == {"simple": False, "one_is_jumping_number": True,
                               "consistent": True}


class TestExitCodes:
    def test_domain_error(self):
        code, _, err = call("factor", inst("duval_d6.json"))
        assert code == 3 and "NotUnimodular" in err

    def test_validation_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"divisors": [{"id": "E", "exceptional": True,
                                                  "self_intersection": 1}],
                                   "edges": [], "F": {"E": 1}}))
        code, _, err = call("validate", str(bad))
        assert code == 2 and "NotNegativeDefinite" in err
        bad.write_text("{not json")
        assert call("validate", str(bad))[0] == 2

    def test_not_antinef_and_force(self, tmp_path):
        p = tmp_path / "p.json"
        p.write_text(json.dumps({"divisors": [{"id": "E1", "exceptional": True,
                                                "self_intersection": -2},
                                               {"id": "E2", "exceptional": True,
                                                "self_intersection": -2}],
                                 "edges": [["E1", "E2"]], "F": {"E1": 1}}))
        assert call("validate", str(p))[0] == 2
        code, out, _ = call("validate", str(p), "--force")
        assert code == 0 and "warning" in out

    @pytest.mark.parametrize("argv", [[], ["jn"], ["frobnicate"], ["gen", "duval"],
                                      ["jn", "x.json", "--bound", "abc"],
                                      ["gen", "duval", "--type", "Q"]])
    def test_usage(self, argv, capsys):
        assert call(*argv)[0] == 4

    def test_missing_file(self):
        assert call("jn", "/nonexistent/file.json")[0] == 4

    def test_bad_rank(self):
        assert call("gen", "duval", "--type", "D", "--n", "3")[0] == 3


def test_console_script_determinism():
    runs = [subprocess.run([sys.executable, "-m", "surfjump.cli", "jn", inst("two_cusps.json"),
                            "--json"], capture_output=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
