import json
import subprocess
import sys

import pytest

from latticework import QQ, LatticeBasis, relative_type, standard_lattice
from latticework.cli import main
from latticework.jsonio import flag_from_json, lattice_from_json, slopes_from_json

IDENTITY = {"dim": 2, "columns": [["1", "0"], ["0", "1"]]}
EXT = {"dim": 2, "columns": [["1", "0"], ["t^-1", "1"]]}


def run(capsys, tmp_path, argv, payload=None):
    if payload is not None:
        path = tmp_path / "in.json"
        path.write_text(json.dumps(payload))
        argv = [*argv, "--in", str(path)]
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def as_json(out):
    return json.loads(out)


class TestCommands:
    def test_type(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["type"], {"L1": IDENTITY, "L2": EXT})
        assert code == 0
        assert as_json(out) == {"type": [1, -1]}

    def test_bb(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["bb", "--side", "2"], {"L1": IDENTITY, "L2": EXT})
        body = as_json(out)
        assert code == 0 and body["type"] == [1, -1]
        assert body["graded"] == {"-1": 1, "1": 1}
        assert flag_from_json(body["flag"], QQ).graded_dims() == {-1: 1, 1: 1}

    def test_rees_roundtrip(self, capsys, tmp_path):
        flag = {"dim": 2, "steps": [{"jump": -1, "basis": [["1", "0"], ["0", "1"]]}, {"jump": 2, "basis": [["1", "1"]]}]}
        code, out, _ = run(capsys, tmp_path, ["rees"], flag)
        body = as_json(out)
        lattice = lattice_from_json(body["lattice"], QQ)
        assert body["type"] == [1, -2]
        assert relative_type(standard_lattice(2), lattice) == (1, -2)

    def test_good_and_not_good(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["good", "--shape", "1,1"], EXT)
        assert code == 1
        body = as_json(out)
        assert body["is_good"] is False and body["full_type"] == [1, -1] and body["levi_type"] == [0, 0]
        good = {"dim": 2, "columns": [["t", "0"], ["1", "1"]]}
        code, out, _ = run(capsys, tmp_path, ["good"], {"g": good, "shape": {"blocks": [1, 1]}})
        assert code == 0 and as_json(out)["is_good"] is True

    def test_borel(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["borel"], {"u": EXT, "mu": [1, 0]})
        assert code == 1
        body = as_json(out)
        assert body["positive_integral"] is False and body["cross_check_agrees"] is True

    def test_strict(self, capsys, tmp_path):
        one = {"dim": 1, "columns": [["1"]]}
        payload = {
            "f": {"dim": [2, 1], "columns": [["1", "0"]]},
            "source": {"L1": one, "L2": one},
            "target": {"L1": IDENTITY, "L2": EXT},
        }
        code, out, _ = run(capsys, tmp_path, ["strict"], payload)
        assert code == 0 and as_json(out) == {"strict": True}

    def test_extcheck(self, capsys, tmp_path):
        one = {"dim": 1, "columns": [["1"]]}
        payload = {
            "S": {"L1": one, "L2": one},
            "V": {"L1": IDENTITY, "L2": EXT},
            "Q": {"L1": one, "L2": one},
            "incl": {"dim": [2, 1], "columns": [["1", "0"]]},
            "proj": {"dim": [1, 2], "columns": [["0"], ["1"]]},
        }
        code, out, _ = run(capsys, tmp_path, ["extcheck"], payload)
        body = as_json(out)
        assert code == 0
        assert body["gr_type"] == [0, 0] and body["total_type"] == [1, -1]
        assert body["ord_chain"][0] == {"k": 1, "ord_V": 1, "ord_gr": 0}

    def test_mazur(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["mazur"], {"nu": {"slopes": ["1/2", "1/2"]}, "mu": [1, 0]})
        body = as_json(out)
        assert code == 0 and body["member"] is True
        assert body["polygons"]["newton"]["vertices"] == [["0", "0"], ["1", "1/2"], ["2", "1"]]
        code, _, _ = run(capsys, tmp_path, ["mazur"], {"nu": ["1", "1"], "mu": [1, 0]})
        assert code == 1

    def test_basic(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["basic", "--mu", "1,0"])
        assert code == 0
        assert as_json(out) == {"basic": ["1/2", "1/2"], "compact_mod_center": True}
        code, out, _ = run(capsys, tmp_path, ["basic", "--shape", "1,1"], {"mu": [1, 0], "nu": ["1", "0"]})
        assert code == 1
        code, out, _ = run(capsys, tmp_path, ["basic", "--shape", "1,1", "--levi-only"], {"mu": [1, 0], "nu": ["1", "0"]})
        assert code == 0 and as_json(out)["nu_is_basic"] is True

    def test_admreport(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["admreport"], {"nu": ["1/2", "1/2"], "etale_type": [0, -1]})
        body = as_json(out)
        assert code == 0 and body["modified_degree"] == "0" and body["verdict_necessary"] is True
        assert slopes_from_json(body["newton"]) == slopes_from_json(["1/2", "1/2"])

    def test_tate(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["tate", "--k", "1"])
        body = as_json(out)
        assert code == 0
        assert body["hodge_degree"] == -1 and body["hodge_tate_degree"] == 1
        assert body["nu"] == ["-1"] and body["modified_degree"] == "0"

    def test_polygon_svg_deterministic(self, capsys, tmp_path):
        payload = {"nu": ["1/2", "1/2"], "mu": [1, 0]}
        _, first, _ = run(capsys, tmp_path, ["polygon", "--format", "svg"], payload)
        _, second, _ = run(capsys, tmp_path, ["polygon", "--format", "svg"], payload)
        assert first == second and first.startswith("<svg")

    def test_text_format(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["tate", "--k", "2", "--format", "text"])
        assert code == 0 and "hodge_degree: -2" in out

    def test_prime_field(self, capsys, tmp_path):
        lower = {"dim": 2, "columns": [["1", "5*t^-1"], ["0", "1"]]}
        code, out, _ = run(capsys, tmp_path, ["type", "--field", "Fp:5"], {"L1": IDENTITY, "L2": lower})
        assert as_json(out) == {"type": [0, 0]}


class TestVerify:
    def test_suite_pass(self, capsys, tmp_path):
        code, out, _ = run(capsys, tmp_path, ["verify", "--suite", "cartan_oracle", "--seed", "1", "--trials", "100"])
        body = as_json(out)
        assert code == 0 and body["passed"] is True
        assert body["suites"][0]["seed"] == 1

    def test_env_seed_override(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("LATTICEWORK_SEED", "42")
        _, out, _ = run(capsys, tmp_path, ["verify", "--suite", "tate_anchors", "--seed", "1"])
        assert as_json(out)["suites"][0]["seed"] == 42

    def test_replay_file(self, capsys, tmp_path):
        case = {"suite": "cartan_oracle", "field": "Q", "input": EXT}
        path = tmp_path / "case.json"
        path.write_text(json.dumps(case))
        code, out, _ = run(capsys, tmp_path, ["verify", "--replay", str(path)])
        body = as_json(out)
        assert code == 0 and body["replayed"][0]["got"] == [1, -1]


class TestErrors:
    def test_syntax_position(self, capsys, tmp_path):
        bad = {"dim": 1, "columns": [["t^^2"]]}
        code, _, err = run(capsys, tmp_path, ["type"], {"L1": bad, "L2": bad})
        assert code == 2
        assert err.startswith("error[E_SYNTAX]") and "position 2" in err

    def test_malformed_json(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        code, _, err = run(capsys, tmp_path, ["type", "--in", str(path)])
        assert code == 2 and "error[E_JSON]" in err

    def test_invariant_named(self, capsys, tmp_path):
        code, _, err = run(capsys, tmp_path, ["good", "--shape", "0,2"], IDENTITY)
        assert code == 2 and "shape_positive_blocks" in err

    def test_unknown_command(self, capsys, tmp_path):
        code, _, _ = run(capsys, tmp_path, ["frobnicate"])
        assert code == 2

    def test_svg_needs_polygons(self, capsys, tmp_path):
        code, _, err = run(capsys, tmp_path, ["tate", "--k", "1", "--format", "svg"])
        assert code == 2 and "E_USAGE" in err

    def test_missing_field(self, capsys, tmp_path):
        code, _, err = run(capsys, tmp_path, ["borel"], {"u": EXT})
        assert code == 2 and "'mu'" in err

    def test_singular(self, capsys, tmp_path):
        sing = {"dim": 2, "columns": [["1", "1"], ["1", "1"]]}
        code, _, err = run(capsys, tmp_path, ["type"], {"L1": sing, "L2": IDENTITY})
        assert code == 2 and err.startswith("error[")


def test_json_roundtrip_of_emitted_lattice(capsys, tmp_path):
    flag = {"dim": 2, "steps": [{"jump": 0, "basis": [["1", "0"], ["0", "1"]]}, {"jump": 1, "basis": [["1", "2"]]}]}
    _, out, _ = run(capsys, tmp_path, ["rees"], flag)
    lattice_json = as_json(out)["lattice"]
    lattice = lattice_from_json(lattice_json, QQ)
    assert lattice_from_json(json.loads(json.dumps(lattice_json)), QQ) == lattice
    assert isinstance(lattice, LatticeBasis)


def test_module_entry_point_and_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "latticework", "type"],
        input=json.dumps({"L1": IDENTITY, "L2": EXT}),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"type": [1, -1]}
    assert proc.stderr == ""
