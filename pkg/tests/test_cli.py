"""End-to-end tests for the irredforge command line."""

import json

import pytest

from cli import build_parser, main, resolve_config, run_verify
from gf import field_from_q, prime_field
from notation import format_poly, parse_poly
from oracle import min_poly_power
from polyring import Poly

F1_TEXT = "x^8+x^5+x^3+x^2+a"
F8_EXAMPLE = "x^5 + a*x^4 + x^3 + a*x^2 + (a^2+a)*x + a^2"
F2_POLY = ("x^9 + (a^2+a)*x^8 + (a^3+a^2)*x^7 + a*x^6 + x^5 + (a^3+a^2+a)*x^4 "
           "+ (a^2+a+1)*x^3 + a^2*x^2 + a^3*x + a^3+a^2+a")


def _run(capsys, argv, **kwargs):
    code = main(argv, **kwargs)
    out, err = capsys.readouterr()
    return code, out, err


class TestConstruct:

    def test_text_output(self, capsys):
        code, out, _ = _run(capsys, ["construct", "--field", "2,4,y^4+y+1", "--poly", F1_TEXT, "--k", "3"])
        assert code == 0
        f16 = field_from_q(16)
        expected = min_poly_power(parse_poly(f16, F1_TEXT), 3)
        assert out.splitlines()[0] == format_poly(expected)

    def test_json_output(self, capsys):
        code, out, _ = _run(capsys, ["construct", "--field", "16", "--poly", F1_TEXT, "--k", "15",
                                     "--method", "cor8", "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data["k"] == 15
        assert data["method"] == "cor8"
        assert data["field"] == "2,4,y^4+y+1"
        f16 = field_from_q(16)
        assert parse_poly(f16, data["output"]) == min_poly_power(parse_poly(f16, F1_TEXT), 15)

    def test_prime_outside_q_and_q_minus_one(self, capsys):
        code, _, err = _run(capsys, ["construct", "--field", "7", "--poly", "x+4", "--k", "5"])
        assert code == 2
        assert "prime 5 divides neither q nor q-1" in err

    def test_parse_error(self, capsys):
        code, _, err = _run(capsys, ["construct", "--field", "16", "--poly", "x^2+", "--k", "3"])
        assert code == 2
        assert err.startswith("error:")

    def test_missing_required(self, capsys):
        code, _, err = _run(capsys, ["construct", "--field", "16", "--poly", F1_TEXT])
        assert code == 2
        assert "k: required" in err

    def test_kk_rejects_other_k(self, capsys):
        code, _, _ = _run(capsys, ["construct", "--field", "9", "--poly", "x+a", "--k", "4", "--method", "kk"])
        assert code == 2

    def test_unwritable_output(self, capsys, tmp_path):
        out = str(tmp_path / "missing" / "out.txt")
        code, _, err = _run(capsys, ["construct", "--field", "16", "--poly", F1_TEXT, "--k", "3", "--out", out])
        assert code == 1
        assert err.startswith("error:")


class TestIterate:

    def test_f8_example(self, capsys):
        code, out, _ = _run(capsys, ["iterate", "--field", "2,3,y^3+y+1", "--poly", F8_EXAMPLE, "--prime", "7"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "tail=1 orbit=150"
        assert "32767" in lines[2].split("=")[1].split(",")

    def test_json(self, capsys):
        code, out, _ = _run(capsys, ["iterate", "--field", "13", "--poly", "x+11", "--prime", "3",
                                     "--format", "json"])
        assert code == 0
        data = json.loads(out)
        assert data["tail_length"] == 1
        assert data["orbit_length"] == 2
        assert 12 in [c["order"] for c in data["order_candidates"]]


class TestEnumerate:

    def test_f2_members(self, capsys):
        code, out, _ = _run(capsys, ["enumerate", "--field", "16", "--poly", F2_POLY, "--threads", "1"])
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "members=4647"
        assert lines[1] == "orbits=21"
        assert lines[2] == "tail=111"

    def test_csv_table(self, capsys):
        code, out, _ = _run(capsys, ["enumerate", "--field", "13", "--poly", "x^2+x+2", "--threads", "1",
                                     "--format", "csv"])
        assert code == 0
        assert out.splitlines()[0].startswith("Weight,Total,0-normal")

    def test_bad_caps_count(self, capsys):
        code, _, _ = _run(capsys, ["enumerate", "--field", "16", "--poly", F1_TEXT, "--caps", "1,2"])
        assert code == 2


class TestAnalyze:

    def test_empty_file(self, capsys, tmp_path):
        path = tmp_path / "members.txt"
        path.write_text("")
        code, out, _ = _run(capsys, ["analyze", "--field", "16", "--members", str(path)])
        assert code == 0
        assert out.strip() == "members=0"

    def test_json(self, capsys, tmp_path):
        path = tmp_path / "members.txt"
        path.write_text(F1_TEXT + "\n" + F1_TEXT + "\n")
        code, out, _ = _run(capsys, ["analyze", "--field", "16", "--members", str(path),
                                     "--format", "json", "--threads", "1"])
        assert code == 0
        data = json.loads(out)
        assert data["members"] == 1
        assert data["weights"] == {"5": 1}

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = _run(capsys, ["analyze", "--field", "16", "--members", str(tmp_path / "nope.txt")])
        assert code == 1


class TestVerify:

    def test_single_case(self, capsys):
        code, out, _ = _run(capsys, ["verify", "--field", "16", "--poly", F1_TEXT, "--k", "12"])
        assert code == 0
        assert out.strip() == "PASS 1/1"

    def test_random_sweep(self, capsys):
        code, out, _ = _run(capsys, ["verify", "--random", "5", "--seed", "1"])
        assert code == 0
        assert out.strip() == "PASS 5/5"

    def test_corrupted_oracle_fails(self, capsys):
        def wrong(f, k):
            return Poly.x(f.field)

        code, out, _ = _run(capsys, ["verify", "--random", "3", "--seed", "1"], oracle=wrong)
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == "FAIL 0/3"
        assert len(lines) == 4

    def test_run_verify(self):
        f5 = prime_field(5)
        cases = [(Poly(f5, (3, 1)), 2), (Poly(f5, (2, 1, 1)), 4)]
        assert run_verify(cases) == []


class TestOrder:

    def test_primitive(self, capsys):
        code, out, _ = _run(capsys, ["order", "--field", "3", "--poly", "x^2+x+2"])
        assert code == 0
        assert out.splitlines() == ["order=8", "factorization=2^3", "primitive=yes"]

    def test_reducible(self, capsys):
        code, _, _ = _run(capsys, ["order", "--field", "5", "--poly", "x^2+4"])
        assert code == 2


class TestConfigLayering:

    def test_json_layer(self, capsys, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"field": "16", "construct": {"poly": F1_TEXT, "k": 3}}))
        code, out, _ = _run(capsys, ["construct", "--config", str(path)])
        assert code == 0
        f16 = field_from_q(16)
        assert out.splitlines()[0] == format_poly(min_poly_power(parse_poly(f16, F1_TEXT), 3))

    def test_flags_override_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"field": "16", "poly": F1_TEXT, "k": 3, "format": "json"}))
        args = build_parser().parse_args(["construct", "--config", str(path), "--k", "5"])
        config = resolve_config(args)
        assert config["k"] == 5
        assert config["format"] == "json"
        assert config["method"] == "general"

    def test_env_config_path(self, tmp_path, monkeypatch):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"iterate": {"prime": 7}}))
        monkeypatch.setenv("IRREDFORGE_CONFIG", str(path))
        args = build_parser().parse_args(["iterate", "--field", "8", "--poly", "x+1"])
        assert resolve_config(args)["prime"] == 7

    def test_missing_config_file(self, capsys, tmp_path):
        code, _, err = _run(capsys, ["order", "--config", str(tmp_path / "nope.json")])
        assert code == 2
        assert "not found" in err

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit):
            main(["frobnicate"])
