"""Command-line interface: subcommand behavior, JSON output, exit codes,
and byte-stable reports."""

import json

import pytest

from torsionlab.cli import main
from torsionlab.modules import moore_module, save_module


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestNormalize:
    def test_text(self, capsys):
        code, out = run(capsys, "--prime", "3", "normalize", "P^3 P^3 P^3")
        assert code == 0
        assert out.strip() == "2 P^8 P^1 + 2 P^7 P^2"

    def test_json(self, capsys):
        code, out = run(capsys, "--prime", "2", "--json", "normalize", "Sq^2 Sq^2")
        payload = json.loads(out)
        assert payload["normal_form"] == "Sq^3 Sq^1"


class TestOracleCheck:
    def test_equal_pair(self, capsys):
        code, out = run(
            capsys, "--prime", "3", "oracle-check",
            "P^3 P^3 P^3", "(P^7 P^1 - P^8) P^1",
        )
        assert code == 0
        assert out.startswith("EQUAL")

    def test_unequal_pair_nonzero_exit(self, capsys):
        code, out = run(capsys, "--prime", "2", "oracle-check", "Sq^2", "Sq^1 Sq^1")
        assert code == 1
        assert out.startswith("DIFFERENT")


class TestBasis:
    def test_degree_three(self, capsys):
        code, out = run(capsys, "basis", "3")
        assert code == 0
        assert out.splitlines() == ["Sq^3", "Sq^2 Sq^1"]


class TestModuleCommands:
    @pytest.fixture()
    def moore_file(self, tmp_path):
        path = tmp_path / "m2.json"
        save_module(moore_module(2), str(path))
        return str(path)

    def test_tensor_and_check(self, capsys, tmp_path, moore_file):
        out_path = str(tmp_path / "square.json")
        code, out = run(
            capsys, "module", "tensor", moore_file, moore_file, "-o", out_path
        )
        assert code == 0
        code, out = run(capsys, "module", "check", out_path)
        assert code == 0
        assert "violated relation classes: none" in out

    def test_decompose(self, capsys, moore_file):
        code, out = run(capsys, "module", "decompose", moore_file)
        assert code == 0
        assert "decomposable: False" in out


class TestStemsCommands:
    def test_pi_plain(self, capsys):
        code, out = run(capsys, "pi", "3")
        assert code == 0
        assert "Z/24" in out

    def test_pi_moore(self, capsys):
        code, out = run(capsys, "pi", "1", "--moore", "2")
        assert code == 0
        assert "Z/2" in out

    def test_pi_unknown_exit(self, capsys):
        code, out = run(capsys, "pi", "50")
        assert code == 1

    def test_endo(self, capsys):
        code, out = run(capsys, "endo", "2")
        assert code == 0
        assert "Z/4" in out

    def test_associator(self, capsys):
        code, out = run(capsys, "associator", "35")
        assert code == 0
        assert "associative" in out

    def test_stems_file_extension(self, capsys, tmp_path):
        extra = tmp_path / "extra.json"
        extra.write_text(json.dumps([{"dimension": 8, "factors": [2, 2]}]))
        code, out = run(capsys, "--stems-file", str(extra), "pi", "8")
        assert code == 0
        assert "Z/2 + Z/2" in out


class TestExoticCommands:
    def test_verify(self, capsys):
        code, out = run(capsys, "exotic", "verify", "--max-rank", "2")
        assert code == 0
        assert "PASS" in out

    def test_two_order(self, capsys):
        code, out = run(capsys, "exotic", "two-order")
        assert code == 0
        assert "certificate: PASS" in out


class TestScenarios:
    @pytest.mark.parametrize("name", ["prop2", "prop3", "prop5", "prop6", "exotic"])
    def test_each_scenario_passes(self, capsys, name):
        code, out = run(capsys, "scenario", name)
        assert code == 0
        assert f"scenario" in out and "PASS" in out

    def test_prop3_with_n(self, capsys):
        code, out = run(capsys, "scenario", "prop3", "--n", "15")
        assert code == 0
        assert "Z/15" in out

    def test_all_deterministic(self, capsys):
        code1, out1 = run(capsys, "scenario", "all")
        code2, out2 = run(capsys, "scenario", "all")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_json_structure(self, capsys):
        code, out = run(capsys, "--json", "scenario", "prop2")
        payload = json.loads(out)
        assert payload[0]["scenario"] == "prop2"
        assert payload[0]["passed"] is True
        assert all(step["passed"] for step in payload[0]["steps"])
