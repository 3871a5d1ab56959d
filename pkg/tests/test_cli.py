"""Tests for the qheis command-line tool."""

import json

import pytest

from app.tools.qheis import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def run_json(capsys, *argv):
    code = run(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


class TestExitCodes:
    def test_verify_passes(self, capsys):
        assert run(["--q", "2", "verify", "A", "A^2"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("PASS")

    def test_non_commuting(self, capsys):
        assert run(["--q", "2", "commutes", "A", "B*A"]) == EXIT_FAIL
        assert "non-commuting" in capsys.readouterr().out

    def test_verify_non_commuting(self, capsys):
        assert run(["--q", "2", "verify", "A", "B*A"]) == EXIT_FAIL

    @pytest.mark.parametrize("q_text", ["0", "-1", "abc"])
    def test_bad_q(self, capsys, q_text):
        assert run(["--q", q_text, "normalize", "A"]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_parse_error(self, capsys):
        assert run(["--q", "2", "normalize", "A +"]) == EXIT_USAGE
        assert "position" in capsys.readouterr().err

    @pytest.mark.parametrize("alpha", ["1/0", "0"])
    def test_laurent_demo_bad_alpha(self, capsys, alpha):
        assert run(["--q", "2", "laurent-demo", "--alpha", alpha]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == EXIT_USAGE

    def test_symbolic_kernel_dim(self, capsys):
        code, data = run_json(capsys, "--q", "symbolic", "kernel-dim", "B^2*A + A")
        assert code == EXIT_OK
        assert data == {"dim": None, "bounds": [2, 3]}


class TestCommands:
    def test_normalize(self, capsys):
        assert run(["--q", "2", "normalize", "A*B"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "2*B*A + 1"

    def test_curves_json(self, capsys):
        code, data = run_json(capsys, "--q", "symbolic", "curves", "B*A", "(B*A)^2")
        assert code == EXIT_OK
        assert (data["s"], data["t"]) == (4, 1)

    def test_element_json_input(self, capsys):
        _, element = run_json(capsys, "--q", "2", "normalize", "B*A")
        assert run(["--q", "2", "normalize", json.dumps(element)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "B*A"

    def test_element_json_wrong_q(self, capsys):
        _, element = run_json(capsys, "--q", "2", "normalize", "B*A")
        assert run(["--q", "3", "normalize", json.dumps(element)]) == EXIT_USAGE

    def test_pair(self, capsys):
        assert run(["--q", "2", "pair", "A", "T", "T^2"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines() == ["P = A", "Q = A^2"]

    def test_kernel_dim(self, capsys):
        code, data = run_json(capsys, "--q", "2", "kernel-dim", "A - 1")
        assert code == EXIT_OK
        assert data["dim"] == 1

    def test_spectrum(self, capsys):
        code, data = run_json(capsys, "--q", "2", "spectrum", "B*A", "--count", "3")
        assert code == EXIT_OK
        assert data["eigenvalues"] == ["0", "1", "3"]

    def test_laurent_demo(self, capsys):
        code, data = run_json(
            capsys, "--q", "2", "laurent-demo", "--alpha", "2", "--s", "2", "--element", "(B - 1)*A"
        )
        assert code == EXIT_OK
        assert len(data["windows"]) == 2
        assert all(data["checks"].values())

    def test_lpd(self, capsys):
        code, data = run_json(capsys, "--q", "2", "lpd", "--roots", "1,2", "--m", "1", "--d", "1")
        assert code == EXIT_OK
        assert data["dimension"] == 3
        assert data["maximal"] == ["1"]

    @pytest.mark.slow
    def test_corpus(self, capsys):
        code, data = run_json(capsys, "--q", "2", "corpus", "--count", "3", "--seed", "5")
        assert code == EXIT_OK
        assert data["passed"] == 3
