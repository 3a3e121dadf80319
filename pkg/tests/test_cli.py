import json
import subprocess
import sys
from pathlib import Path

import pytest

from nilhecke.cli import main, run

ROOT = Path(__file__).resolve().parent.parent
SYSTEMS = ROOT / "systems"
FIGURES = ROOT / "src" / "nilhecke" / "figures"


def call(*argv):
    code, out = run([str(a) for a in argv])
    return code, (json.loads(out) if out.strip() else None)


class TestExamples:
    def test_dim_f4(self):
        code, out = run(["dim", "--system", str(SYSTEMS / "f4_k4.json")])
        assert code == 0
        assert out.strip() == '{"dimension": 304, "status": "complete"}'

    def test_verify_g29(self):
        code, out = call("verify-module", "--system", SYSTEMS / "g29_k3.json", "--module", FIGURES / "g29.json")
        assert code == 0 and out == {"relations_ok": True, "is_witness": True}

    def test_multiply_zero(self):
        code, out = call("multiply", "--system", SYSTEMS / "a2_inf.json", "--left", "1 2 1", "--right", "1")
        assert code == 0 and out == {"result": "zero"}


class TestCommands:
    def test_multiply_nonzero(self):
        code, out = call("multiply", "--system", SYSTEMS / "a2_inf.json", "--left", "1 2", "--right", "1")
        assert code == 0 and out["result"] == [1, 2, 1]

    def test_classify(self):
        code, out = call("classify", "--system", SYSTEMS / "a3_d322_k3.json")
        assert code == 0 and out["verdict"] == "finite" and out["dim"] == 27

    def test_classify_infinite(self):
        code, out = call("classify", "--type", "E9", "--k", "4")
        assert out["verdict"] == "infinite"

    def test_dim_words_backend(self):
        code, out = call("dim", "--type", "A3", "--d", "3,2,2", "--k", "3", "--backend", "words")
        assert code == 0 and out["dimension"] == 27

    def test_dim_crosscheck(self):
        code, out = call("dim", "--system", SYSTEMS / "h4_k4.json", "--crosscheck")
        assert out["backends"] == {"group": 1460, "words": 1460}

    def test_basis(self):
        code, out = call("basis", "--system", SYSTEMS / "a2_inf.json")
        assert [c["canonical"] for c in out["classes"]] == [[], [1], [2], [1, 2], [2, 1], [1, 2, 1]]

    def test_nilpotency(self):
        code, out = call("nilpotency", "--type", "I2(5)", "--k", "2")
        assert out["nilpotency_index"] == 5

    def test_primitives(self):
        code, out = call("primitives", "--type", "A1", "--d", "4")
        assert out["two_sided"] == 1 and out["primitive_monomials"] == [[1, 1, 1]]

    def test_frobenius(self):
        code, out = call("frobenius", "--type", "A2", "--k", "3")
        assert out["frobenius"] is False and out["agree"] is True

    def test_fc_count(self):
        assert call("fc-count", "--type", "A4")[1] == {"fc_count": 42}

    def test_signed_count(self):
        code, out = call("signed-count", "--n", "5")
        assert out["count"] == out["formula"] == 1546

    def test_regress_subset(self):
        code, out = call("regress", "--only", "2,4")
        assert code == 0 and out["passed"] is True


class TestErrors:
    def test_missing_file(self, tmp_path):
        code, _ = run(["dim", "--system", str(tmp_path / "nope.json")])
        assert code == 2

    def test_invalid_json(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{")
        assert run(["dim", "--system", str(bad)])[0] == 2

    def test_unknown_subcommand(self):
        assert run(["frobnicate"])[0] == 2

    def test_bad_word(self):
        assert run(["multiply", "--system", str(SYSTEMS / "a2_inf.json"), "--left", "1,2", "--right", "1"])[0] == 2

    def test_budget_exit(self):
        code, out = run(["dim", "--type", "A2", "--k", "3", "--budget-max-word-length", "1"])
        assert code == 3
        assert json.loads(out)["status"] == "budget_exceeded"

    def test_infinite_dim_hits_budget(self, tmp_path):
        path = tmp_path / "free.json"
        path.write_text(json.dumps({"coxeter": {"matrix": [[1, "infinity"], ["infinity", 1]]},
                                    "truncation": {"k": "infinity"}}))
        code, out = run(["dim", "--system", str(path), "--budget-max-word-length", "20"])
        body = json.loads(out)
        assert code == 3
        assert body["status"] == "budget_exceeded" and body["partial_count"] == 41

    def test_thread_cap(self, monkeypatch):
        monkeypatch.setenv("NILHECKE_THREADS", "0")
        assert run(["fc-count", "--type", "A2"])[0] == 2


def test_byte_identical_output():
    argv = ["basis", "--system", str(SYSTEMS / "h4_k4.json")]
    first = subprocess.run([sys.executable, "-m", "nilhecke", *argv], capture_output=True, check=True).stdout
    second = subprocess.run([sys.executable, "-m", "nilhecke", *argv], capture_output=True, check=True).stdout
    assert first == second and len(first) > 1000


def test_main_returns_code(capsys):
    assert main(["fc-count", "--type", "I2(7)"]) == 0
    assert json.loads(capsys.readouterr().out) == {"fc_count": 13}
