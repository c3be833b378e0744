import json
import subprocess
import sys

import pytest

from sliceword.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_classify(capsys):
    code, data = run_json(capsys, "classify", "ab", "ba")
    assert code == 0 and data["fired"] == "A_dihedral" and data["w"] == "BAba"


def test_classify_text_and_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "classify", "baba", "abab", "--format", "text")
    assert code == 0 and "fired: B_quaternionic" in out


def test_classify_aut_depth(capsys):
    code, data = run_json(capsys, "classify", "aab", "baa", "--aut-depth", "1")
    assert code == 0 and data["aut_probe"]["automorphism"] == ["swap"]


@pytest.mark.parametrize("argv", [("classify", "ab", "ab"), ("classify", "ab", "aab"), ("classify", "abx", "ba"),
                                  ("witness", "baba", "abab", "--criterion", "a"), ("metabelian", "ab")])
def test_precondition_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_invariants(capsys):
    code, data = run_json(capsys, "invariants", "baab", "aabb")
    assert code == 0
    assert data["single_row"] == {"P": "", "Q": "b", "d": 2, "epsilon": 1}
    assert data["invariants"]["delta0"] == 2


def test_metabelian(capsys):
    code, data = run_json(capsys, "metabelian", "BAba")
    assert data["metabelian"] == "1*T^-1*S^-1"
    code, data = run_json(capsys, "metabelian", "abba", "baab")
    assert code == 0 and data["routes_agree"]


def test_slice_trace_grid(capsys):
    code, data = run_json(capsys, "slice-trace", "BAba", "--theta", "0.5", "1.0", "--t", "0", "0.2")
    assert code == 0 and len(data["grid"]) == 4
    assert data["grid"][0]["trace"] == pytest.approx(2.0)


def test_witness(capsys):
    code, data = run_json(capsys, "witness", "ab", "ba", "--criterion", "e")
    assert code == 0 and data["criterion"] == "E_sieve" and data["witness"]["residual"] <= 1e-9
    code, data = run_json(capsys, "witness", "aabb", "bbaa")
    assert data["witness"] is None and data["super_degenerate"]


def test_sample(capsys, tmp_path):
    out = tmp_path / "s.json"
    code, _, _ = run(capsys, "sample", "--na", "3", "--nb", "3", "--samples", "50", "--criteria", "a,b", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == 0 and data["config"]["criteria"] == ["A_dihedral", "B_quaternionic"]
    assert sum(data["stats"]["first_fired"].values()) == 50


def test_verify(capsys):
    code, data = run_json(capsys, "verify", "--words", "5", "--maxlen", "8")
    assert code == 0 and data["pass"]
    code, data = run_json(capsys, "verify", "--words", "5", "--maxlen", "8", "--fault", "mixed")
    assert code == 3 and not data["pass"]


def test_obstruction(capsys):
    code, data = run_json(capsys, "obstruction")
    assert code == 0 and data["pass"]


@pytest.mark.parametrize("spec", ["minus_identity.json", "cyclic4.json", "q8_and_2t.json"])
def test_collide_bundled(capsys, spec):
    code, data = run_json(capsys, "collide", "--spec", spec)
    assert code == 0 and data["pass"]


def test_console_module():
    proc = subprocess.run([sys.executable, "-m", "sliceword", "classify", "ab", "ba"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["fired"] == "A_dihedral"
