import json
import subprocess
import sys

import pytest

from conftest import DATA, FIXTURES, load_pres
from peiffer.cli import RunConfig, main, run_command
from peiffer.functors import verify_sequences
from peiffer.lambda_map import lambda3
from peiffer.oracle import lcs_degree, shadow_of_I3
from peiffer.sequences import parse_sequence
from peiffer.words import format_word
from peiffer.wu import sphere_generator_word, wu_bracket_generators

WU = str(DATA / "wu-n2.pres")
GEN = str(DATA / "wu-gen.seq")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_lambda3_prints_generator(capsys):
    assert run(capsys, "lambda3", WU, GEN) == (0, "[x1,x2]", "")


def test_gamma_degree(capsys):
    assert run(capsys, "gamma-degree", "[x1,x2,x1]", "--deg", "5")[:2] == (0, "3")
    assert run(capsys, "gamma-degree", "[x1,x2,x1]", "--deg", "2")[:2] == (0, "exceeds d")


def test_fuzz_peiffer_passes(capsys):
    code, out, _ = run(capsys, "fuzz-peiffer", WU, "--count", "200", "--moves", "10", "--p", "2", "--deg", "3",
                       "--seed", "42")
    assert code == 0 and out.startswith("200/200 passed")


def test_fuzz_two_class(capsys):
    code, out, _ = run(capsys, "fuzz-peiffer", str(DATA / "sphere-n2.pres"), "--count", "50", "--p", "3")
    assert code == 0


def test_json_is_byte_identical(capsys):
    args = ("fuzz-peiffer", WU, "--count", "20", "--seed", "5", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and json.loads(a)["schema"] == 1


def test_shadow_json_matches_fixture(capsys):
    code, out, _ = run(capsys, "shadow", WU, "--p", "2", "--deg", "3", "--word", "commutator=[x1,x2]", "--json")
    assert code == 0
    assert out + "\n" == (FIXTURES / "wu_n2_shadow_p2_d3.json").read_text()


def test_adapters_agree_with_library(capsys, wu_pres):
    seq = parse_sequence(open(GEN).read(), wu_pres)
    _, out, _ = run(capsys, "lambda3", WU, GEN, "--json")
    assert json.loads(out)["representative"] == format_word(lambda3(seq).representative)
    _, out, _ = run(capsys, "wu-gens", "--n", "2", "--max-len", "4", "--json")
    assert json.loads(out)["words"] == [format_word(w) for w in wu_bracket_generators(2, 4)]
    _, out, _ = run(capsys, "sphere-gen", "--k", "5")
    assert out == format_word(sphere_generator_word(5))
    _, out, _ = run(capsys, "functors", "--rank", "4", "--json")
    data = json.loads(out)
    data.pop("command")
    assert data == verify_sequences(4).to_dict()
    _, out, _ = run(capsys, "gamma-degree", "[x1,x2]", "--deg", "4", "--json")
    assert json.loads(out)["degree"] == lcs_degree(wu_pres.word("[x1,x2]"), 4)


def test_congruent_exit_codes(capsys):
    assert run(capsys, "congruent", WU, "[x1,x2]", "[x1,x2]")[0] == 0
    assert run(capsys, "congruent", WU, "[x1,x2]", "1")[0] == 1


def test_check_seq(capsys, tmp_path):
    assert run(capsys, "check-seq", WU, GEN)[:2] == (0, "valid")
    bad = tmp_path / "bad.seq"
    bad.write_text("seq {\n  (1:1 + @ e)\n}\n")
    assert run(capsys, "check-seq", WU, str(bad))[:2] == (1, "invalid")


def test_blocks_and_cross_effect(capsys):
    code, out, _ = run(capsys, "blocks", WU, GEN)
    assert code == 0 and "r_c = x1" in out and "t_c = x2^-1 x1^-1" in out
    code, out, _ = run(capsys, "cross-effect", WU, GEN, GEN)
    assert code == 0 and out


def test_lambda2(capsys, tmp_path):
    s = tmp_path / "s.seq"
    s.write_text("seq {\n  (1:1 + @ e)\n  (2:1 + @ e)\n}\n")
    assert run(capsys, "lambda2", str(DATA / "sphere-n2.pres"), str(s))[:2] == (0, "x")


def test_misc_commands(capsys):
    assert run(capsys, "reduce", "x1 x2 x2^-1")[:2] == (0, "x1")
    assert run(capsys, "magnus", "[x1,x2]", "--deg", "2")[1] == "1 + X_x1*X_x2 - X_x2*X_x1"
    code, out, _ = run(capsys, "wu-presentation", "--n", "2", "--gens", "x1,x2")
    assert code == 0 and out.splitlines()[-1] == "class: x2^-1 x1^-1"
    assert run(capsys, "--backend")[0] == 0


@pytest.mark.parametrize("argv", [
    ("shadow", WU, "--p", "4"),
    ("lambda3", str(DATA / "sphere-n2.pres"), GEN),
    ("lambda3", "missing.pres", GEN),
    ("functors", "--rank", "9"),
    ("gamma-degree", "[x1,", "--deg", "3"),
    ("wu-gens", "--n", "2", "--max-len", "2"),
    ("sphere-gen", "--k", "7"),
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_unknown_generator_in_file(capsys, tmp_path):
    p = tmp_path / "bad.pres"
    p.write_text("gens: x1\nclass: x1\nclass: x2\n")
    code, _, err = run(capsys, "shadow", str(p))
    assert code == 2 and "line 3" in err


def test_usage_error_exit_2():
    out = subprocess.run([sys.executable, "-m", "peiffer", "lambda3"], capture_output=True, text=True)
    assert out.returncode == 2
    out = subprocess.run([sys.executable, "-m", "peiffer"], capture_output=True, text=True)
    assert out.returncode == 2


def test_run_command_direct():
    code, text = run_command(RunConfig("gamma-degree", ["[x1,x2,x1]"], d=5))
    assert (code, text) == (0, "3")
