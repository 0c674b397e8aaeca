import io
import json

import pytest

from gf5lat.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), stream=out)
    return code, out.getvalue()


def test_code_build_json():
    code, text = run("code", "build", "(2)", "--json")
    assert code == EXIT_OK
    assert json.loads(text) == {"code": "(2)", "n": 2, "k": 1, "self_dual": True}


def test_code_minweight_and_puncture():
    code, text = run("code", "minweight", "(1,2,3,4)")
    assert code == EXIT_OK and text.startswith("d=")
    code, text = run("code", "puncture", "(2)", "(0)", "--expect-d", "1")
    assert code == EXIT_OK and text.count("coordinate") == 4


def test_lattice_commands_on_small_code():
    code, text = run("lattice", "shadow", "(2)")
    assert code == EXIT_OK and "shadow_min=1/2" in text
    code, text = run("lattice", "fromcode", "(2)")
    assert code == EXIT_OK and text.splitlines()[0] == "2 5"
    code, text = run("lattice", "neighbors", "(2)", "(0)", "--json")
    assert code == EXIT_OK and len(text.splitlines()) == 2
    code, text = run("lattice", "isom", "(2)", "(0)", "--with-neighbor", "N1")
    assert code == EXIT_OK and "isometric" in text


def test_lattice_inv_from_table():
    code, text = run("lattice", "inv", "--table", "t8", "--index", "1")
    assert code == EXIT_OK
    assert text.strip() == "inv0=128961854 inv1=83451648"


def test_not_self_dual_is_a_mismatch():
    code, text = run("lattice", "kissing", "(1)")
    assert code == EXIT_MISMATCH and "not self-dual" in text


def test_theta_check_symbolic():
    code, text = run("theta", "check", "--n", "44")
    assert code == EXIT_OK
    assert "(811008 - 128α - 65536β)q^5" in text


def test_verify_table_rows():
    code, text = run("verify", "table", "t8", "--rows", "2", "--skip-min-weight")
    assert code == EXIT_OK and text.startswith("PASS t8 row 2")


def test_search_json_lines():
    code, text = run("search", "--family", "qt", "--n", "8", "--budget", "20", "--seed", "4",
                     "--target-kissing", "16", "--json")
    assert code == EXIT_OK
    records = [json.loads(line) for line in text.splitlines()]
    assert records[-1]["type"] == "summary" and records[-1]["trials_run"] == 20


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["code", "build"],
    ["code", "build", "(12x)"],
    ["code", "build", "--table", "t8"],
    ["code", "build", "--table", "t9", "--index", "1"],
    ["code", "build", "(12)", "--family", "four"],
    ["verify", "table", "t1"],
    ["verify", "table", "t8", "--rows", "0-3"],
    ["search", "--family", "qt", "--n", "37"],
    ["theta", "check", "--n", "12"],
    ["lattice", "neighbors", "(2)"],
    ["lattice", "isom", "(2)"],
])
def test_usage_errors(argv, capsys):
    assert main(argv, stream=io.StringIO()) == EXIT_USAGE
