import json
import os
import subprocess
import sys

import pytest

from reflexdga import cli
from reflexdga.algebra import validate_dga
from reflexdga.catalogue import catalogue, expected_results, find_entry
from reflexdga.errors import InvariantViolation, ParseError
from reflexdga.io import digest, parse_algebra, parse_document, read_document, serialize_algebra
from reflexdga.linalg import FieldSpec

HERE = os.path.dirname(__file__)
GOLDEN = os.path.join(HERE, "golden")

# (golden file name, argv)
GOLDEN_RUNS = [
    ("hh_dual1.json", ["hh", "--max-weight", "6", "--degrees", "-2..4", "dual_numbers_deg1", "--json"]),
    ("hh_dual1.txt", ["hh", "--max-weight", "6", "--degrees", "-2..4", "dual_numbers_deg1"]),
    ("tor_dual1.json", ["tor-kk", "--max-weight", "6", "dual_numbers_deg1", "--json"]),
    ("reflexivity_dual1.json", ["reflexivity", "dual_numbers_deg1", "--json"]),
    ("radical_a2.txt", ["radical", "a2_path_algebra"]),
    ("koszul_dual0.json", ["koszul-dual", "--max-weight", "4", "dual_numbers_deg0", "--json"]),
    ("selftest.json", ["monoidal-selftest", "--trials", "10", "--seed", "3", "--json"]),
]

GOOD = """# comment
field Q
basis 1 0
basis x 1
unit 1
mult x x = 0
"""


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_and_auto_unit():
    a = parse_algebra(GOOD)
    assert a.dim == 2 and validate_dga(a).ok
    assert a.mul({1: 1}, {0: 1}) == {1: 1}


@pytest.mark.parametrize("text, needle", [
    ("field Q\nbasis x 0\n", "unit"),
    ("field Q\nbasis 1 0\nunit 1\nmult 1 y = 1\n", "y"),
    ("field Q\nbasis 1 0\nbasis 1 0\nunit 1\n", "duplicate"),
    ("field Fp 2\nbasis 1 0\nbasis x 0\nunit 1\nmult x x = 1/2 x\n", "F_2"),
    ("field Q\nbasis 1 zero\n", "line 2"),
    ("field R\n", "field"),
])
def test_parse_errors(text, needle):
    with pytest.raises(ParseError) as e:
        parse_algebra(text)
    assert needle in str(e.value)


@pytest.mark.parametrize("name", catalogue().names())
def test_round_trip(name):
    doc = read_document(find_entry(name).path)
    text = serialize_algebra(doc.algebra)
    again = parse_algebra(text, label=name)
    assert serialize_algebra(again) == text
    assert again.degrees == doc.algebra.degrees


def test_field_override():
    a = parse_document(GOOD, FieldSpec.prime(5)).algebra
    assert a.field.characteristic == 5


@pytest.mark.parametrize("name", catalogue().names())
def test_expected_results(name):
    with open(catalogue().expected_path, encoding="utf-8") as fh:
        expected = json.load(fh)
    assert json.loads(json.dumps(expected_results(name))) == expected[name]


def test_catalogue_digest():
    cat = catalogue()
    with open(cat.expected_path, "rb") as fh:
        assert cat.expected_digest == "sha256:" + __import__("hashlib").sha256(fh.read()).hexdigest()
    assert {"dual_numbers_deg1", "poly_t_deg1_truncated", "m2_dual_numbers_deg0"} <= set(cat.names())
    for e in cat.entries:
        with open(e.path, encoding="utf-8") as fh:
            assert digest(fh.read()) == e.digest


@pytest.mark.parametrize("golden, argv", GOLDEN_RUNS, ids=[g for g, _ in GOLDEN_RUNS])
def test_golden_reports(golden, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    with open(os.path.join(GOLDEN, golden), encoding="utf-8") as fh:
        assert out == fh.read()


@pytest.mark.parametrize("command", [c for c in cli.COMMANDS if c != "catalogue"])
def test_every_command_runs_and_is_deterministic(command, capsys):
    argv = [command, "--max-weight", "3", "--trials", "5"]
    if command != "monoidal-selftest":
        argv.append("dual_numbers_deg0")
    first = run(argv + ["--json"], capsys)
    second = run(argv + ["--json"], capsys)
    assert first[0] == 0 and first == second
    doc = json.loads(first[1])
    assert list(doc) == ["tool", "version", "command", "input", "params", "result"]
    assert doc["command"] == command


def test_catalogue_command(capsys):
    code, out, _ = run(["catalogue", "--json"], capsys)
    doc = json.loads(out)["result"]
    assert code == 0
    assert [e["name"] for e in doc["entries"]] == catalogue().names()
    assert doc["expected_digest"] == catalogue().expected_digest


def test_exit_codes(tmp_path, capsys, monkeypatch):
    bad = tmp_path / "bad.alg"
    bad.write_text("field Q\nbasis 1 0\nunit 1\nmult 1 1 = 1 +\n")
    assert run(["cohomology", str(bad)], capsys)[0] == 2
    invalid = tmp_path / "invalid.alg"
    invalid.write_text("field Q\nbasis 1 0\nbasis x 1\nunit 1\ndiff x = x\n")
    assert run(["validate", str(invalid)], capsys)[0] == 3
    assert run(["hh", str(invalid)], capsys)[0] == 3
    assert run(["hh", str(tmp_path / "missing.alg")], capsys)[0] == 3
    assert run(["tor-kk", "a2_path_algebra"], capsys)[0] == 3

    def broken(args):
        raise InvariantViolation("d^2 != 0 in a constructed complex")
    monkeypatch.setitem(cli.HANDLERS, "cohomology", broken)
    code, _, err = run(["cohomology", "ground_field"], capsys)
    assert code == 4 and "invariant" in err


def test_usage_errors(capsys):
    code, _, err = run(["frobnicate", "x"], capsys)
    assert code == 64 and "usage" in err
    assert run([], capsys)[0] == 64
    assert run(["hh"], capsys)[0] == 64
    assert run(["hh", "--degrees", "4..-2", "ground_field"], capsys)[0] == 64
    assert run(["--help"], capsys)[0] == 0


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(["cohomology", "dual_numbers_deg1", "--json", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "reflexdga", "cohomology", "contractible"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "command: cohomology" in proc.stdout


if __name__ == "__main__":
    # regenerate golden reports after an intentional output change
    import contextlib
    import io
    for name, argv in GOLDEN_RUNS:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            assert cli.main(argv) == 0
        with open(os.path.join(GOLDEN, name), "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
