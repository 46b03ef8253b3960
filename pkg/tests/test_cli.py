import json
import subprocess
import sys

import pytest

from hosc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv, code",
    [
        (["subtype", "rec X.?X.X", "rec Y.?Y.?Y.Y"], 0),
        (["subtype", "!int.end", "!real.end"], 1),
        (["equiv", "rec X.!X.end", "!(rec X.!X.end).end"], 0),
        (["comply", "rec x.?(x).1", "--partner", "stdual", "--b", "peer"], 1),
        (["comply", "rec x.?(x).1", "--partner", "dual"], 0),
        (["comply", "!int.1", "?real.1"], 0),
        (["endpoints", "rec X.!X.end", "?(rec X.!X.end).end", "--d", "stdual"], 1),
        (["endpoints", "rec X.!X.end", "?(rec X.!X.end).end", "--d", "dual"], 0),
        (["bisim", "rec x.!int.x", "rec y.!int.y"], 0),
        (["synleq", "!(1).1", "!(1).1", "--b", "empty"], 1),
        (["peerleq", "&[?a:1]", "&[?a:1, ?b:1]"], 0),
        (["peerleq", "&[?a:1, ?b:1]", "&[?a:1]", "--via-types"], 1),
        (["subtype", "?(", "end"], 2),
        (["subtype", "1", "1"], 2),
        (["comply", "1"], 2),
        (["comply", "1", "--b", "nonsense", "--partner", "dual"], 2),
        (["nosuchcommand"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_parse_and_print_round_trip(capsys):
    code, out, _ = run(capsys, "parse", "rec x.?(x).1")
    assert code == 0
    doc = json.loads(out)
    assert doc["lang"] == "contract"
    code, out, _ = run(capsys, "print", json.dumps(doc))
    assert (code, out.strip()) == (0, "rec x.?(x).1")


def test_print_from_file(capsys, tmp_path):
    p = tmp_path / "ast.json"
    p.write_text(json.dumps({"k": "end"}))
    assert run(capsys, "print", f"@{p}", "--lang", "type")[1].strip() == "end"
    assert run(capsys, "print", f"@{p}")[0] == 2


def test_unary_operators(capsys):
    assert run(capsys, "unfold", "rec X.!X.end")[1].strip() == "!(rec X.!X.end).end"
    assert run(capsys, "encode", "+{l1:end}")[1].strip() == "(+)[!l1:1]"
    assert run(capsys, "decode", "rec x.!(x).x")[1].strip() == "rec X.!X.X"
    assert run(capsys, "stdual", "rec x.?(x).1")[1].strip() == "rec x.!(x).1"
    assert run(capsys, "mcl", "rec x.?(x).1")[1].strip() == "rec x.?(rec x.?(x).1).1"
    assert run(capsys, "cplmt", "rec x.rec y.?(y).x")[1].strip() == "rec x.rec y.!(rec y.?(y).x).x"
    assert run(capsys, "dual", "rec X.!X.end")[1].strip() == "rec X.?(rec X.!X.end).end"


def test_comply_reports_trace(capsys):
    code, out, _ = run(capsys, "comply", "rec x.?(x).1", "--partner", "stdual", "--json")
    doc = json.loads(out)
    assert code == 1 and doc["verdict"] is False and doc["counterexample"]


def test_falsify(capsys, tmp_path):
    table = tmp_path / "b.txt"
    table.write_text("1 <= !l.!l.1\n!l.!l.1 <= !l.1\n")
    code, out, _ = run(capsys, "falsify", "!(!l.!l.1).1", "!(1).1", "--b", f"table:{table}", "--json")
    assert code == 0 and json.loads(out)["witness"] == "?((+)[!l:1]).1"
    assert run(capsys, "falsify", "1", "1", "--b", "identity")[0] == 1


def test_lts(capsys):
    code, out, _ = run(capsys, "lts", "rec x.?(x).1")
    assert code == 0 and len(json.loads(out)["states"]) == 3
    assert run(capsys, "lts", "1", "--dot")[1].startswith("digraph")


def test_custom_base(capsys, tmp_path):
    base = tmp_path / "base.txt"
    base.write_text("nat <= int\nint <= real\n")
    assert run(capsys, "subtype", "?nat.end", "?real.end", "--base", str(base))[0] == 0
    assert run(capsys, "subtype", "?nat.end", "?real.end")[0] == 2


def test_gen(capsys):
    a = run(capsys, "gen", "--n", "5", "--seed", "3", "--json")[1]
    b = run(capsys, "gen", "--n", "5", "--seed", "3", "--json")[1]
    assert a == b and len(json.loads(a)) == 5


def test_fullabs(capsys):
    code, out, _ = run(capsys, "fullabs-check", "--n", "30", "--depth", "3", "--json")
    assert code == 0 and json.loads(out)["n_agree"] == 30


def test_repro(capsys):
    code, out, _ = run(capsys, "repro")
    assert code == 0 and "FAIL" not in out
    assert run(capsys, "repro", "nope")[0] == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hosc", "subtype", "end", "end"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "true"
