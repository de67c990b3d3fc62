import io
import subprocess
import sys

import pytest

from tpack.cli import ParseError, main, parse_graft

TRIANGLE = "# triangle\nt a b c\ne a b\ne b c\ne a c\n"
HEAVY = "t a b\n" + "e a u\n" * 4 + "e u b\ne u b\n"
ODD = "t a b c\ne a v\ne b v\ne c v\n"


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (("g1", TRIANGLE), ("g10", HEAVY), ("g3", ODD)):
        p = tmp_path / name
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_parse_interns_in_order():
    ng = parse_graft("t b a\ne a x\ne x b\n")
    assert ng.names == ["b", "a", "x"]
    assert ng.graft.terminals == {0, 1}
    assert ng.graft.edges == {0: (1, 2), 1: (2, 0)}


@pytest.mark.parametrize("text, lineno", [
    ("e a b\nt a b\n", 1),
    ("t a b\ne a a\n", 2),
    ("t a b\nt a\n", 2),
    ("t a\n", 1),
    ("t a b\nq x\n", 2),
    ("t a b\ne a\n", 2),
])
def test_parse_errors_carry_line(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_graft(text)
    assert exc.value.lineno == lineno


def test_check(files):
    code, out, _ = run(["check", files["g3"]])
    assert code == 0
    assert "inner_eulerian no" in out and "odd_vertex v" in out


def test_minimax(files):
    assert run(["minimax", files["g1"]])[:2] == (0, "3\n")


def test_certify_triangle(files):
    code, out, _ = run(["certify", files["g1"]])
    assert code == 0
    lines = out.splitlines()
    assert sum(l.startswith("path ") for l in lines) == 3
    assert sum(l.startswith("cut ") for l in lines) == 3
    assert "cut a : 0 2" in lines


def test_pack_unlinkable_names_terminal(files):
    code, out, err = run(["pack", files["g10"]])
    assert code == 1 and out == ""
    assert "LinkabilityFails" in err and " a " in err


def test_pack_odd(files):
    code, _, err = run(["pack", files["g3"]])
    assert code == 1 and "NotInnerEulerian" in err


def test_verify_round_trip(files, tmp_path):
    sol = tmp_path / "sol"
    sol.write_text(run(["certify", files["g1"]])[1])
    assert run(["verify", files["g1"], str(sol)])[:2] == (0, "ok\n")
    sol.write_text(sol.read_text().replace("cut a : 0 2", "cut a : 0"))
    code, out, _ = run(["verify", files["g1"], str(sol)])
    assert code == 1 and "CutNotSeparating" in out


def test_verify_bad_path_line(files, tmp_path):
    sol = tmp_path / "sol"
    sol.write_text("path a b : 1\n")
    code, out, _ = run(["verify", files["g1"], str(sol)])
    assert code == 1 and "NotTPath" in out


def test_oracle(files):
    code, out, _ = run(["oracle", files["g10"]])
    assert code == 0 and out.startswith("count 2\n")
    code, _, err = run(["oracle", files["g1"], "--cap", "1"])
    assert code == 1 and "CapExceeded" in err


def test_io_and_usage_errors(tmp_path):
    assert run(["check", str(tmp_path / "missing")])[0] == 2
    bad = tmp_path / "bad"
    bad.write_text("e a b\n")
    code, _, err = run(["check", str(bad)])
    assert code == 2 and "line 1" in err
    assert run([])[0] == 2
    assert run(["gen", "--seed", "1", "--vertices", "2", "--terminals", "3",
                "--cycles", "0", "--tpaths", "1"])[0] == 2


def test_gen_output_file_parses(tmp_path):
    out = tmp_path / "g"
    args = ["gen", "--seed", "3", "--vertices", "8", "--terminals", "3", "--cycles", "2",
            "--tpaths", "3", "-o", str(out)]
    assert run(args)[0] == 0
    ng = parse_graft(out.read_text())
    assert len(ng.graft.terminals) == 3


def test_module_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "tpack", "minimax", files["g1"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "3\n"
