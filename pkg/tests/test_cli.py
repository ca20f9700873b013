import subprocess
import sys

import pytest

from char2lie.cli import main

BAD_PAIR = """\
field 1 0x3
algebra g
basis p:1 q:1 z:0
bracket p q = z
algebra gstar
basis p*:1 q*:1 z*:0
bracket p* q* = z*
dual g gstar p=p* q=q* z=z*
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def emitted(tmp_path, capsys):
    def emit(name, params=None):
        path = tmp_path / f"{name}.txt"
        argv = ["catalog", "emit", name, "--out", str(path)]
        if params:
            argv += ["--params", params]
        assert run(capsys, *argv)[0] == 0
        return str(path)

    return emit


def test_catalog_list(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    assert out.splitlines()[0].startswith("hei2: ")


def test_emit_then_verify(emitted, capsys):
    code, out, _ = run(capsys, "verify", emitted("hei2"))
    assert code == 0
    assert out.splitlines() == ["CHECK jacobi PASS", "CHECK squaring-jacobi PASS"]


def test_manin_check_passes_and_builds(emitted, capsys, tmp_path):
    path = emitted("hei2-pair", "0,1,0,1")
    code, out, _ = run(capsys, "manin", "check", path)
    assert code == 0 and "FAIL" not in out
    code, _, _ = run(capsys, "manin", "build", path, "--out", str(tmp_path / "h.txt"))
    assert code == 0
    assert run(capsys, "verify", str(tmp_path / "h.txt"))[0] == 0


def test_manin_check_failure_has_witness(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text(BAD_PAIR)
    code, out, _ = run(capsys, "-q", "manin", "check", str(path))
    assert code == 1
    assert out.splitlines() == [
        "CHECK Sq FAIL x=p+q,h=p* -> q",
        "CHECK Sq* FAIL x=p*+q*,h=p -> q*",
        "CHECK Bra FAIL x=p,y=q,f=p* -> q",
        "CHECK g-cond1 FAIL (p,q)",
        "CHECK g-cond2 FAIL x=p+q",
        "CHECK g*-cond1 FAIL (p*,q*)",
        "CHECK g*-cond2 FAIL x=p*+q*",
    ]


def test_input_errors_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "verify", str(tmp_path / "missing.txt"))
    assert code == 2 and err.startswith("error: ")
    bad = tmp_path / "bad.txt"
    bad.write_text("field 1 0x3\nalgebra g\nbasis a:1\nbracket a a = a\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2
    assert err.strip() == f"error: {bad}:4:9: [a,a] must vanish"
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "catalog", "emit")[0] == 2
    assert run(capsys, "catalog", "emit", "nonesuch")[0] == 2


def test_forms_and_figure(emitted, capsys, tmp_path):
    path = emitted("oddpair")
    code, out, _ = run(capsys, "forms", "check", path)
    assert code == 0 and "FAIL" not in out
    png = tmp_path / "B.png"
    code, out, _ = run(capsys, "forms", "classify", path, "--figure", str(png))
    assert code == 0
    assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_deriv_space(emitted, capsys):
    code, out, _ = run(capsys, "deriv", "space", emitted("hei2"), "--parity", "1")
    assert code == 0
    assert out.splitlines()[0] == "DIM 2"


def test_rmatrix_search_and_determinism(emitted, capsys):
    path = emitted("hei2")
    first = run(capsys, "rmatrix", "search", path)
    second = run(capsys, "rmatrix", "search", path, "--workers", "2")
    assert first[0] == 0
    assert first[1].splitlines()[0] == "FOUND 8"
    assert first[1] == second[1]


def test_manin_reduce(emitted, capsys):
    code, out, _ = run(capsys, "manin", "reduce", emitted("hei2-manin", "1,0,0,1"))
    assert code == 0


def test_console_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "char2lie.cli", "catalog", "emit", "hei2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.startswith("field 1 0x3\n")


def test_manin_search(emitted, capsys, tmp_path):
    path = emitted("hei2-manin")
    out_path = tmp_path / "split.txt"
    code, out, _ = run(capsys, "manin", "search", path, "--out", str(out_path))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "FOUND 88" and len(lines) == 89
    assert lines[1].startswith("SPLIT 0 g=[p; q; z] k=[")
    code, out, _ = run(capsys, "manin", "reduce", str(out_path))
    assert (code, out.splitlines()) == (0, ["CHECK reduce PASS", "SWAPPED 0"])
    assert run(capsys, "manin", "search", path, "--budget", "10")[0] == 2
