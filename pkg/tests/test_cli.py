import io
import json
import subprocess
import sys

import pytest

from schublocus import cli
from schublocus.equimult import emult_recursive
from schublocus.errors import InvariantViolation, ParseError, SimpleIndexError
from schublocus.roots import build_root_system
from schublocus.symalg import Poly, RootFraction
from schublocus.weyl import from_word, identity, longest_element


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), stdout=buf)
    return code, buf.getvalue()


def test_parse_element(A2):
    assert cli.parse_element(A2, "e") == identity(A2)
    assert cli.parse_element(A2, "1 2 1") == longest_element(A2)
    assert cli.parse_element(A2, "s1*s2*s1") == longest_element(A2)
    assert cli.parse_element(A2, "1 1 2") == from_word(A2, [2])
    for bad in ["", "1 x", "s", "t1"]:
        with pytest.raises(ParseError):
            cli.parse_element(A2, bad)
    with pytest.raises(SimpleIndexError):
        cli.parse_element(A2, "3")


def test_emult_text():
    assert run("emult", "B2", "--w", "2 1 2", "--x", "e") == (0, "2 / (a2 * a1 * (a1+2*a2))\n")
    assert run("emult", "B2", "--w", "2 1 2", "--x", "e", "--engine", "subexpr")[1] == "2 / (a2 * a1 * (a1+2*a2))\n"


def test_smooth_text():
    assert run("smooth", "B2", "--w", "2 1 2", "--x", "e") == (0, "SINGULAR (J = 2); rationally smooth: yes\n")
    assert run("smooth", "B2", "--w", "2 1 2", "--x", "1")[1] == "SMOOTH (J = 1); rationally smooth: yes\n"


def test_locus_text():
    code, out = run("locus", "A3", "--w", "2 1 3 2")
    assert code == 0 and out.strip().endswith(": s2")
    assert run("locus", "B2", "--w", "2 1 2", "--rational")[1] == "X(s2*s1*s2) is rationally smooth\n"


def test_other_commands():
    assert run("joseph", "G2", "--w", "1 2 1", "--x", "e")[1] == "3\n"
    assert run("bruhat", "A2", "--x", "1 2", "--w", "2 1")[1] == "false\n"
    assert run("gkm-restrict", "A2", "--w", "1 2", "--x", "e")[1] == "a1 + a2\n"
    assert "6 positive roots" in run("roots", "G2")[1]
    assert run("weyl", "F4")[1].startswith("|W(F4)| = 1152")
    assert run("rsmooth", "B2", "--w", "2 1 2", "--x", "e")[1] == "RATIONALLY SMOOTH (d = 2)\n"
    code, out = run("gkm-verify", "B2")
    assert code == 0 and out.count("OK") == 8
    code, out = run("gkm-mult", "A2", "--u", "2 1", "--v", "1 2", "--ordinary")
    assert out == "xi(s1): 1\nxi(s2): 1\n"


def test_json_roundtrip():
    code, out = run("emult", "B3", "--w", "3 2 3 1 2", "--x", "2", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["schema"] == "1"
    for key in ("type", "w", "x", "length_w", "e_num", "e_den_roots", "J", "phi", "smooth", "rationally_smooth"):
        assert key in rec
    rs = build_root_system(rec["type"])
    w, x = cli.parse_element(rs, rec["w"]), cli.parse_element(rs, rec["x"])
    e = emult_recursive(rs, w, x)
    back = RootFraction.make(rs, Poly.parse(rec["e_num"], rs.rank), [rs.root_index(tuple(r)) for r in rec["e_den_roots"]])
    assert back == e
    assert RootFraction.parse(rs, run("emult", "B3", "--w", rec["w"], "--x", rec["x"])[1]) == e
    assert rec["length_w"] == w.length


def test_scan_deterministic_and_parallel():
    code, serial = run("scan", "B3", "--format", "json", "--all")
    assert code == 0
    code, par = run("scan", "B3", "--format", "json", "--all", "--jobs", "3")
    assert code == 0 and par == serial
    recs = [json.loads(line) for line in serial.splitlines()]
    assert len(recs) == 48
    rs = build_root_system("B3")
    keys = [(r["length_w"], cli.parse_element(rs, r["w"]).word) for r in recs]
    assert keys == sorted(keys)


def test_scan_max_length_and_predicates():
    out = run("scan", "A3", "--max-length", "3")[1]
    assert out == ""
    out = run("scan", "A3", "--predicate", "smooth", "--max-length", "1")[1]
    assert len(out.splitlines()) == 4
    out = run("scan", "B3", "--predicate", "singular-rsmooth", "--format", "json")[1]
    assert all(json.loads(line)["holds"] for line in out.splitlines())


def test_scan_guard(capsys, monkeypatch):
    monkeypatch.setattr(sys.stdin, "isatty", lambda: False, raising=False)
    code, out = run("scan", "E6", "--max-length", "1")
    assert code == 1 and out == ""
    assert "--yes" in capsys.readouterr().err
    code, out = run("scan", "B5", "--max-length", "2", "--yes", "--predicate", "smooth")
    assert code == 0 and len(out.splitlines()) == 1 + 5 + 14


def test_user_errors(capsys):
    assert run("emult", "B2", "--w", "2 1 2", "--x", "3")[0] == 1
    assert "SimpleIndexError" in capsys.readouterr().err
    assert run("emult", "Q2", "--w", "1", "--x", "e")[0] == 1
    assert "CartanTypeError" in capsys.readouterr().err
    assert run("joseph", "A2", "--w", "1", "--x", "2")[0] == 1
    assert "NotBelowError" in capsys.readouterr().err
    assert run("emult", "F4", "--w", " ".join(["1 2 3 4"] * 4), "--x", "e", "--engine", "subexpr")[0] == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["emult", "B2", "--w"])
    assert exc.value.code == 1


def test_invariant_violation_exit_code(monkeypatch, capsys):
    def boom(*a, **k):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "joseph_poly", boom)
    assert run("joseph", "A2", "--w", "1", "--x", "e")[0] == 2
    assert "InvariantViolation: forced" in capsys.readouterr().err


def test_cache_flags(tmp_path):
    code, _ = run("weyl", "C3", "--cache-dir", str(tmp_path))
    assert code == 0
    # group was already built for C3 in this process, so force a fresh type
    code, _ = run("weyl", "D4", "--cache-dir", str(tmp_path))
    assert list(tmp_path.glob("weyl-D4-*.pkl"))
    code, _ = run("roots", "A1", "--cache-dir", str(tmp_path), "--clear-cache")
    assert code == 0 and not list(tmp_path.glob("*.pkl"))


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "schublocus", "emult", "B2", "--w", "2 1 2", "--x", "e"],
        capture_output=True,
        text=True,
    )
    assert r.returncode == 0
    assert r.stdout == "2 / (a2 * a1 * (a1+2*a2))\n"
    r = subprocess.run([sys.executable, "-m", "schublocus", "bogus"], capture_output=True, text=True)
    assert r.returncode == 1
