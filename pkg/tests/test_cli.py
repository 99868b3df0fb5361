import io
import shutil
import subprocess

import pytest

from cylcalc.cli import main
from cylcalc.formats import parse_subcover, recheck_subcover


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_radical_member():
    assert run("radical-member", "--f", "t0", "--ideal", "t0^2")[:2] == (0, "true\n")
    code, out, _ = run("radical-member", "--f", "t1", "--ideal", "t0^2")
    assert code == 1 and out == "false\n"


def test_member_gb_eliminate():
    assert run("member", "--f", "t0*t1 - t1", "--ideal", "t0 - 1")[0] == 0
    assert run("member", "--f", "t0", "--ideal", "t0^2")[0] == 1
    assert run("gb", "--ideal", "t0^2 - 1; t0 - 1")[1] == "t0 - 1\n"
    assert run("gb", "--ideal", "t0 - t1; t1^2", "--order", "lex")[1] == "t0 - t1\nt1^2\n"
    assert run("eliminate", "--ideal", "t0*t1 - 1", "--keep", "1")[1] == "0\n"
    assert run("eliminate", "--ideal", "t0 - t1^2", "--keep", "0,1")[1] == "t1^2 - t0\n"


def test_radical_eq():
    assert run("radical-eq", "--a", "t0^2; t1", "--b", "t0; t1^3")[0] == 0
    assert run("radical-eq", "--a", "t0*t1", "--b", "t0")[0] == 1


def test_examples():
    code, out, _ = run("example43", "--n", "3")
    assert code == 0 and "contraction to F[t1] is the zero ideal" in out
    code, out, _ = run("example41", "--n", "3")
    assert code == 0 and "== witness ==" in out and "no subfamily covers" in out


def test_subcover_certificate_verifies():
    code, out, _ = run("subcover", "--target", "t0; t1", "--cover", "t0; t1")
    assert code == 0
    cert = parse_subcover(out)
    assert cert.chosen == (0, 1) and recheck_subcover(cert)
    code, out, _ = run("subcover", "--target", "t0*t1", "--cover", "t0; t1")
    assert code == 0 and parse_subcover(out).chosen == (0,)


def test_budget_exhaustion_exit_code():
    code, _, err = run("subcover", "--target", "1", "--stream", "example41", "--budget", "4")
    assert code == 3 and "budget" in err


def test_cyl_subcommands():
    assert run("cyl", "empty", "--a", "closed: [t0]; removed: [t0]")[0] == 0
    assert run("cyl", "equal", "--a", "closed: [t0^2]", "--b", "closed: [t0]")[0] == 0
    assert run("cyl", "equal", "--a", "closed: [t0]", "--b", "level: {0}")[0] == 1
    code, out, _ = run("cyl", "stable", "--a", "level: {0,1,2}; removed: [t0, t1]")
    assert code == 0 and out.startswith("level: {0,1}")
    assert run("cyl", "stable", "--a", "closed: [t0]")[0] == 2
    code, out, _ = run("cyl", "closure", "--a", "closed: [t0*t1]; removed: [t0]")
    assert out == "level: {0,1}; closed: [t1]; removed: [1]\n"
    assert run("cyl", "union", "--a", "closed: [t0]")[0] == 2


def test_cylcover():
    code, out, _ = run("cylcover", "--target", "closed: [t0] | closed: [t1]",
                       "--part", "closed: [t0]", "--part", "closed: [t1]", "--part", "closed: [t0, t1]")
    assert code == 0 and out == "chosen: 0, 1\n"


def test_decide(tmp_path):
    code, out, _ = run("decide", "affine", "--ideal", "t0; t1", "--level", "0,1,5")
    assert code == 0 and "stable level: {0,1}" in out
    doc = tmp_path / "sys.txt"
    doc.write_text("level A {0}\nlevel B {1}\nmap A B\n  t0 -> t1^2\nideal\n  A: t0 - 1\n")
    code, out, _ = run("decide", "system", "--doc", f"@{doc}")
    assert code == 0 and "ideal: t1^2 - 1" in out


def test_file_indirection(tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("t0^2\nt1\n")
    assert run("member", "--f", "t0^2 + t1", "--ideal", f"@{f}")[0] == 0
    code, _, err = run("member", "--f", "t0", "--ideal", "@/nonexistent/file")
    assert code == 2 and "cannot read" in err


def test_input_errors():
    code, _, err = run("gb", "--ideal", "t0 +* 1")
    assert code == 2 and "position 4" in err
    code, _, err = run("decide", "system", "--doc", "level A {0}\nideal\n  Q: t0\n")
    assert code == 2 and "line 3" in err and "'Q'" in err
    assert run("nonsense")[0] == 2
    assert run("gb", "--ideal", "t0", "--budget", "0")[0] == 2
    assert run("eliminate", "--ideal", "t0", "--keep", "4")[0] == 2


@pytest.mark.skipif(shutil.which("cylcalc") is None, reason="console script not installed")
def test_console_script_is_deterministic():
    argv = ["cylcalc", "decide", "affine", "--ideal", "t0*t1 - 1; t2^2"]
    a = subprocess.run(argv, capture_output=True, text=True)
    b = subprocess.run(argv, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
