import json
import shutil
import subprocess
import sys

import pytest

from qmark.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["expand", "ecf", "5/13"], "[[1, 2], [1, 2], [-1, 2], [1, 1]]"),
        (["expand", "ocf", "7/12"], "[[1, 1], [1, 1], [1, 3], [-1, 1], [1, 1]]"),
        (["expand", "rcf", "1/3"], "[3]"),
        (["q", "even", "5/13", "--exact"], "11/27"),
        (["q", "odd", "4/7", "--exact"], "[-1, -1, 1]"),
        (["q", "even", "0/1", "--exact"], "0/1"),
        (["q", "minkowski", "1/3"], "1/4"),
        (["inverse", "even", "11/27"], "5/13"),
        (["inverse", "even", "1/1"], "1/1"),
        (["inverse", "minkowski", "1/4"], "1/3"),
        (["stern", "--count", "14"], "0,1,1,1,2,3,1,3,2,1,3,5,2,7"),
        (["stern", "--poly", "5"], "1,1,1"),
        (["level", "even", "1", "--format", "plain"], "0/1,1/3,1/2,1/1"),
    ],
)
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out == expected


def test_odd_value_in_basis_form_equals_laurent_form(capsys):
    from qmark.exact import LAMBDA as L

    _, out, _ = run(capsys, "q", "odd", "4/7", "--exact")
    assert str(1 - L**-1 + L**-4) == out


def test_decimal_output(capsys):
    _, out, _ = run(capsys, "q", "odd", "4/7", "--digits", "20")
    assert out == "0.54368901269207636157"


def test_inverse_odd_brackets(capsys):
    code, out, _ = run(capsys, "inverse", "odd", "0.5", "--digits", "20", "--format", "json")
    lo, hi = json.loads(out)["results"]
    from fractions import Fraction

    assert Fraction(hi) - Fraction(lo) < Fraction(1, 10**20)


def test_level_csv(capsys):
    _, out, _ = run(capsys, "level", "even", "3")
    lines = out.splitlines()
    assert lines[0] == "index,numerator,denominator,in_Z" and len(lines) == 29


def test_array_rows(capsys):
    _, out, _ = run(capsys, "array", "ecf", "--rows", "4")
    rows = out.splitlines()
    assert [len(r.split(",")) for r in rows] == [2, 4, 10, 28]


def test_stern_count_fifty(capsys):
    _, out, _ = run(capsys, "stern", "--count", "50")
    assert len(out.split(",")) == 50


def test_check_reports_and_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "conjugacy", "even", "--level", "6")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and set(rep) == {"command", "params", "results", "pass"}
    code, out, _ = run(capsys, "check", "holder", "odd", "--depth", "40")
    rep = json.loads(out)
    assert code == 0 and abs(float(rep["results"][0]["terminal"]) - 0.63317) < 0.01
    code, out, _ = run(capsys, "check", "genfun", "--normalization", "stated")
    assert code == 1 and json.loads(out)["pass"] is False


def test_invariance_with_worker_pool(capsys):
    code, out, _ = run(capsys, "check", "invariance", "F_O", "nu_O", "--trials", "120",
                       "--digits", "10", "--workers", "2")
    rep = json.loads(out)
    assert code == 0 and rep["results"][0]["parameters"]["intervals"] == 120
    code2, out2, _ = run(capsys, "check", "invariance", "F_O", "nu_O", "--trials", "120",
                         "--digits", "10", "--workers", "1")
    assert json.loads(out2)["results"][0]["max_discrepancy"] == rep["results"][0]["max_discrepancy"]


def test_bounds_and_force(capsys):
    code, _, err = run(capsys, "level", "even", "13")
    assert code == 2 and "--force" in err
    code, _, err = run(capsys, "check", "holder", "even", "--depth", "61")
    assert code == 2


def test_errors_go_to_stderr(capsys):
    for argv in (["q", "even", "2/1"], ["expand", "ecf", "abc"], ["q", "even", "1/0"]):
        code, out, err = run(capsys, *argv)
        assert code != 0 and not out and err.startswith("qmark: error")


def test_digit_cap(capsys, monkeypatch):
    monkeypatch.setenv("QMARK_MAX_DIGITS", "5")
    _, out, err = run(capsys, "q", "odd", "4/7", "--digits", "40")
    assert out == "0.54369" and "capped" in err


def test_exact_output_is_byte_stable(capsys):
    outs = {run(capsys, "plotdata", "even", "--level", "4")[1] for _ in range(3)}
    assert len(outs) == 1


def test_plotdata_level_eight(capsys):
    _, out, _ = run(capsys, "plotdata", "even", "--level", "8")
    lines = out.splitlines()
    assert lines[0] == "x,q" and len(lines) == 3**8 + 2
    assert lines[-1] == "1/1,1/1"


@pytest.mark.skipif(shutil.which("qmark") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["qmark", "q", "even", "5/13", "--exact"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "11/27"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qmark.cli", "stern", "--count", "5"],
                       capture_output=True, text=True)
    assert r.stdout.strip() == "0,1,1,1,2"
