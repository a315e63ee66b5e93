import json
import subprocess
import sys
from fractions import Fraction as F
from math import factorial

import pytest

from zonal import __version__
from zonal.cli import main, zero_bitmap
from zonal.partitions import dominates, multinomial, partitions_of


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_poly_expanded(capsys):
    code, out, _ = run(capsys, "poly", "2,1", "--vars", "a,b,c")
    assert code == 0
    assert out.strip() == ("12/5*a^2*b + 12/5*a^2*c + 12/5*a*b^2 + 18/5*a*b*c"
                           " + 12/5*a*c^2 + 12/5*b^2*c + 12/5*b*c^2")
    assert run(capsys, "poly", "1", "--vars", "1")[1] == "y1\n"
    assert run(capsys, "poly", "2,1", "--vars", "3")[1].startswith("12/5*y1^2*y2")


def test_poly_m_basis(capsys):
    code, out, _ = run(capsys, "poly", "3,2", "--m-basis")
    assert code == 0
    assert out.strip() == ("48/7*M(3,2) + 32/7*M(3,1,1) + 176/21*M(2,2,1)"
                           " + 64/7*M(2,1,1,1) + 80/7*M(1,1,1,1,1)")
    code, out, _ = run(capsys, "poly", "2", "--m-basis", "--json")
    assert json.loads(out)["terms"] == [{"partition": [2], "coefficient": "1"},
                                        {"partition": [1, 1], "coefficient": "2/3"}]


def test_malformed_partition_is_usage_error(capsys):
    code, _, err = run(capsys, "poly", "3,x")
    assert code == 2 and "malformed" in err
    assert run(capsys, "poly", "2,0")[0] == 2


def test_unordered_partition_is_sorted_with_warning(capsys):
    code, out, err = run(capsys, "coeff", "4,5", "3,3,3")
    assert code == 0 and out.strip() == "82944/1925"
    assert "warning" in err and "(5,4)" in err


def test_coeff(capsys):
    assert run(capsys, "coeff", "5,4", "3,3,3")[1] == "82944/1925\n"
    assert run(capsys, "coeff", "4", "4")[1] == "1\n"
    assert run(capsys, "coeff", "8,6,6,3", "7,7,5,3,1")[1] == "33426505728/5\n"
    assert float(run(capsys, "coeff", "5,4", "3,3,3", "--float")[1]) == pytest.approx(82944 / 1925)
    code, _, err = run(capsys, "coeff", "3", "2")
    assert code == 2 and "weight mismatch" in err


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "4")
    lines = out.splitlines()
    assert code == 0
    assert lines[2].split() == ["(4)", "|", "1", "4/7", "18/35", "12/35", "8/35"]
    assert lines[6].split() == ["(1,1,1,1)", "|", "0", "0", "0", "0", "16/5"]
    assert json.loads(run(capsys, "table", "1", "--json")[1])["coefficients"] == [["1"]]


def test_table_json_sums_and_threads(capsys):
    out1 = run(capsys, "table", "7", "--json")[1]
    out4 = run(capsys, "table", "7", "--json", "--threads", "4")[1]
    assert out1 == out4
    data = json.loads(out1)
    parts = [tuple(p) for p in data["partitions"]]
    assert parts == partitions_of(7)
    matrix = [[F(x) for x in row] for row in data["coefficients"]]
    assert [sum(col) for col in zip(*matrix)] == [multinomial(p) for p in parts]
    assert all(matrix[i][j] == 0 for i in range(len(parts)) for j in range(i))


def test_bad_threads(capsys):
    assert run(capsys, "table", "3", "--threads", "0")[0] == 2


def test_zeros_bitmap(tmp_path, capsys):
    path = tmp_path / "z.pbm"
    assert run(capsys, "zeros", "16", "-o", str(path))[0] == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "P1"
    assert lines[1].startswith("#") and "n=16" in lines[1] and __version__ in lines[1]
    assert lines[2] == "231 231"
    bits = "".join(lines[3:])
    assert len(bits) == 231 * 231
    assert all(len(line) <= 70 for line in lines[3:])
    parts = partitions_of(16)
    for i, kappa in enumerate(parts):
        for j, lam in enumerate(parts):
            expected = j < i or not dominates(kappa, lam)
            assert bits[i * 231 + j] == ("1" if expected else "0")


def test_zeros_small_and_io_error(capsys):
    assert zero_bitmap(2).splitlines()[3:] == ["00", "10"]
    code, _, err = run(capsys, "zeros", "3", "-o", "/nonexistent-dir/z.pbm")
    assert code == 3 and "cannot write" in err


def test_pfq(capsys):
    assert run(capsys, "pfq", "--eigs", "0", "--order", "5")[1] == "1\n"
    expected = sum(F(1, 2) ** k / factorial(k) for k in range(7))
    assert run(capsys, "pfq", "--eigs", "1/2", "--order", "6")[1] == f"{expected}\n"
    args = ["--upper", "1/2,3/2", "--lower", "5/2", "--order", "8"]
    assert run(capsys, "pfq", *args, "--eigs", "1/3")[1] == run(capsys, "pfq-scalar", *args, "--z", "1/3")[1]
    exact = F(run(capsys, "pfq", *args, "--eigs", "1/10,1/5", "--exact")[1].strip())
    approx = float(run(capsys, "pfq", *args, "--eigs", "1/10,1/5", "--float")[1])
    assert approx == pytest.approx(float(exact), rel=1e-12)


def test_pfq_errors(capsys):
    assert run(capsys, "pfq", "--eigs", "1/2", "--lower", "-1", "--order", "3")[0] == 2
    assert run(capsys, "pfq", "--eigs", "a", "--order", "3")[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["--suite", "trace", "--n-max", "8", "--m-max", "3"],
        ["--suite", "conjectures", "--a-max", "6"],
        ["--suite", "identities", "--a-max", "20"],
        ["--suite", "laplace", "--n-max", "6"],
        ["--suite", "closed-forms", "--n-max", "10"],
        ["--suite", "zeros", "--n-max", "7"],
    ],
)
def test_verify_suites_pass(capsys, argv):
    code, out, _ = run(capsys, "verify", *argv)
    report = json.loads(out)
    assert code == 0
    assert report["failures"] == [] and report["pass"] and report["checked"] > 0
    assert {"suite", "range", "checked", "failures"} <= set(report)


def test_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


def test_wishart_command(capsys):
    argv = ["wishart", "--n", "4", "--m", "2", "--nu", "3", "--samples", "20000", "--seed", "42", "--y", "1,1"]
    code, out, _ = run(capsys, *argv)
    report = json.loads(out)
    assert code == 0 and report["pass"]
    assert report["targets"] == ["5760", "720", "120"]
    assert run(capsys, *argv)[1] == out


def test_console_script_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "zonal.cli", "coeff", "4", "4"], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout == "1\n"
    bad = subprocess.run([sys.executable, "-m", "zonal.cli", "coeff", "4"], capture_output=True, text=True)
    assert bad.returncode == 2
