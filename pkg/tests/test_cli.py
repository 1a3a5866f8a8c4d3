import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from hardyz.cli import fmt, load_ini, main
from hardyz.recursion import h_jet
from hardyz.special import omega_jet
from hardyz.zeros import scan_zeros


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def jrun(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_eval_zeta_at_two(capsys):
    doc = jrun(capsys, "eval", "zeta", "--s", "2")
    assert doc["data"]["summary"]["value_re"].startswith("1.6449340668")
    assert doc["meta"]["backend"] in ("cython", "python")


def test_eval_z_prime_matches_oracle(capsys, oracle):
    ref = next(float(r["value"]) for r in oracle["Z_prime"] if float(r["t"]) == 20.0)
    doc = jrun(capsys, "eval", "Z", "--n", "1", "--t", "20")
    s = doc["data"]["summary"]
    assert float(s["value"]) == pytest.approx(ref, rel=1e-10)
    assert float(s["quality"]) < 1e-8


def test_eval_h2_closed_form(capsys):
    om = omega_jet(4 + 9j, 1).coeffs
    ref = -om[1] / 2 + om[0] ** 2 / 4
    doc = jrun(capsys, "eval", "h", "--n", "2", "--s", "4+9i")
    s = doc["data"]["summary"]
    assert complex(float(s["value_re"]), float(s["value_im"])) == pytest.approx(ref, rel=1e-13)


def test_eval_jet_rows(capsys):
    doc = jrun(capsys, "eval", "h", "--n", "1", "--s", "2+5i", "--K", "3")
    rows = doc["data"]["rows"]
    assert [r["k"] for r in rows] == ["0", "1", "2", "3"]
    c = h_jet(1, 2 + 5j, 3).coeffs
    assert float(rows[2]["coeff_re"]) == pytest.approx(c[2].real, rel=1e-13)


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "zeta", "--s", "1"],
        ["eval", "omega", "--s", "3"],
        ["eval", "Z", "--n", "1"],
        ["eval", "theta", "--t", "-4"],
        ["interlace", "--range", "30:30"],
        ["selfcheck", "--seed", "7", "--delta", "0.5"],
        ["zeros", "--range", "abc"],
        ["eval", "zeta", "--s", "2", "--cauchy-nodes", "8"],
    ],
)
def test_usage_and_domain_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    rec = json.loads(err.strip().splitlines()[-1])
    assert rec["error"]["type"] and rec["error"]["message"]


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["eval", "nonsense"])
    assert exc.value.code == 2


def test_io_error_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "eval", "zeta", "--s", "2", "--out", str(tmp_path / "no" / "x.json"))
    assert code == 3
    code, _, _ = run(capsys, "eval", "zeta", "--s", "2", "--config", str(tmp_path / "missing.ini"))
    assert code == 3


def test_interlace_summary_line(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "interlace", "--n", "0", "--range", "20:200", "--out", str(out))
    assert code == 0
    assert "violations=0" in stdout and stdout.startswith("gaps=")
    doc = json.loads(out.read_text())
    assert doc["data"]["summary"]["violations"] == "0"


@pytest.mark.slow
def test_interlace_report_matches_direct_scan(capsys, tmp_path):
    out = tmp_path / "r.csv"
    code, _, _ = run(capsys, "interlace", "--n", "3", "--range", "100:400", "--format", "csv", "--out", str(out))
    assert code == 0
    text = out.read_text()
    rows = list(csv.DictReader(line for line in text.splitlines() if not line.startswith("#")))
    lower = [z.t for z in scan_zeros(3, 100.0, 400.0)]
    upper = np.array([z.t for z in scan_zeros(4, 100.0, 400.0)])
    assert len(rows) == len(lower) - 1
    for row, a, b in zip(rows, lower, lower[1:]):
        assert float(row["left"]) == pytest.approx(a, abs=1e-9)
        assert int(row["count"]) == int(np.sum((upper > a) & (upper < b)))


def test_selfcheck_seed7(capsys):
    code, out, _ = run(capsys, "selfcheck", "--seed", "7")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) >= 10 and all(line.endswith("PASS") for line in lines)


def test_selfcheck_report_file(capsys, tmp_path):
    out = tmp_path / "sc.csv"
    code, _, _ = run(capsys, "selfcheck", "--format", "csv", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(line for line in out.read_text().splitlines() if not line.startswith("#")))
    assert all(r["passed"] == "true" for r in rows)


def test_plotdata_row_count(capsys, tmp_path):
    out = tmp_path / "z.dat"
    code, _, _ = run(capsys, "plotdata", "Z", "--range", "0:50", "--step", "0.05", "--out", str(out))
    assert code == 0
    data = np.loadtxt(out)
    assert data.shape == (1001, 2)
    assert data[0, 1] == pytest.approx(-1.4603545088095868, rel=1e-12)


def test_plotdata_sign_changes_match_scan(capsys, tmp_path):
    out = tmp_path / "z1.dat"
    run(capsys, "plotdata", "Z", "--n", "1", "--range", "14:22", "--step", "0.01", "--out", str(out))
    v = np.loadtxt(out)[:, 1]
    changes = int(np.sum(np.sign(v[1:]) != np.sign(v[:-1])))
    assert changes == len(scan_zeros(1, 14.0, 22.0))


def test_plotdata_g_is_finite(capsys, tmp_path):
    out = tmp_path / "g.dat"
    code, _, _ = run(capsys, "plotdata", "g", "--n", "2", "--range", "50:60", "--step", "0.1", "--out", str(out))
    assert code == 0
    data = np.loadtxt(out)
    assert data.shape == (101, 2) and np.all(np.isfinite(data))


def test_plotdata_rejects_bad_step(capsys):
    code, _, _ = run(capsys, "plotdata", "Z", "--range", "0:1", "--step", "0")
    assert code == 2


def test_ini_config(capsys, tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("em_cutoff = 80\nem_depth = 12\nformat = json\n")
    assert load_ini(ini) == {"em_cutoff": 80, "em_depth": 12, "format": "json"}
    doc = jrun(capsys, "eval", "zeta", "--s", "0.5+30i", "--config", str(ini), "--em-depth", "14")
    cfg = doc["meta"]["config"]
    assert cfg["em_cutoff"] == "80" and cfg["em_depth"] == "14"


def test_ini_with_section_header(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[run]\ndelta = 0.2\nworkers = 2\n")
    assert load_ini(ini) == {"delta": 0.2, "workers": 2}


def test_ini_unknown_key(capsys, tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("colour = blue\n")
    code, _, err = run(capsys, "eval", "zeta", "--s", "2", "--config", str(ini))
    assert code == 2 and "colour" in err


def test_reports_are_deterministic(capsys):
    argv = ["zeros", "--range", "10:40", "--workers", "2"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_csv_and_json_payloads_agree(capsys):
    argv = ["zeros", "--n", "1", "--range", "10:40"]
    doc = jrun(capsys, *argv)
    _, text, _ = run(capsys, *argv, "--format", "csv")
    summary = dict(line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# "))
    rows = list(csv.DictReader(io.StringIO("\n".join(l for l in text.splitlines() if not l.startswith("#")))))
    assert summary == doc["data"]["summary"]
    assert rows == doc["data"]["rows"]


def test_count_and_winding(capsys):
    doc = jrun(capsys, "count", "--T", "100")
    assert doc["data"]["summary"]["observed"] == "29"
    doc = jrun(capsys, "winding", "--family", "H(2)", "--square", "1:0.25")
    assert doc["data"]["summary"]["winding"] == "-2"


def test_fmt():
    assert fmt(1 / 3) == "0.333333333333333"
    assert fmt(0.0) == "0"
    assert fmt(None) == ""
    assert fmt(7) == "7"
    assert float(fmt(math.pi)) == pytest.approx(math.pi, rel=1e-14)


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hardyz.cli", "eval", "theta", "--t", "100", "--format", "csv"],
        capture_output=True, text=True,
    )
    assert out.returncode == 0
    assert "# value=" in out.stdout
