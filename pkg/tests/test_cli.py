import json
import subprocess
import sys
from pathlib import Path

import pytest

from qaffine import cli

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "golden"


def run_cli(args):
    import io
    from contextlib import redirect_stdout

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(args)
    return code, buf.getvalue()


def test_classical_exit_zero_and_structure():
    code, out = run_cli(["classical", "--tau", "4", "--n", "1"])
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "PASS"
    ids = [c["id"] for c in report["checks"]]
    assert "twist-order-four" in ids
    assert any(i.startswith("central-vs-basis") for i in ids)


def test_reports_deterministic():
    _c1, out1 = run_cli(["classical", "--tau", "1", "--n", "2"])
    _c2, out2 = run_cli(["classical", "--tau", "1", "--n", "2"])
    assert out1 == out2


def test_verify_z_deterministic_with_seed():
    args = ["verify-z", "--tau", "1", "--n", "2", "--method", "random", "--seed", "5", "--trials", "2"]
    _c1, out1 = run_cli(args)
    _c2, out2 = run_cli(args)
    assert out1 == out2
    assert json.loads(out1)["status"] == "PASS"


def test_golden_files_byte_identical():
    for tau, n in [(1, 2), (1, 3), (2, 2), (2, 3), (4, 1), (4, 2)]:
        path = GOLDEN / f"classical_tau{tau}_n{n}.json"
        _code, out = run_cli(["classical", "--tau", str(tau), "--n", str(n)])
        assert out == path.read_text(), f"golden drift for ({tau},{n})"


def test_golden_discrepancies():
    _code, out = run_cli(["report-discrepancies"])
    assert out == (GOLDEN / "discrepancies.json").read_text()


def test_verify_z_exact_small_with_certificates(tmp_path):
    cert_path = tmp_path / "certs.json"
    out_path = tmp_path / "report.json"
    code, _ = run_cli(
        [
            "verify-z",
            "--tau",
            "1",
            "--n",
            "2",
            "--certificates",
            str(cert_path),
            "--output",
            str(out_path),
        ]
    )
    assert code == 0
    report = json.loads(out_path.read_text())
    assert report["status"] == "PASS"
    certs = json.loads(cert_path.read_text())
    assert certs and all("terms" in v for v in certs.values())


def test_dims_subcommand():
    code, out = run_cli(["dims", "--tau", "4", "--n", "1", "--height", "4"])
    assert code == 0
    report = json.loads(out)
    assert all(row["equal"] for row in report["table"])


def test_radical_subcommand():
    code, out = run_cli(["radical", "--tau", "1", "--n", "2", "--mode", "solved"])
    assert code == 0


def test_config_file_parsing(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# comment line\n"
        "tau = 1\n"
        "n = 2\n"
        "mode = explicit\n"
        "seed = 9\n"
        "p1_2 = 3/4\n"
        "p1_3 = -2\n"
    )
    code, out = run_cli(["rep", "--config", str(cfg)])
    assert code == 0
    report = json.loads(out)
    assert report["case"]["mode"] == "explicit"
    assert report["case"]["seed"] == 9


def test_bad_config_key_rejected(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("frobnicate = 1\n")
    with pytest.raises(SystemExit):
        run_cli(["classical", "--config", str(cfg)])


def test_rank_guard():
    with pytest.raises(ValueError):
        cli.CaseConfig(tau=2, n=1)


def test_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "qaffine.cli", "report-discrepancies"],
        capture_output=True,
        text=True,
        cwd=ROOT,
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "PASS"
