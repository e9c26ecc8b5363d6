"""CLI contract tests: exit codes, output formats, reproducibility."""

import json
import subprocess
import sys

import numpy as np
import pytest

from shorsim import FactoringInstance, build_spectrum
from shorsim.cli import DEFAULT_SEED, main


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "shorsim", *args],
        capture_output=True,
        text=True,
    )


def test_simulate_single_trace_reproducible():
    a = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "1",
                "--seed", "9")
    b = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "1",
                "--seed", "9")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert "success_bound" in a.stdout


def test_simulate_aggregate_report():
    result = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "400",
                     "--seed", "11")
    assert result.returncode == 0
    assert "order_recovery_rate" in result.stdout
    assert "success_bound = 0.166666666667" in result.stdout


def test_simulate_rejects_prime_power():
    result = run_cli("simulate", "--n", "9", "--x", "2")
    assert result.returncode == 1
    assert "prime power" in result.stderr


def test_simulate_rejects_prime():
    result = run_cli("simulate", "--n", "13", "--x", "2")
    assert result.returncode == 1
    assert "composite" in result.stderr


def test_simulate_accidental_factor_is_success():
    result = run_cli("simulate", "--n", "15", "--x", "5", "--trials", "3")
    assert result.returncode == 0
    assert "3 x 5" in result.stdout


def test_simulate_structured_record_parses():
    result = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "3",
                     "--seed", "5", "--format", "structured-record")
    assert result.returncode == 0
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 3
    for line in lines:
        record = json.loads(line)
        assert record["n"] == 15 and record["q"] == 256
        assert set(record) >= {"sampled_c", "sampled_k", "order_verified",
                               "failure_reason"}


def test_simulate_delimited_table_round_trip():
    result = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "5",
                     "--seed", "5", "--format", "delimited-table")
    assert result.returncode == 0
    lines = result.stdout.strip().split("\n")
    header = lines[0].split(",")
    assert len(lines) == 6
    assert header[:5] == ["n", "x", "ell", "r", "q"]
    for line in lines[1:]:
        cells = dict(zip(header, line.split(",")))
        assert int(cells["q"]) == 256
        assert cells["order_verified"] in ("true", "false")


def test_audit_exit_codes_and_evidence():
    bad = run_cli("audit", "--n", "15", "--s", "1", "--reg2", "4")
    assert bad.returncode == 2
    assert "COND_Q_GE_N2" in bad.stdout
    assert "q = 2" in bad.stdout and "n_squared = 225" in bad.stdout
    assert "non_compliant" in bad.stdout

    good = run_cli("audit", "--n", "15", "--s", "8", "--reg2", "4")
    assert good.returncode == 0
    assert "verdict: compliant" in good.stdout


def test_audit_reg2_failure():
    result = run_cli("audit", "--n", "15", "--s", "8", "--reg2", "2")
    assert result.returncode == 2
    assert "COND_REG2_WIDTH" in result.stdout


def test_audit_with_base_applicability():
    result = run_cli("audit", "--n", "15", "--s", "1", "--reg2", "4",
                     "--x", "7")
    assert result.returncode == 2
    assert "applicable = false" in result.stdout
    assert "r_over_q = 2" in result.stdout


def test_audit_with_nonunit_base_is_usage_error():
    result = run_cli("audit", "--n", "15", "--s", "8", "--reg2", "4",
                     "--x", "5")
    assert result.returncode == 1


def test_spectrum_default_q():
    result = run_cli("spectrum", "--n", "15", "--x", "7",
                     "--format", "delimited-table")
    assert result.returncode == 0
    lines = result.stdout.strip().split("\n")
    assert lines[0] == "c,marginal_probability,signed_residue,good_flag"
    rows = [l for l in lines[1:] if not l.startswith("#")]
    assert len(rows) == 256
    nonzero = [r for r in rows if r.split(",")[1] != "0"]
    assert [r.split(",")[0] for r in nonzero] == ["0", "64", "128", "192"]
    assert all(r.split(",")[1] == "0.25" for r in nonzero)
    trailer = [l for l in lines if l.startswith("#")]
    assert any("normalization = 1" in l for l in trailer)


def test_spectrum_degenerate_q2():
    result = run_cli("spectrum", "--n", "15", "--x", "7", "--q", "2",
                     "--format", "delimited-table")
    assert result.returncode == 0
    rows = [l for l in result.stdout.strip().split("\n")[1:]
            if not l.startswith("#")]
    assert len(rows) == 2
    assert rows[0].startswith("0,0.5") and rows[1].startswith("1,0.5")


def test_spectrum_round_trip_exact():
    result = run_cli("spectrum", "--n", "15", "--x", "7",
                     "--format", "delimited-table")
    table = build_spectrum(FactoringInstance.create(15, 7), 256)
    lines = [l for l in result.stdout.strip().split("\n")[1:]
             if not l.startswith("#")]
    for line in lines:
        c, p, t, flag = line.split(",")
        c = int(c)
        assert float(p) == float(table.marginals[c])
        assert int(t) == int(table.signed_residues[c])
        assert flag == ("true" if table.good_flags[c] else "false")


def test_spectrum_structured_record_trailer():
    result = run_cli("spectrum", "--n", "15", "--x", "7", "--q", "2",
                     "--format", "structured-record")
    lines = result.stdout.strip().splitlines()
    assert len(lines) == 3
    assert json.loads(lines[0]) == {
        "c": 0, "marginal_probability": 0.5, "signed_residue": 0,
        "good_flag": True,
    }
    trailer = json.loads(lines[-1])
    assert trailer["normalization"] == 1.0
    assert trailer["p_min_good_c"] == 0.5


def test_spectrum_rejects_bad_q():
    assert run_cli("spectrum", "--n", "15", "--x", "7", "--q", "3")\
        .returncode == 1
    assert run_cli("spectrum", "--n", "15", "--x", "7", "--q", "1")\
        .returncode == 1


def test_spectrum_rejects_nonunit_base():
    assert run_cli("spectrum", "--n", "15", "--x", "5").returncode == 1


def test_sweep_rows_and_determinism():
    args = ("sweep", "--n-list", "15,21", "--trials", "200", "--seed", "8")
    a = run_cli(*args)
    b = run_cli(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    lines = a.stdout.strip().split("\n")
    assert len(lines) == 3  # header + one row per n
    assert lines[0].split()[:2] == ["n", "x"]


def test_sweep_bases_factor_fifteen():
    result = run_cli("sweep", "--n-list", "15", "--bases", "2,7,8,13",
                     "--trials", "150", "--seed", "4")
    assert result.returncode == 0
    lines = result.stdout.strip().split("\n")
    assert len(lines) == 5
    for line in lines[1:]:
        cells = line.split()
        # factor_rate column is nonzero for every base
        assert float(cells[6]) > 0


def test_sweep_skips_nonunit_base():
    result = run_cli("sweep", "--n-list", "15", "--bases", "5,7",
                     "--trials", "100")
    assert result.returncode == 0
    assert "skipping n = 15, x = 5" in result.stderr
    assert len(result.stdout.strip().split("\n")) == 2


def test_sweep_usage_errors():
    assert run_cli("sweep", "--n-list", "15", "--trials", "0")\
        .returncode == 1
    assert run_cli("sweep", "--n-list", "", "--trials", "10")\
        .returncode == 1
    assert run_cli("sweep", "--n-list", "9", "--trials", "10")\
        .returncode == 1


def test_verify_bounds_output():
    result = run_cli("verify-bounds", "--n", "15", "--x", "7")
    assert result.returncode == 0
    assert "p_min = 0.0625" in result.stdout
    assert "one_third_bound = 0.0208333333333" in result.stdout
    assert "exceeds_one_third = true" in result.stdout
    assert "meets_sinc_floor = true" in result.stdout


def test_usage_error_exit_is_one_not_two():
    assert run_cli("simulate", "--n", "15").returncode == 1
    assert run_cli("nonsense").returncode == 1
    assert run_cli().returncode == 1
    assert run_cli("simulate", "--n", "15", "--x", "7", "--trials", "0")\
        .returncode == 1
    assert run_cli("simulate", "--n", "15", "--x", "abc").returncode == 1


def test_main_callable_in_process(capsys):
    code = main(["audit", "--n", "15", "--s", "8", "--reg2", "4"])
    assert code == 0
    assert "compliant" in capsys.readouterr().out


def test_default_seed_constant():
    # the documented default must never change silently
    assert isinstance(DEFAULT_SEED, int)
    a = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "2")
    b = run_cli("simulate", "--n", "15", "--x", "7", "--trials", "2",
                "--seed", str(DEFAULT_SEED))
    assert a.stdout == b.stdout
