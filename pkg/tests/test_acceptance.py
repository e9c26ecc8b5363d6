"""Acceptance gate: seven checks, one printed pass/fail line each.

Run with ``pytest -v tests/test_acceptance.py`` (add -s to see the lines on
success; they always appear in captured output on failure). Tolerances are
the contractual ones: normalization 1e-12, oracle agreement 1e-10, strict
inequalities everywhere a bound is claimed.
"""

import functools
import math

import numpy as np

from shorsim import (
    COND_Q_GE_N2,
    FactoringInstance,
    RegisterConfig,
    Verdict,
    audit,
    build_spectrum,
    choose_q,
    estimate_success,
    recover_rational,
    run_trials,
    verify_bounds,
)
from tests.test_cli import run_cli
from tests.test_spectrum import brute_joint_matrix

SWEEP_MODULI = (15, 21, 33, 35, 39, 51, 55)


def _report(label: str, ok: bool) -> None:
    print(f"{'PASS' if ok else 'FAIL'}: {label}")
    assert ok, label


@functools.lru_cache(maxsize=1)
def _sweep_reports():
    """BoundReports for every coprime base of every sweep modulus."""
    reports = []
    for n in SWEEP_MODULI:
        q = choose_q(n).q
        for x in range(2, n):
            if math.gcd(x, n) == 1:
                reports.append(verify_bounds(FactoringInstance.create(n, x), q))
    return reports


def test_criterion_1_register_sizing():
    ok = choose_q(15) == (8, 256) and (15 - 1).bit_length() == 4
    ok = ok and FactoringInstance.create(15, 7).ell == 4
    _report("criterion 1: choose_q(15) = (8, 256) and ell = 4", ok)


def test_criterion_2_spectrum_exactness():
    table = build_spectrum(FactoringInstance.create(15, 7), 256)
    support = np.flatnonzero(table.marginals).tolist()
    ok = support == [0, 64, 128, 192]
    ok = ok and all(table.marginals[c] == 0.25 for c in support)
    ok = ok and abs(float(table.marginals.sum()) - 1.0) <= 1e-12
    oracle = brute_joint_matrix(15, 7, 256).sum(axis=0)
    ok = ok and bool(np.all(np.abs(table.marginals - oracle) <= 1e-10))
    _report(
        "criterion 2: n=15 x=7 q=256 spectrum is {0,64,128,192} at 0.25, "
        "normalized to 1e-12, brute-force match to 1e-10",
        ok,
    )


def test_criterion_3_probability_lower_bound():
    reports = _sweep_reports()
    ok = len(reports) > 0
    for report in reports:
        ok = ok and report.r >= 2
        ok = ok and report.p_min > report.one_third_bound
    _report(
        "criterion 3: p_min > 1/(3 r^2) over good (c, k) for all coprime "
        f"bases of n in {SWEEP_MODULI}",
        ok,
    )


def test_criterion_4_cfe_uniqueness():
    rng = np.random.default_rng(20250823)
    ok = True
    for _ in range(10**4):
        n = int(rng.integers(3, 2000))
        r = int(rng.integers(1, n))
        d = int(rng.integers(0, r)) if r > 1 else 0
        g = math.gcd(d, r)
        d, r = d // g, r // g
        q = choose_q(n).q
        c = (2 * d * q + r) // (2 * r)  # nearest integer to d q / r
        ok = ok and recover_rational(c, q, n) == (d, r)
    _report(
        "criterion 4: recover_rational(round(dq/r), q, n) = (d, r) on 1e4 "
        "random (d, r, n)",
        ok,
    )


def test_criterion_5_success_bound():
    est = estimate_success(15, 7, 10**4, 1729)
    ok = 0.48 <= est.order_recovery_rate <= 0.52
    ok = ok and est.order_recovery_rate >= 1 / 6
    for x in (2, 7, 8, 13):
        pairs = {t.factors for t in run_trials(15, x, 60, 1729) if t.factors}
        ok = ok and pairs == {(3, 5)}
    _report(
        "criterion 5: order-recovery rate in [0.48, 0.52] and >= 1/6 at 1e4 "
        "trials; bases {2, 7, 8, 13} all factor 15 into {3, 5}",
        ok,
    )


def test_criterion_6_flaw_reproduction():
    bad = audit(RegisterConfig(n=15, register1_qubits=1, register2_qubits=4))
    check = bad.check(COND_Q_GE_N2)
    ok = bad.verdict is Verdict.NON_COMPLIANT
    ok = ok and not check.passed
    ok = ok and check.evidence["q"] == 2 and check.evidence["n_squared"] == 225
    good = audit(RegisterConfig(n=15, register1_qubits=8, register2_qubits=4))
    ok = ok and good.verdict is Verdict.COMPLIANT

    dump = run_cli("spectrum", "--n", "15", "--x", "7", "--q", "2",
                   "--format", "delimited-table")
    rows = [line for line in dump.stdout.strip().split("\n")[1:]
            if not line.startswith("#")]
    ok = ok and dump.returncode == 0 and len(rows) == 2

    exit_bad = run_cli("audit", "--n", "15", "--s", "1", "--reg2", "4")
    exit_good = run_cli("audit", "--n", "15", "--s", "8", "--reg2", "4")
    ok = ok and exit_bad.returncode == 2 and exit_good.returncode == 0
    _report(
        "criterion 6: q=2 audit non_compliant (evidence 2 < 225, exit 2), "
        "q=2 spectrum has exactly two observable c values, q=256 audit "
        "compliant (exit 0)",
        ok,
    )


def test_criterion_7_integral_approximation():
    theta = np.linspace(-0.5, 0.5, 10**4)
    sinc = np.abs(np.sinc(theta))
    ok = bool(np.all(sinc >= 2 / np.pi)) and np.sinc(0.0) == 1.0
    for report in _sweep_reports():
        ok = ok and report.max_integral_gap < 0.05 * (1.0 / report.r)
    _report(
        "criterion 7: |sin(pi t)/(pi t)| >= 2/pi on a 1e4 grid of "
        "[-1/2, 1/2]; exact-vs-integral amplitude gap < 0.05/r for every "
        "criterion-3 instance",
        ok,
    )
