"""Acceptance criteria at their stated bounds, one line of output each.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; both
print ``criterion <k>: pass|fail <summary>``.
"""

from __future__ import annotations

import sys
import time

import pytest

from gjms_verify import compositions as comp
from gjms_verify import mcal, qcurv, residue, spaces
from gjms_verify.report import VerificationReport
from gjms_verify.spaces import EINSTEIN, PSEUDOSPHERE, SPHERE, SPHERE_HYPERBOLIC

PRODUCTS = (PSEUDOSPHERE, SPHERE_HYPERBOLIC)


def criterion_1(r):
    comp.check_tables(r)


def criterion_2(r):
    comp.check_sum_zero(r, 12)
    comp.check_strong(r, 12)


def criterion_3(r):
    comp.check_reversal(r, 12)
    comp.check_two_part(r, 12)


def criterion_4(r):
    comp.check_variation(r, 8)
    comp.check_beta_kernel(r, 12)


def criterion_5(r):
    mcal.check_closed_form(r, SPHERE, 10)
    mcal.check_closed_form(r, EINSTEIN, 8)


def criterion_6(r):
    spaces.check_product_expansion(r, SPHERE, 8)
    spaces.check_product_expansion(r, EINSTEIN, 8)
    mcal.check_partial_sums(r, 10)


def criterion_7(r):
    for space in PRODUCTS:
        mcal.check_closed_form(r, space, 8)
        mcal.check_nonlinear(r, space, 8)
    spaces.check_specialization(r, 8)


def criterion_8(r):
    for space in (SPHERE, PSEUDOSPHERE):
        residue.check_mystic(r, space, 6)
        residue.check_interpolation(r, space, 6)


def criterion_9(r):
    qcurv.check_sphere_defect(r, 10)
    for n in range(1, 7):
        residue.check_q_res_sphere(r, n)


def criterion_10(r):
    qcurv.check_duality(r, SPHERE, 20)
    for space in PRODUCTS:
        qcurv.check_duality(r, space, 16)
    for space in (SPHERE, EINSTEIN) + PRODUCTS:
        qcurv.check_quadratic(r, space, 8)
        qcurv.check_w_beta(r, space, 8)


def criterion_11(r):
    qcurv.check_pseudo_final(r, 8)
    qcurv.check_vanishing_critical(r, qcurv.NUMERIC_PAIRS)


def criterion_12(r):
    for space in (SPHERE, EINSTEIN) + PRODUCTS:
        qcurv.check_low_order(r, space, include_variants=True)
    flagged = r.flagged()
    r.check_true("acceptance", "low-order.variant-flagged-once", {},
                 len(flagged) == 1 and flagged[0].anchor == "low-order.q4-variant",
                 f"{len(flagged)} flagged entries")


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}


def evaluate(k: int) -> tuple[VerificationReport, str]:
    report = VerificationReport(f"criterion_{k}")
    start = time.perf_counter()
    CRITERIA[k](report)
    elapsed = time.perf_counter() - start
    c = report.counts()
    status = "pass" if report.passed and c["total"] else "fail"
    line = (f"criterion {k}: {status} ({c['pass']} pass, {c['fail']} fail, "
            f"{c['flagged']} flagged, {elapsed:.2f}s)")
    return report, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    report, line = evaluate(k)
    with capsys.disabled():
        print("\n" + line, end="")
    assert report.passed, [str(e) for e in report.failures()[:3]]
    assert report.entries


if __name__ == "__main__":
    ok = True
    for k in CRITERIA:
        report, line = evaluate(k)
        print(line)
        ok = ok and report.passed
    sys.exit(0 if ok else 1)
