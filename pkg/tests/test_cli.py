from __future__ import annotations

import json
import subprocess
import sys

import pytest

from gjms_verify.cli import main
from gjms_verify.suites import SUITES, RunConfig, run_verification
from gjms_verify.tables import TableError, emit_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_full_run_passes():
    report = run_verification(RunConfig(n_max=6, series_order=14))
    assert report.passed
    assert report.counts()["fail"] == 0 and report.counts()["total"] > 1000
    seen = {e.identity for e in report.entries}
    assert {"duality", "mystic", "closed_form", "tables"} <= seen


def test_json_report_schema(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "closed_form,q_res", "--max-order", "3",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["schema"] == 1 and doc["status"] == "pass"
    assert doc["config"]["N_max"] == 3 and doc["config"]["K"] == 8
    assert set(doc["entries"][0]) >= {"identity", "anchor", "params", "status"}
    assert doc["summary"]["total"] == len(doc["entries"])


def test_output_is_byte_deterministic(tmp_path):
    outs = []
    for i, jobs in enumerate(("1", "3")):
        path = tmp_path / f"r{i}.json"
        assert main(["verify", "--max-order", "4", "--format", "json", "--out", str(path),
                     "--jobs", jobs]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "verify", "--max-order", "0")[0] == 2
    assert run(capsys, "verify", "--series-order", "1")[0] == 2
    assert run(capsys, "verify", "--space", "torus")[0] == 2
    assert run(capsys, "verify", "--numeric-qp", "3-3")[0] == 2
    assert run(capsys, "table", "bogus")[0] == 2
    assert run(capsys, "table", "q_values", "--space", "all")[0] == 2
    assert run(capsys)[0] == 2


def test_failure_exit_code(monkeypatch, capsys):
    from gjms_verify import suites

    def broken(report, cfg, space):
        report.check_equal("broken", "test.broken", {}, 1, 2)

    monkeypatch.setitem(suites.SUITES, "broken", suites.Suite("broken", broken))
    code, out, _ = run(capsys, "verify", "--suite", "broken")
    assert code == 1
    assert "FAIL test.broken" in out and "-1" in out


def test_sum_zero_skip(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sum_zero", "--max-order", "1")
    assert code == 0
    assert "total=0" in out and "skipped" in out


def test_variant_flagged(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "low_order", "--variants", "--format", "csv")
    assert code == 0
    assert sum(1 for line in out.splitlines() if ",flagged," in line) == 1


def test_m_coeff_csv(capsys):
    code, out, _ = run(capsys, "table", "m_coeff", "--max-order", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ['composition,coefficient', '"(1,1,1)",3', '"(1,2)",-2',
                                '"(2,1)",-2', '(3),1']


def test_q_values_text():
    out = emit_table("q_values", {"space": "sphere", "N": 3}, "text")
    assert out.splitlines()[1:] == ["1 | nu", "2 | nu^3 - nu", "3 | nu^5 - 5*nu^3 + 4*nu"]


def test_series_table():
    out = emit_table("series", {"space": "sphere", "K": 4, "series": "g"}, "json")
    rows = json.loads(out)["rows"]
    assert [r[1]["poly"] for r in rows[:3]] == ["1", "-nu", "1/2*nu^2 - 1/2*nu"]
    with pytest.raises(TableError):
        emit_table("series", {"space": "sphere", "K": 4, "series": "z"}, "text")


@pytest.mark.parametrize("kind", ["operators", "defects", "q_values"])
@pytest.mark.parametrize("fmt", ["json", "csv", "text"])
def test_tables_render(kind, fmt):
    a = emit_table(kind, {"space": "pseudosphere", "N": 3}, fmt)
    assert a == emit_table(kind, {"space": "pseudosphere", "N": 3}, fmt)
    assert a.endswith("\n")


def test_suites_listing(capsys):
    code, out, _ = run(capsys, "suites")
    assert code == 0 and out.split() == list(SUITES)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gjms_verify", "verify", "--suite", "tables"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "status: pass" in proc.stdout
