from __future__ import annotations

import json
from fractions import Fraction

import jsonschema
import pytest

from skeinrt import cli
from skeinrt.cyclotomic import ctx_new
from skeinrt.genericity import PPolynomial
from skeinrt.reports import (cached_scan, content_without_timing, dumps, emit_report, make_report, run_paper_suite,
                             to_jsonable, validate_report)


def test_exact_values_serialize_without_float_loss():
    assert to_jsonable(Fraction(-3, 7)) == "-3/7"
    ctx = ctx_new(8)
    v = to_jsonable(ctx.A(3) / 3)
    assert v["order"] == 16 and "1/3" in v["coeffs"]


def test_report_determinism_and_timing_isolation():
    a = make_report("x", {"b": 1, "a": [1.5, Fraction(1, 2)], "timing": {"seconds": 1.0}})
    b = make_report("x", {"a": [1.5, Fraction(1, 2)], "b": 1, "timing": {"seconds": 9.0}})
    assert content_without_timing(a) == content_without_timing(b)
    assert a["timing"] != b["timing"]
    assert dumps(a) == dumps(make_report("x", {"b": 1, "a": [1.5, Fraction(1, 2)], "timing": {"seconds": 1.0}}))


def test_schema_round_trip(tmp_path):
    rep = make_report("paper-suite", run_paper_suite([6, 8]).to_dict())
    validate_report(rep)
    path = emit_report(rep, tmp_path / "r.json")
    back = json.loads(path.read_text())
    validate_report(back)
    assert content_without_timing(back) == content_without_timing(rep)
    with pytest.raises(jsonschema.ValidationError):
        validate_report({"kind": "x", "payload": {}})


def test_emit_report_surfaces_the_path(tmp_path):
    bad = tmp_path / "missing" / "dir" / "r.json"
    (tmp_path / "missing").write_text("a file, not a directory")
    with pytest.raises(OSError, match="missing"):
        emit_report(make_report("x", {}), bad)


def test_empty_suite():
    res = run_paper_suite([])
    assert res.checks == [] and res.exit_code == 0


def test_small_suite_passes_and_records_modes():
    res = run_paper_suite([6, 8, 10, 12])
    statuses = {c.id: c.status for c in res.checks}
    assert "fail" not in statuses.values(), statuses
    assert statuses["genericity.lemmaGA"] == "skipped"
    assert all(c.mode in ("exact", "numeric", "modular", "mixed") for c in res.checks)
    assert len({c.id for c in res.checks}) == len(res.checks)


def test_corrupted_polynomial_fails_the_suite():
    res = run_paper_suite([6, 8], poly=PPolynomial().corrupted(3))
    status = {c.id: c.status for c in res.checks}
    assert status["genericity.P_values"] == "fail"
    assert res.exit_code == 1


def test_cache_reuse_changes_timing_only():
    a = cached_scan(12, use_cache=True)
    b = cached_scan(12, use_cache=True)
    c = cached_scan(12, use_cache=False)
    assert b["cached"] and not c["cached"]
    for key in ("generic", "zero_types", "zeros", "colorings"):
        assert a[key] == b[key] == c[key]


@pytest.mark.parametrize("argv,code", [
    (["cyclicity", "--p", "10"], 0),
    (["cyclicity", "--p", "16"], 1),
    (["cyclicity", "--p", "7"], 2),
    (["scan-genericity", "--p", "12"], 0),
    (["scan-genericity", "--p", "24"], 1),
    (["certify", "--p", "12", "--genus", "2"], 0),
    (["certify", "--p", "16"], 2),
    (["homology-check", "--genus", "2"], 0),
    (["homology-check", "--genus", "7"], 2),
    (["decompose", "--p", "12"], 0),
    (["eval-p", "5", "11"], 0),
    (["eval-p", "1", "1"], 1),
    (["paper-suite", "--p", "6", "--p", "8"], 0),
    (["no-such-command"], 2),
    ([], 2),
])
def test_cli_exit_codes(argv, code, capsys):
    assert cli.main(argv) == code


def test_cli_json_output(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert cli.main(["cyclicity", "--p", "18", "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    validate_report(rep)
    assert rep["kind"] == "cyclicity" and rep["payload"]["cyclic"] is True


def test_cli_eval_p_negative_control(capsys):
    assert cli.main(["eval-p", "5", "11", "--corrupt", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)["payload"]
    assert payload["checksum_ok"] is False
