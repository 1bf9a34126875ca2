"""Command-line driver: selection, exit codes, and certificate output."""

import json

import pytest

from sympderiv import checks
from sympderiv.cli import main


def test_list_exits_zero(capsys):
    assert main(["--list"]) == 0
    out = capsys.readouterr().out
    for entry in checks.ALL_CHECKS:
        assert entry.id in out


def test_unknown_check_is_usage_error(capsys):
    assert main(["--check", "no-such-check"]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_bad_genus_is_usage_error(capsys):
    assert main(["--all", "--genus", "5"]) == 2
    assert main(["--all", "--genus", "1"]) == 2


def test_nothing_selected_is_usage_error(capsys):
    assert main([]) == 2


def test_single_check_passes(capsys):
    assert main(["--check", "core-values", "--genus", "2"]) == 0
    out = capsys.readouterr().out
    assert "core-values" in out
    assert "summary: 1 pass, 0 fail, 0 other" in out


def test_inapplicable_genus_reports_skipped(capsys):
    assert main(["--check", "well-definedness", "--genus", "3"]) == 0
    out = capsys.readouterr().out
    assert "skipped" in out


def test_budget_skips_expensive_checks(capsys):
    rc = main(["--check", "d2-rank", "--genus", "4",
               "--max-minutes", "0.0001"])
    assert rc == 0
    assert "skipped" in capsys.readouterr().out


def test_json_certificate_is_deterministic(tmp_path, capsys):
    p1 = tmp_path / "one.json"
    p2 = tmp_path / "two.json"
    args = ["--check", "d2-rank", "--check", "core-values", "--genus", "2"]
    assert main(args + ["--json", str(p1)]) == 0
    assert main(args + ["--json", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    doc = json.loads(p1.read_text())
    assert doc["genus"] == 2
    assert [c["id"] for c in doc["checks"]] == ["d2-rank", "core-values"]
    for c in doc["checks"]:
        assert c["status"] == "pass"
        assert "seconds" not in c  # timings stay out of the certificate


def test_seed_recorded_in_certificate(tmp_path, capsys):
    p = tmp_path / "cert.json"
    assert main(["--check", "core-values", "--seed", "7",
                 "--json", str(p)]) == 0
    assert json.loads(p.read_text())["seed"] == 7
