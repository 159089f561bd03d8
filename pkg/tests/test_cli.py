import io
import json
import logging
from math import gcd

import pytest

from coprime_extremal.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run_cli
from coprime_extremal.report import RunReport, validate_report


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setenv("COPRIME_CACHE_DIR", str(path))
    return path


def run(*argv):
    out = io.StringIO()
    code = run_cli(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    data = json.loads(text)
    validate_report(data)
    return code, data


def rationals(node):
    if isinstance(node, dict):
        if set(node) == {"num", "den"}:
            yield node
        else:
            for v in node.values():
                yield from rationals(v)
    elif isinstance(node, list):
        for v in node:
            yield from rationals(v)


COMMANDS = [
    ("primes", "--limit", "30"),
    ("pintz", "--l", "1", "--tmax", "20", "--strict"),
    ("solve", "--n", "12", "--k", "2", "--oracle"),
    ("canonical", "--set", "ek", "--k", "2", "--n", "30"),
    ("canonical", "--set", "bk", "--k", "2", "--n", "30"),
    ("construct", "t1", "--t", "8", "--l", "1", "--n", "540"),
    ("construct", "t4", "--k", "1", "--n", "2310"),
    ("verify", "block-lemma", "--name", "L3", "--kmax", "40"),
    ("verify", "counts", "--max-a", "200"),
    ("verify", "proposition", "--k", "1", "--a", "3", "--n", "10"),
    ("gap", "--k", "1", "--nmin", "4", "--nmax", "12"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: "-".join(a[:2]))
def test_every_command_emits_valid_report(argv):
    code, data = run_json(*argv)
    assert code == EXIT_OK
    for r in rationals(data):
        assert r["den"] > 0 and gcd(r["num"], r["den"]) == 1
    again = RunReport.from_dict(data).to_dict()
    assert again == data


def test_solve_value_and_oracle_check():
    code, data = run_json("solve", "--n", "10", "--k", "1", "--oracle")
    assert code == EXIT_OK
    assert data["result"]["value"] == 5
    assert data["result"]["checks"]["matches_oracle"] is True


def test_usage_errors_exit_2():
    assert run("solve", "--n", "10")[0] == EXIT_USAGE
    assert run("solve", "--n", "0", "--k", "1")[0] == EXIT_USAGE
    assert run("verify", "block-lemma", "--name", "nope", "--kmax", "3")[0] == EXIT_USAGE
    assert run("solve", "--n", "10", "--k", "1", "--force", "2", "3")[0] == EXIT_USAGE


def test_failed_check_exits_1():
    code, data = run_json("construct", "t1", "--t", "8", "--l", "1", "--n", "551")
    assert code == EXIT_FAILED
    assert data["result"]["checks"]["preconditions_hold"] is False


def test_budget_exit_3():
    code, data = run_json("solve", "--n", "40", "--k", "3", "--budget", "5", "--no-cache")
    assert code == EXIT_BUDGET
    assert data["result"]["status"] == "budget_exceeded"


def test_cache_hit_repeats_payload(isolated_cache):
    argv = ("solve", "--n", "20", "--k", "2")
    _, first = run_json(*argv)
    assert first["cache_hit"] is False
    assert isolated_cache.is_dir()
    _, second = run_json(*argv)
    assert second["cache_hit"] is True
    assert second["result"] == first["result"]
    assert second["parameters"] == first["parameters"]


def test_no_cache_flag_skips_cache(isolated_cache):
    run_json("solve", "--n", "9", "--k", "1", "--no-cache")
    assert not isolated_cache.exists()


def test_corrupt_cache_entry_is_ignored(isolated_cache, caplog):
    argv = ("solve", "--n", "14", "--k", "1")
    run_json(*argv)
    (entry,) = isolated_cache.glob("*.json")
    entry.write_text("{not json", encoding="utf-8")
    with caplog.at_level(logging.WARNING):
        code, data = run_json(*argv)
    assert code == EXIT_OK
    assert data["cache_hit"] is False
    assert data["result"]["value"] == 7
    assert any("cache" in rec.getMessage() for rec in caplog.records)


def test_csv_output_has_header_and_lf():
    code, text = run("gap", "--k", "1", "--nmin", "4", "--nmax", "8", "--format", "csv")
    assert code == EXIT_OK
    assert "\r" not in text
    lines = text.rstrip("\n").split("\n")
    assert "n" in lines[0].split(",")
    assert len(lines) == 1 + 5


def test_csv_rationals_are_fractions():
    _, text = run("canonical", "--set", "ek", "--k", "2", "--n", "30", "--format", "csv")
    header, row = text.strip().split("\n")
    cells = dict(zip(header.split(","), row.split(",")))
    assert cells["density_exact"] == "2/3"
