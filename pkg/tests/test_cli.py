from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from liecert.catalog import default_catalog_bytes, load_catalog
from liecert.cli import main, report_body, run_verification


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def catalog_file(tmp_path):
    path = tmp_path / "catalog.toml"
    path.write_bytes(default_catalog_bytes())
    return path


def test_verify_single_orbit(runner):
    res = runner.invoke(main, ["verify", "--algebra", "E6", "--ordinal", "1"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.stdout)
    (o,) = doc["orbits"]
    c = o["computed"]
    assert (c["dim_centralizer"], c["dim_centre"], c["m_r"]) == (8, 5, 16)
    assert o["verdict"] == "P_holds" and o["expected_diff"] == []
    assert doc["summary"] == {"total": 1, "certified": 1}
    assert "1/1 orbits certified" in res.stderr


def test_verify_unknown_orbit(runner):
    res = runner.invoke(main, ["verify", "--algebra", "E6", "--ordinal", "7"])
    assert res.exit_code == 2
    assert "no such orbit E6-7" in res.output


def test_ordinal_needs_algebra(runner):
    res = runner.invoke(main, ["verify", "--ordinal", "1"])
    assert res.exit_code == 2
    assert "--ordinal requires --algebra" in res.output


def test_list_all(runner):
    res = runner.invoke(main, ["list"])
    assert res.exit_code == 0
    assert len(res.stdout.splitlines()) == 20


def test_list_f4(runner):
    res = runner.invoke(main, ["list", "--algebra", "f4"])
    lines = res.stdout.splitlines()
    assert res.exit_code == 0 and len(lines) == 3
    assert all(line.startswith("F4") for line in lines)


def test_missing_catalog_file(runner, tmp_path):
    res = runner.invoke(main, ["list", "--catalog", str(tmp_path / "nope.toml")])
    assert res.exit_code == 2
    assert "cannot read catalog" in res.output


def test_malformed_catalog_file(runner, tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("schema_version = 1\n[[orbit]\n")
    res = runner.invoke(main, ["verify", "--catalog", str(bad)])
    assert res.exit_code == 2


def test_catalog_from_environment(runner, tmp_path):
    bad = tmp_path / "empty.toml"
    bad.write_text("")
    res = runner.invoke(main, ["list"], env={"LIECERT_CATALOG": str(bad)})
    assert res.exit_code == 2 and "empty" in res.output


def test_out_file_and_markdown(runner, tmp_path):
    out = tmp_path / "report.md"
    res = runner.invoke(main, ["verify", "--algebra", "F4", "--ordinal", "3", "--format",
                               "markdown", "--out", str(out)])
    assert res.exit_code == 0, res.output
    assert res.stdout == ""
    text = out.read_text()
    assert "## F4-3, characteristic 0200" in text
    assert "| 2 | 6 | 2 | 2x6 | 2 | groebner | SURJECTIVE_ALL |" in text
    assert "**1 of 1 orbits certified.**" in text
    assert [p.name for p in tmp_path.iterdir()] == ["report.md"]


def test_redundant_checks_flag(runner):
    args = ["verify", "--algebra", "E6", "--ordinal", "1"]
    plain = json.loads(runner.invoke(main, args).stdout)["orbits"][0]
    extra = json.loads(runner.invoke(main, args + ["--redundant-checks"]).stdout)["orbits"][0]
    assert len(extra["matrices"]) == len(plain["matrices"]) + 1
    assert extra["matrices"][-1]["redundant"]
    assert extra["computed"] == plain["computed"]


def test_expected_mismatch_exits_one(runner, catalog_file):
    text = catalog_file.read_text()
    head, tail = text.split('algebra = "F4"\nordinal = 3', 1)
    tail = tail.replace("dim_centralizer = 12", "dim_centralizer = 13", 1)
    catalog_file.write_text(head + 'algebra = "F4"\nordinal = 3' + tail)
    res = runner.invoke(main, ["verify", "--algebra", "F4", "--ordinal", "3",
                               "--catalog", str(catalog_file)])
    assert res.exit_code == 1
    assert "dim_centralizer: computed 12, expected 13" in res.stderr
    skipped = runner.invoke(main, ["verify", "--algebra", "F4", "--ordinal", "3",
                                   "--catalog", str(catalog_file), "--skip-expected-diff"])
    assert skipped.exit_code == 0


def test_selftest_passes(runner):
    res = runner.invoke(main, ["selftest"])
    assert res.exit_code == 0, res.output
    for name in ("jacobi", "sl2", "selection-rule", "groebner-vs-gcd"):
        assert f"{name}" in res.stdout


@pytest.mark.parametrize("fault,suite", [("jacobi", "jacobi"), ("sl2", "sl2"),
                                         ("selection", "selection-rule"),
                                         ("groebner", "groebner-vs-gcd")])
def test_selftest_detects_injected_fault(runner, fault, suite):
    res = runner.invoke(main, ["selftest", "--inject-fault", fault])
    assert res.exit_code == 1
    assert f"failing suites: {suite}" in res.stderr


def test_report_body_deterministic():
    records = [r for r in load_catalog() if r.key in ("F4-1", "F4-3")]
    a = run_verification(records, jobs=1)
    b = run_verification(records, jobs=2)
    assert json.dumps(report_body(a)) == json.dumps(report_body(b))
    assert "timing" in a and "timing" not in report_body(a)


def test_version(runner):
    res = runner.invoke(main, ["--version"])
    assert res.exit_code == 0 and "0.1.0" in res.output
