import json

import pytest
from click.testing import CliRunner

from akharmonic import catalog
from akharmonic.cli import EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK, cli


@pytest.fixture
def runner():
    return CliRunner()


def test_catalog_listing(runner):
    result = runner.invoke(cli, ["catalog"])
    assert result.exit_code == EXIT_OK
    for entry_id in catalog.ids():
        assert entry_id in result.output


def test_catalog_show_and_export(runner, tmp_path):
    result = runner.invoke(cli, ["catalog", "show", "kodaira-thurston-ak"])
    assert result.exit_code == EXIT_OK
    assert "d e4 = e1^e2" in result.output

    result = runner.invoke(cli, ["catalog", "export", str(tmp_path / "specs")])
    assert result.exit_code == EXIT_OK
    exported = sorted(p.name for p in (tmp_path / "specs").iterdir())
    assert exported == sorted(f"{entry_id}.spec" for entry_id in catalog.ids())

    result = runner.invoke(cli, ["catalog", "show", "nope"])
    assert result.exit_code == EXIT_INPUT


def test_validate(runner):
    result = runner.invoke(cli, ["validate", "kodaira-thurston-ak"])
    assert result.exit_code == EXIT_OK
    assert "✓ J-squared" in result.output
    assert "N_J(e1,e2) = e4" in result.output


def test_validate_invalid_file(runner, tmp_path):
    path = tmp_path / "bad.spec"
    path.write_text(catalog.T4_KAHLER.replace("0 -1 0 0\n1 0 0 0", "1 0 0 0\n0 1 0 0"), encoding="utf-8")
    result = runner.invoke(cli, ["validate", str(path), "--format", "json"])
    assert result.exit_code == EXIT_CHECK_FAILED
    entries = {e["check"]: e["passed"] for e in json.loads(result.output)["entries"]}
    assert entries["J-squared"] is False


def test_report_is_deterministic(runner):
    first = runner.invoke(cli, ["report", "kodaira-thurston-ak", "--format", "json"])
    second = runner.invoke(cli, ["report", "kodaira-thurston-ak", "--format", "json"])
    assert first.exit_code == EXIT_OK
    assert first.output == second.output
    document = json.loads(first.output)
    assert document["schema-version"] == "1"
    assert document["h"]["d_dc_k"][1] == 2
    assert document["betti"]["b_minus"] == 2


def test_report_table_layout(runner):
    result = runner.invoke(cli, ["report", "t4-kahler"])
    assert result.exit_code == EXIT_OK
    assert "h^k_d+dc" in result.output
    assert "b = 1 4 6 4 1" in result.output


def test_report_to_file(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["report", "t4-kahler", "--format", "json", "--out", str(out)])
    assert result.exit_code == EXIT_OK
    assert "✓ Wrote" in result.output
    assert json.loads(out.read_text(encoding="utf-8"))["name"] == "t4-kahler"


def test_verify(runner):
    result = runner.invoke(cli, ["verify", "kodaira-thurston-ak"])
    assert result.exit_code == EXIT_OK
    assert "0 failed" in result.output


def test_verify_strict_counts_not_applicable(runner):
    lenient = runner.invoke(cli, ["verify", "kodaira-thurston-herm", "--suite", "almost-kahler"])
    strict = runner.invoke(cli, ["verify", "kodaira-thurston-herm", "--suite", "almost-kahler", "--strict"])
    assert lenient.exit_code == EXIT_OK
    assert strict.exit_code == EXIT_CHECK_FAILED


@pytest.mark.parametrize("args,message", [
    (["report", "no-such-spec"], "neither a catalog id"),
    (["report", "kodaira-thurston-ak", "--param", "t"], "NAME=VALUE"),
    (["report", "kodaira-thurston-ak", "--param", "u=1"], "no parameter"),
    (["report", "kodaira-thurston-ak", "--param", "t=0.5"], "floats forbidden; write 1/2"),
    (["sweep", "kodaira-thurston-ak", "--param", "t", "--values", "1"], "at least two values"),
])
def test_input_errors(runner, args, message):
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_INPUT
    assert message in result.output


def test_sweep(runner):
    result = runner.invoke(cli, ["sweep", "kodaira-thurston-ak", "--param", "t", "--values", "1,2", "--format", "json"])
    assert result.exit_code == EXIT_OK
    document = json.loads(result.output)
    assert document["constancy_checked"] is True
    assert document["varying"] == []
