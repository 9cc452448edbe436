import json

import pytest
from click.testing import CliRunner

from gorhom.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def test_profile_bundled_a2(runner):
    result = runner.invoke(main, ["profile", "a2.alg"])
    assert result.exit_code == 0
    assert "max-pd-of-injectives: 1" in result.output
    assert "max-id-of-projectives: 1" in result.output
    assert "gorenstein-dim: 1" in result.output


def test_malformed_file_exits_2(runner, tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text('{"nonsense": 1}')
    result = runner.invoke(main, ["algebra-info", str(bad)])
    assert result.exit_code == 2


def test_missing_file_exits_2(runner):
    result = runner.invoke(main, ["gpd", "definitely_not_there.mod"])
    assert result.exit_code == 2


def test_byte_identical_reports(runner):
    a = runner.invoke(main, ["profile", "f2c2.alg", "--format", "json", "--seed", "7"])
    b = runner.invoke(main, ["profile", "f2c2.alg", "--format", "json", "--seed", "7"])
    assert a.output == b.output
    assert a.exit_code == 0


def test_json_format_parses(runner):
    result = runner.invoke(main, ["algebra-info", "nak2.alg", "--format", "json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["dimension"] == 4
    assert doc["radical_dimension"] == 2


def test_csv_format(runner):
    result = runner.invoke(main, ["module-info", "a2_s1.mod", "--format", "csv"])
    assert result.exit_code == 0
    assert "meta,dimension,1" in result.output


def test_gpd_and_gid_commands(runner):
    result = runner.invoke(main, ["gpd", "a2_s1.mod"])
    assert result.exit_code == 0
    assert "gpd: 1" in result.output
    result = runner.invoke(main, ["gid", "a2_s1.mod"])
    assert result.exit_code == 0
    assert "gid: 0" in result.output


def test_resolve_command_reports_periodicity(runner):
    result = runner.invoke(main, ["resolve", "f2c2_simple.mod", "--bound", "4"])
    assert result.exit_code == 0
    assert "complete: False" in result.output
    assert ">= 4" in result.output


def test_totalize_command(runner):
    result = runner.invoke(main, ["totalize", "a2_s1.mod"])
    assert result.exit_code == 0
    assert "identities_violated: 0" in result.output
    assert "z0_gorenstein_projective: yes" in result.output


def test_frobenius_verify_yes_and_no(runner, tmp_path):
    result = runner.invoke(main, ["frobenius-verify", "f2_f2x2.ext"])
    assert result.exit_code == 0
    assert "verdict: yes" in result.output
    # build an extension that is certified non-Frobenius
    from gorhom.algebra import save_algebra
    from gorhom.corpus import corpus_algebra
    from gorhom.exactlin import Mat
    from gorhom.frobenius import RingExtension, save_extension

    f2 = corpus_algebra("f2")
    a2 = corpus_algebra("a2")
    ext = RingExtension(f2, a2, Mat.from_cols(f2.field, [a2.unit]))
    save_algebra(f2, tmp_path / "f2.alg")
    save_algebra(a2, tmp_path / "a2.alg")
    save_extension(ext, tmp_path / "f2_a2.ext", base_ref="f2.alg", total_ref="a2.alg")
    result = runner.invoke(main, ["frobenius-verify", str(tmp_path / "f2_a2.ext")])
    assert result.exit_code == 0
    assert "verdict: no" in result.output


def test_counterexample_product_exits_zero(runner):
    result = runner.invoke(main, ["counterexample-product"])
    assert result.exit_code == 0
    assert "passed: True" in result.output


def test_glgdim_check(runner):
    result = runner.invoke(main, ["glgdim-check", "f3_f3c3.ext"])
    assert result.exit_code == 0
    assert "base: 0" in result.output and "total: 0" in result.output


def test_out_writes_file(runner, tmp_path):
    target = tmp_path / "report.json"
    result = runner.invoke(main, ["profile", "f2.alg", "--format", "json",
                                  "--out", str(target)])
    assert result.exit_code == 0
    doc = json.loads(target.read_text())
    assert doc["gorenstein-dim"] == 0
