"""Command-line interface: exit codes, JSON round-trips, golden outputs."""

import json
import os

import pytest

from llstrata import cli

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures", "v1")


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def golden(name):
    with open(os.path.join(FIXTURES, name), encoding="utf-8") as fh:
        return fh.read()


def test_universal_codim0(capsys):
    code, out = run(capsys, "universal", "--codim", "0", "--contribution", "A")
    assert code == 0
    assert "1: 1" in out


def test_universal_R0_json_example(capsys):
    code, out = run(capsys, "universal", "--codim", "2",
                    "--contribution", "0", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"t1": "psi", "t1^2": "-2*psi^2", "t2": "psi^2"}


def test_universal_contribution_I_rows(capsys):
    code, out = run(capsys, "universal", "--codim", "1", "--contribution", "I")
    assert code == 0
    assert "[NI']" in out and "[NI'']" in out
    assert "t1: 2*psi" in out


def test_stratum_text(capsys):
    code, out = run(capsys, "stratum", "--family", "laurent",
                    "-k", "2", "-l", "1", "--mu", "2")
    assert code == 0
    assert "deg_LL" in out and " 2" in out
    assert "hurwitz" in out


def test_stratum_empty(capsys):
    code, out = run(capsys, "stratum", "--family", "laurent",
                    "-k", "1", "-l", "1", "--mu", "2")
    assert code == 0
    fields = dict(line.split(None, 1) for line in out.splitlines())
    assert fields["empty"] == "True"
    assert fields["deg_LL"] == "0"
    assert fields["hurwitz"] == "0"


def test_stratum_json_roundtrip(capsys):
    code, out = run(capsys, "stratum", "--family", "polynomial",
                    "-n", "3", "--mu", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["deg_LL"] == "4"
    # parsing and re-rendering is the identity
    assert json.loads(json.dumps(data)) == data


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["stratum", "--family", "polynomial", "-k", "2", "-l", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["stratum", "--family", "laurent", "-k", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["stratum", "--family", "laurent", "-k", "1", "-l", "1",
                  "--mu", "junk"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["universal", "--codim", "2", "--format", "yaml"])
    assert exc.value.code == 2


def test_oracle_flag(capsys):
    code, out = run(capsys, "stratum", "--family", "laurent",
                    "-k", "2", "-l", "2", "--mu", "2", "--oracle")
    assert code == 0
    assert "oracle_match" in out and "True" in out


def test_cache_env_override(capsys, tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    monkeypatch.setenv(cli.CACHE_ENV, str(path))
    code, _ = run(capsys, "stratum", "--family", "laurent",
                  "-k", "2", "-l", "1", "--mu", "2", "--oracle")
    assert code == 0
    assert path.exists()


def test_golden_universal_R0(capsys):
    _, out = run(capsys, "universal", "--codim", "2",
                 "--contribution", "0", "--format", "json")
    assert out == golden("universal_codim2_R0.json")


def test_golden_stratum(capsys):
    _, out = run(capsys, "stratum", "--family", "laurent",
                 "-k", "2", "-l", "1", "--mu", "2", "--format", "json")
    assert out == golden("stratum_laurent21_mu2.json")


def test_golden_table(capsys):
    _, out = run(capsys, "table")
    assert out == golden("table_default.txt")


def test_golden_universal_latex(capsys):
    _, out = run(capsys, "universal", "--codim", "2",
                 "--contribution", "I", "--format", "latex")
    assert out == golden("universal_codim2_I.tex")


def test_verify_small(capsys):
    code, out = run(capsys, "verify", "--max-sheets", "4", "--max-codim", "3")
    assert code == 0
    assert "0 failed" in out
    assert "INFO" in out  # the erratum notes are informational
