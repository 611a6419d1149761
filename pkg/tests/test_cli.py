"""End-to-end CLI behavior: files written, seed precedence, exit codes."""

import pytest

from relaysim.cli import CSV_COLUMNS, main

TINY = """\
network:
  m: 2
  n: 2
  k: 1
  pnr_db: 10
  qnr_db: 10
sweep:
  axis: relay_count
  values: [1, 2]
run:
  schemes: [mf]
  seed: 5
  trials: 64
"""


@pytest.fixture
def tiny_scenario(tmp_path):
    path = tmp_path / "tiny.yaml"
    path.write_text(TINY)
    return path


def _run(args):
    return main([str(a) for a in args])


def test_run_writes_csv_and_svg(tiny_scenario, tmp_path, capsys):
    out = tmp_path / "out"
    assert _run(["run", tiny_scenario, "--out", out]) == 0
    captured = capsys.readouterr()
    assert "results.csv" in captured.out and "tiny.svg" in captured.out

    csv_text = (out / "results.csv").read_text()
    lines = csv_text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    # 2 axis values x (mf + upper bound)
    assert len(lines) == 1 + 4
    assert csv_text.endswith("\n")
    assert (out / "tiny.svg").exists()

    first = dict(zip(CSV_COLUMNS, lines[1].split(",")))
    assert first["scheme"] == "mf"
    assert first["axis"] == "relay_count"
    assert first["axis_value"] == "1"
    assert first["trials"] == "64"
    assert first["seed"] == "5"
    assert float(first["capacity_mean_bits"]) > 0


def test_rerun_is_byte_identical(tiny_scenario, tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert _run(["run", tiny_scenario, "--out", out_a]) == 0
    assert _run(["run", tiny_scenario, "--out", out_b]) == 0
    assert (out_a / "results.csv").read_bytes() == (out_b / "results.csv").read_bytes()
    assert (out_a / "tiny.svg").read_bytes() == (out_b / "tiny.svg").read_bytes()


def test_worker_count_does_not_change_bytes(tiny_scenario, tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert _run(["run", tiny_scenario, "--out", out_a, "--workers", 1]) == 0
    assert _run(["run", tiny_scenario, "--out", out_b, "--workers", 2]) == 0
    assert (out_a / "results.csv").read_bytes() == (out_b / "results.csv").read_bytes()


def test_seed_and_trials_overrides(tiny_scenario, tmp_path):
    out = tmp_path / "out"
    assert _run(["run", tiny_scenario, "--out", out, "--seed", 11, "--trials", 32]) == 0
    line = (out / "results.csv").read_text().splitlines()[1]
    row = dict(zip(CSV_COLUMNS, line.split(",")))
    assert row["seed"] == "11"
    assert row["trials"] == "32"


def test_seed_flag_beats_environment(tiny_scenario, tmp_path, monkeypatch):
    monkeypatch.setenv("RELAYSIM_SEED", "99")
    out = tmp_path / "out"
    assert _run(["run", tiny_scenario, "--out", out, "--seed", 7]) == 0
    line = (out / "results.csv").read_text().splitlines()[1]
    assert line.split(",")[CSV_COLUMNS.index("seed")] == "7"


def test_environment_seed_beats_scenario(tiny_scenario, tmp_path, monkeypatch):
    monkeypatch.setenv("RELAYSIM_SEED", "99")
    out = tmp_path / "out"
    assert _run(["run", tiny_scenario, "--out", out]) == 0
    line = (out / "results.csv").read_text().splitlines()[1]
    assert line.split(",")[CSV_COLUMNS.index("seed")] == "99"


def test_invalid_environment_seed_is_an_error(tiny_scenario, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RELAYSIM_SEED", "not-a-number")
    assert _run(["run", tiny_scenario, "--out", tmp_path / "out"]) == 2
    assert "RELAYSIM_SEED" in capsys.readouterr().err


def test_unknown_scenario_exits_2_and_lists_bundled(capsys, tmp_path):
    assert _run(["run", "nope", "--out", tmp_path / "out"]) == 2
    err = capsys.readouterr().err
    assert "nope" in err
    assert "fig2" in err and "fig6" in err


def test_malformed_scenario_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text(TINY.replace("n: 2", "n: 0"))
    assert _run(["run", bad, "--out", tmp_path / "out"]) == 2
    assert "bad.yaml" in capsys.readouterr().err


def test_bundled_name_resolves(tmp_path, capsys):
    out = tmp_path / "out"
    assert _run(["run", "fig2", "--out", out, "--trials", 8]) == 0
    assert (out / "fig2.svg").exists()
    lines = (out / "results.csv").read_text().splitlines()
    # 8 relay counts x (af, mf, mf-rzf, upper bound)
    assert len(lines) == 1 + 32


def test_list_scenarios_names_all_bundled(capsys):
    assert _run(["list-scenarios"]) == 0
    out = capsys.readouterr().out
    for name in ("fig2", "fig3", "fig4", "fig5", "fig6"):
        assert name in out
