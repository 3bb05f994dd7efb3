import csv
import io
import xml.etree.ElementTree as ET

import pytest

from batnav.cli import main
from batnav.environment import preset
from batnav.planner import FitnessStatistics, PlannerConfig, best_of_runs
from batnav.report import compare_csv, read_trace_csv


def rows(path):
    return list(csv.reader(io.StringIO(path.read_text())))


def snapshot(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir())}


@pytest.fixture
def fast_cfg(tmp_path):
    p = tmp_path / "fast.toml"
    p.write_text("[planner]\nwaypoint_iterations = 10\n")
    return p


def test_bench_small_and_repeatable(tmp_path):
    args = ["bench", "--runs", "2", "--out"]
    assert main(args + [str(tmp_path / "a")]) == 0
    assert main(args + [str(tmp_path / "b")]) == 0
    table = rows(tmp_path / "a" / "bench.csv")
    assert table[0] == ["function", "algorithm", "best", "worst", "mean", "sd", "significant"]
    assert len(table) == 1 + 12
    assert snapshot(tmp_path / "a") == snapshot(tmp_path / "b")


@pytest.mark.parametrize(
    "extra",
    [["--functions"], ["--functions", "ackley"], ["--runs", "1"]],
)
def test_bench_bad_selection(tmp_path, extra):
    assert main(["bench", "--out", str(tmp_path)] + extra) == 2


def test_plan_case1_outputs(tmp_path, fast_cfg):
    out = tmp_path / "plan"
    assert main(["plan", "--algo", "mfba", "--config", str(fast_cfg), "--out", str(out)]) == 0
    summary = rows(out / "summary_mfba.csv")
    assert len(summary) == 1 + 10 + 4
    assert [r[0] for r in summary[-4:]] == ["minimum", "maximum", "Standard deviation", "mean"]
    traces = sorted(out.glob("trace_mfba_run*.csv"))
    assert len(traces) == 10
    for path, row in zip(traces, summary[1:11]):
        records = read_trace_csv(path)
        assert int(row[3]) == len(records) - 1
    ET.fromstring((out / "path_mfba.svg").read_text())


def test_compare_columns_and_determinism(tmp_path, fast_cfg):
    args = ["compare", "--runs", "3", "--config", str(fast_cfg), "--out"]
    assert main(args + [str(tmp_path / "a")]) == 0
    assert main(args + [str(tmp_path / "b")]) == 0
    table = rows(tmp_path / "a" / "compare.csv")
    assert table[0] == ["Fitness", "Standard BA", "MFBA"]
    assert [r[0] for r in table[1:5]] == ["minimum", "maximum", "Standard deviation", "mean"]
    assert snapshot(tmp_path / "a") == snapshot(tmp_path / "b")


def test_compare_requires_both(tmp_path):
    assert main(["compare", "--algo", "ba", "--out", str(tmp_path)]) == 2


def test_self_comparison_has_identical_columns():
    res = best_of_runs(preset("empty"), PlannerConfig(waypoint_iterations=10), run_count=2)
    table = list(csv.reader(io.StringIO(compare_csv({"MFBA": res, "again": res}))))
    assert all(r[1] == r[2] for r in table[1:])


def test_fitness_statistics_ignore_run_order():
    values = [0.051, 0.058, 0.0573, 0.0549]
    a = FitnessStatistics.from_values(values)
    b = FitnessStatistics.from_values(values[::-1])
    assert a == b


def test_bad_config_exit_code(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text("[optimizer]\nalpha = 1.5\n")
    assert main(["plan", "--config", str(p), "--out", str(tmp_path / "o")]) == 2
    assert main(["plan", "--config", str(tmp_path / "missing.toml"), "--out", str(tmp_path / "o")]) == 1


def test_outputs_stay_in_out_dir(tmp_path, fast_cfg, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["plan", "--preset", "empty", "--algo", "ba", "--runs", "1", "--config", str(fast_cfg), "--out", "o"]) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["fast.toml", "o"]
    names = sorted(p.name for p in (tmp_path / "o").iterdir())
    assert names == ["path_ba.svg", "summary_ba.csv", "summary_ba.txt", "trace_ba_run01.csv"]
    svg = (tmp_path / "o" / "path_ba.svg").read_text()
    ET.fromstring(svg)
    assert "ob1" not in svg
