import dataclasses
import io

import numpy as np
import pytest
from hypothesis import example, given, settings
from hypothesis import strategies as st

from cfopr.benchmarks import get_objective
from cfopr.core import RunConfig, run_single
from cfopr.diagnostics import step_metrics
from cfopr.errors import InvalidArgumentError
from cfopr.harness import ProtocolConfig, default_protocol, run_protocol
from cfopr.report_io import (
    RunTableRow,
    best_trajectories,
    format_run_table,
    parse_run_table,
    parse_summary,
    read_series,
    write_plot_series,
    write_run_table,
    write_summary,
)

STAMP = "01-02-2026, 03:04:05"


@pytest.fixture(scope="module")
def gp_report():
    return run_protocol(default_protocol("gp"))


def test_table_structure(gp_report):
    text = format_run_table(gp_report, STAMP)
    lines = text.splitlines()
    assert lines[0] == f"Run ID: {STAMP}"
    assert lines[1] == "FUNCTION: GP"
    assert len(lines) == 3 + 1 + 66 + 2
    table = parse_run_table(text)
    assert table.placeholder.fitness == -9999.0 and table.placeholder.run == 0
    assert [r.run for r in table.rows] == list(range(1, 67))
    assert table.total_evaluations == sum(r.n_eval for r in gp_report.runs)
    assert table.best.run == gp_report.best_run_number
    assert table.best.fitness == pytest.approx(gp_report.best_run.best_fitness, abs=1e-8)
    assert all(r.initial_probes == "UNIFORM I-AXIS" for r in table.rows)


def test_gamma_column_renders_three_decimals():
    rep = run_protocol(ProtocolConfig("f16", gamma_start=0.5, gamma_stop=0.5, ppa_min=4, ppa_max=4))
    row = format_run_table(rep, STAMP).splitlines()[4]
    assert row.split()[1] == "0.500"
    assert row.split()[11].endswith("V")


def test_empty_report_rejected(gp_report):
    empty = dataclasses.replace(gp_report, runs=())
    with pytest.raises(InvalidArgumentError):
        format_run_table(empty, STAMP)


def test_write_to_path_and_stream(gp_report, tmp_path):
    buf = io.StringIO()
    write_run_table(gp_report, buf, STAMP)
    write_run_table(gp_report, tmp_path / "t.txt", STAMP)
    assert (tmp_path / "t.txt").read_text() == buf.getvalue()


rows = st.builds(
    RunTableRow,
    run=st.integers(0, 10_000),
    gamma=st.floats(0, 1),
    nt=st.integers(1, 10_000),
    nd=st.integers(1, 100),
    np=st.integers(2, 5000),
    g=st.floats(0, 100),
    delt=st.floats(0.1, 10),
    alpha=st.floats(0, 5),
    beta=st.floats(0, 5),
    steps=st.integers(0, 10_000),
    neval=st.integers(0, 10**9),
    frep=st.floats(0.001, 1),
    fitness=st.floats(-1e15, 1e15),
    initial_probes=st.sampled_from(["UNIFORM I-AXIS", "2D GRID", "RANDOM"]),
)


@settings(max_examples=200, deadline=None)
@given(rows)
@example(RunTableRow(0, 0.1875, 1, 1, 2, 0.0, 0.1, 0.0, 0.0, 0, 0, 1.0, 0.0, "RANDOM"))
def test_row_round_trip(row):
    once = RunTableRow.parse(row.format())
    assert RunTableRow.parse(once.format()) == once
    assert once.run == row.run and once.neval == row.neval
    # half a unit in the last printed digit, plus float slack for exact ties like 0.1875
    assert once.gamma == pytest.approx(row.gamma, abs=5e-4 + 1e-12)
    assert once.fitness == pytest.approx(row.fitness, abs=5e-9 + 1e-12, rel=1e-15)


def test_plot_series(tmp_path):
    res, tr = run_single(get_objective("gp"), RunConfig(gamma=0.9, probes_per_axis=12))
    paths = write_plot_series(tr, step_metrics(tr), tmp_path)
    names = {p.name for p in paths}
    assert {"Fitness", "Davg", "BestProbe", "t1", "t10", "p1", "p16"} <= names
    fit = read_series(tmp_path / "Fitness")
    assert fit.shape == (res.last_step + 1, 2)
    assert fit[-1, 1] == pytest.approx(-3.0, abs=1e-2)
    assert read_series(tmp_path / "t1").shape == (res.last_step + 1, 2)
    np.testing.assert_allclose(read_series(tmp_path / "p3"), tr.R[2].T, atol=1e-9)
    bp = read_series(tmp_path / "BestProbe")
    assert bp[-1, 1] == res.best_probe + 1


def test_trajectory_masking():
    res, tr = run_single(get_objective("f16"), RunConfig(gamma=0.3, probes_per_axis=4))
    k = best_trajectories(tr, 10)
    assert k.shape[0] == min(10, tr.n_probes)
    for j in range(k.shape[1]):
        assert len(set(k[:, j])) == k.shape[0]
        ordered = tr.M[k[:, j], j]
        assert np.all(np.diff(ordered) <= 0)


def test_summary(gp_report):
    buf = io.StringIO()
    write_summary([gp_report, gp_report], buf)
    parsed = parse_summary(buf.getvalue())
    assert [r.objective for r in parsed] == ["gp", "gp"]
    assert parsed[0].gamma_best == gp_report.best_run.gamma
    assert parsed[0].best_ppa == gp_report.best_run.probes_per_axis
    assert parsed[0].total_n_eval == gp_report.total_evaluations
    empty = io.StringIO()
    write_summary([], empty)
    assert empty.getvalue().startswith("#") and parse_summary(empty.getvalue()) == []
