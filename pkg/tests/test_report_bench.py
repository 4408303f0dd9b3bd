import csv
import io
import json
import math
import subprocess
import sys

import pytest

from polyretract.bench import ExperimentConfig, run_convergence_study
from polyretract import cli
from polyretract.cli import main
from polyretract.errors import (
    DomainError,
    NonConvergenceError,
    SingularityError,
    UnsupportedOrderError,
)
from polyretract.report import (
    CSV_HEADER,
    ERROR_FLOOR,
    ConvergenceReport,
    LevelResult,
    SeriesResult,
    attach_orders,
    emit_report,
    observed_order,
    report_from_json,
    report_to_csv,
    report_to_json,
    report_to_table,
)


def small_cfg(**kw):
    base = dict(manifold="grassmann", m=30, p=4, levels=4)
    base.update(kw)
    return ExperimentConfig(**base)


def test_observed_order_examples():
    assert observed_order([1, 1 / 8, 1 / 64]) == [3, 3]
    assert observed_order([1, 0.5]) == [1]
    assert observed_order([1e-3, 1.25e-4, 1.5625e-5]) == pytest.approx([3, 3], abs=1e-12)
    with pytest.raises(DomainError):
        observed_order([1])
    with pytest.raises(DomainError):
        observed_order([1, 0])


def test_floor_and_orders():
    levels = attach_orders([LevelResult(k, 2.0**-k, e) for k, e in enumerate([1e-6, 1e-8, 1e-10, 1e-11, 1e-13, None])])
    assert [lv.floored for lv in levels] == [False, False, False, False, True, True]
    assert levels[0].order is None and levels[4].order is None and levels[5].order is None
    s = SeriesResult(1, levels)
    # the order ending at the last pre-floor level is dropped
    assert s.valid_orders() == pytest.approx([math.log2(100), math.log2(100)])
    clean = SeriesResult(1, attach_orders([LevelResult(k, 2.0**-k, 8.0**-k) for k in range(4)]))
    assert clean.valid_orders() == pytest.approx([3, 3, 3])
    assert math.isnan(SeriesResult(1, attach_orders([LevelResult(0, 1, 1e-15)])).mean_order())
    assert LevelResult(0, 1.0, ERROR_FLOOR).floored is False


def test_config_validation():
    assert ExperimentConfig().m == 50 and ExperimentConfig().p == 50
    cfg = ExperimentConfig("stiefel")
    assert (cfg.m, cfg.p) == (200, 20)
    assert ExperimentConfig("stiefel", tangent_mode="grassmann_only").tangent_mode == "grassmann-only"
    bad = [
        dict(manifold="sphere"),
        dict(levels=1),
        dict(t0=0),
        dict(manifold="grassmann", m=5, p=6),
        dict(manifold="grassmann", m=5, p=5),
        dict(manifold="unitary", m=5, p=4),
        dict(projector="qr"),
        dict(polar_method="halley"),
        dict(tangent_mode="sideways"),
        dict(n_list=()),
        dict(n_list=(13,)),
        dict(scale=0),
    ]
    for kw in bad:
        with pytest.raises(DomainError):
            ExperimentConfig(**kw)
    with pytest.raises(UnsupportedOrderError):
        ExperimentConfig("stiefel", n_list=(4,))


def test_study_is_deterministic():
    a, b = run_convergence_study(small_cfg()), run_convergence_study(small_cfg())
    assert report_to_csv(a) == report_to_csv(b)
    assert report_to_json(a) == report_to_json(b)
    assert report_to_csv(a) != report_to_csv(run_convergence_study(small_cfg(seed=1)))


def test_unitary_study_order_three():
    rep = run_convergence_study(ExperimentConfig("unitary", m=50, n_list=(1,)))
    assert 2.7 <= rep.mean_orders()[1] <= 3.3


def test_study_skips_rank_deficient_levels():
    rep = run_convergence_study(small_cfg(n_list=(1,), t0=1e13, scale=1.0, levels=2, m=4, p=2))
    assert len(rep.results[0].levels) == 2


def test_csv_schema():
    rep = run_convergence_study(small_cfg())
    text = report_to_csv(rep)
    assert "\r" not in text and text.endswith("\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert len(rows) == 1 + 3 * 4
    for row in rows[1:]:
        assert row[5] in ("true", "false")
        if row[0] == "0":
            assert row[4] == ""
    # 17 significant digits round-trip exactly
    first = rep.results[0].levels[0]
    assert float(rows[1][3]) == first.error and float(rows[1][1]) == first.t


def test_json_round_trip():
    rep = run_convergence_study(small_cfg(projector="qr"))
    text = report_to_json(rep)
    data = json.loads(text)
    assert set(data) == {"config", "results"}
    assert set(data["results"][0]["levels"][0]) == {"level", "t", "error", "order", "floored"}
    assert data["results"][0]["levels"][0]["order"] is None
    back = report_from_json(text)
    assert back == rep
    assert report_to_json(back) == text


def test_table_rows():
    rep = run_convergence_study(small_cfg())
    lines = report_to_table(rep).splitlines()
    assert "t0/t" in lines[0] and "n=3 error" in lines[0]
    assert len(lines) == 2 + 4 + 1
    assert lines[-1].startswith("mean order")


def test_emit_report(tmp_path, capsys):
    rep = run_convergence_study(small_cfg(levels=2))
    out = tmp_path / "r.csv"
    emit_report(rep, "csv", out)
    assert out.read_bytes() == report_to_csv(rep).encode()
    emit_report(rep, "json", "-")
    assert capsys.readouterr().out == report_to_json(rep)
    with pytest.raises(DomainError):
        emit_report(rep, "xml")
    with pytest.raises(OSError, match="missing"):
        emit_report(rep, "csv", tmp_path / "missing" / "r.csv")


def test_report_equality_ignores_diagnostics():
    a = ConvergenceReport({}, [], {"x": 1})
    assert a == ConvergenceReport({}, [])


# ---- CLI ----------------------------------------------------------------


def test_cli_csv_to_file(tmp_path):
    out = tmp_path / "u.csv"
    code = main(["unitary", "--m", "10", "--levels", "3", "--format", "csv", "--out", str(out)])
    assert code == 0
    again = tmp_path / "v.csv"
    main(["unitary", "--m", "10", "--levels", "3", "--format", "csv", "--out", str(again)])
    assert out.read_bytes() == again.read_bytes()
    assert out.read_text().splitlines()[0] == ",".join(CSV_HEADER)


def test_cli_json_and_table(capsys):
    assert main(["stiefel", "--m", "12", "--p", "3", "--tangent", "grassmann-only", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["tangent_mode"] == "grassmann-only"
    assert main(["grassmann", "--m", "12", "--p", "3", "--projector", "qr", "--polar-method", "newton-schulz"]) == 0
    assert "mean order" in capsys.readouterr().out


def test_cli_means(capsys):
    assert main(["means", "--n", "3", "--weights", "0.5,0.3,0.2", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.splitlines()
    assert len(rows) == 7 and rows[1].split(",")[2] == "3"


@pytest.mark.parametrize(
    "argv",
    [
        ["grassmann", "--m", "5", "--p", "5"],
        ["stiefel", "--n", "4"],
        ["unitary", "--levels", "1"],
        ["unitary", "--projector", "qr"],
        ["means", "--n", "2,3"],
        ["means", "--n", "2", "--weights", "0.5,0.6"],
        ["unitary", "--t0", "-1"],
    ],
)
def test_cli_config_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_cli_usage_errors():
    for argv in (["sphere"], ["unitary", "--format", "xml"], ["unitary", "--m", "x"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


def test_cli_cluster_precondition_is_config_error(capsys):
    assert main(["means", "--n", "2", "--t0", "1e6", "--levels", "2"]) == 2
    assert "pi/4" in capsys.readouterr().err


@pytest.mark.parametrize("exc", [NonConvergenceError("stalled", residual=1.0, iterations=5), SingularityError("singular")])
def test_cli_numerical_failure(monkeypatch, capsys, exc):
    def boom(cfg):
        raise exc

    monkeypatch.setattr(cli, "run_convergence_study", boom)
    assert main(["unitary", "--m", "4"]) == 3
    assert "numerical failure" in capsys.readouterr().err


def test_cli_io_error(tmp_path):
    assert main(["unitary", "--m", "4", "--levels", "2", "--out", str(tmp_path / "no" / "x.csv")]) == 1


def test_console_script_module():
    res = subprocess.run(
        [sys.executable, "-m", "polyretract.cli", "unitary", "--m", "6", "--levels", "2", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout.startswith("level,t,n,error,order,floored\n")
