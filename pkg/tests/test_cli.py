import io
import json
import math
from pathlib import Path
from unittest.mock import patch

import pandas as pd
import pytest

from pytelebench.cli.main import (
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    build_parser,
    main,
    resolve_config,
)
from pytelebench.utils.exceptions import QuadratureError


def _table(capsys: pytest.CaptureFixture) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(capsys.readouterr().out))


def test_bench_do_nothing(capsys: pytest.CaptureFixture) -> None:
    code = main(
        ["bench", "--n", "1", "--strategy", "do-nothing", "--kappa-grid", "1,2"]
    )
    assert code == EXIT_OK
    df = _table(capsys)
    assert list(df.columns) == [
        "n_particles",
        "kappa",
        "mean_n",
        "strategy",
        "theta0",
        "fidelity",
    ]
    assert df["fidelity"].iloc[1] == pytest.approx(0.768657, abs=1e-6)


def test_bench_projective_axes(capsys: pytest.CaptureFixture) -> None:
    argv = ["bench", "--strategy", "projective", "--theta0-grid", "0:pi/2:3"]
    assert main(argv + ["--mean-n-grid", "0.1:0.4:4"]) == EXIT_OK
    assert len(_table(capsys)) == 12


def test_bench_asymptotic(capsys: pytest.CaptureFixture) -> None:
    assert main(["bench", "--n", "inf", "--mean-n-grid", "0.5"]) == EXIT_OK
    assert _table(capsys)["fidelity"].iloc[0] == pytest.approx(0.75)


def test_bench_json(capsys: pytest.CaptureFixture) -> None:
    argv = ["bench", "--strategy", "no-prior", "--kappa-grid", "1", "--format", "json"]
    assert main(argv) == EXIT_OK
    records = json.loads(capsys.readouterr().out)
    assert records[0]["fidelity"] == pytest.approx(0.686965, abs=1e-6)
    assert records[0]["theta0"] is None


def test_bench_to_file(tmp_path: Path, capsys: pytest.CaptureFixture) -> None:
    out = tmp_path / "curves" / "bench.csv"
    argv = ["bench", "--strategy", "do-nothing", "--kappa-grid", "2", "--out", str(out)]
    assert main(argv) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert len(pd.read_csv(out)) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["bench", "--strategy", "povm"],
        ["bench", "--n", "abc", "--kappa-grid", "1"],
        ["bench", "--n", "0", "--kappa-grid", "1"],
        ["bench", "--n", "2", "--strategy", "projective", "--kappa-grid", "1"],
        ["bench", "--mean-n-grid", "0.7"],
        ["bench", "--kappa-grid", "0:1:x"],
        ["estimator", "--n", "inf", "--kappa-grid", "1"],
        ["estimator", "--kappa-grid", "1", "--grid-size", "4"],
        ["figure"],
        ["validate", "--n", "1,inf"],
        ["validate", "--samples", "10", "--kappa-grid", "1", "--n", "1"],
    ],
)
def test_usage_errors_exit_one(argv: list[str]) -> None:
    assert main(argv) == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["teleport"],
        ["bench", "--strategy", "bogus", "--kappa-grid", "1"],
        ["bench", "--kappa-grid", "1", "--mean-n-grid", "0.1"],
        ["bench", "--theta0", "0", "--theta0-grid", "0:1:2", "--kappa-grid", "1"],
        ["figure", "--figure", "fig9"],
        ["validate", "--samples", "many"],
        ["validate", "--theta0", "0", "--theta0-grid", "0,pi/4"],
    ],
)
def test_parser_errors_exit_one(argv: list[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == EXIT_USAGE


def test_help_exits_zero(capsys: pytest.CaptureFixture) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["bench", "--help"])
    assert excinfo.value.code == 0
    assert "--mean-n-grid" in capsys.readouterr().out


def test_config_file_with_flag_override(
    tmp_path: Path, capsys: pytest.CaptureFixture
) -> None:
    config = tmp_path / "run.json"
    config.write_text(
        json.dumps({"n": 1, "strategy": "do-nothing", "kappa-grid": "1", "verbose": 0})
    )
    argv = ["bench", "--config", str(config), "--kappa-grid", "2"]
    assert main(argv) == EXIT_OK
    df = _table(capsys)
    assert list(df["kappa"]) == [2.0]
    assert (df["strategy"] == "do-nothing").all()


@pytest.mark.parametrize(
    "content",
    [
        {"kappa_grid": "1", "colour": "red"},
        {"kappa_grid": "1", "strategy": "teleport"},
        {"kappa_grid": "1", "format": "xlsx"},
    ],
)
def test_bad_config_file(tmp_path: Path, content: dict) -> None:
    config = tmp_path / "run.json"
    config.write_text(json.dumps(content))
    assert main(["bench", "--config", str(config)]) == EXIT_USAGE


def test_missing_or_broken_config_file(tmp_path: Path) -> None:
    assert main(["bench", "--config", str(tmp_path / "none.json")]) == EXIT_USAGE
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert main(["bench", "--config", str(broken)]) == EXIT_USAGE


def test_resolve_config() -> None:
    args = build_parser().parse_args(
        ["validate", "--n", "1,2", "--kappa-grid", "0.5", "--samples", "4000"]
    )
    config = resolve_config(args)
    assert config.command == "validate"
    assert config.particle_list == (1, 2)
    assert list(config.kappa) == [0.5]
    assert config.n_samples == 4000
    assert config.seed is None
    assert config.workers == 1


def test_estimator(capsys: pytest.CaptureFixture) -> None:
    argv = ["estimator", "--n", "1", "--kappa-grid", "1", "--grid-size", "9"]
    assert main(argv) == EXIT_OK
    df = _table(capsys)
    assert len(df) == 9
    assert "small_angle_gain" in df.columns


def test_figure(capsys: pytest.CaptureFixture) -> None:
    assert main(["figure", "--figure", "fig3"]) == EXIT_OK
    assert len(_table(capsys)) == 99


def test_validation_failure_exits_two(capsys: pytest.CaptureFixture) -> None:
    argv = [
        "validate",
        "--n",
        "1",
        "--strategy",
        "do-nothing",
        "--kappa-grid",
        "2",
        "--samples",
        "5000",
        "--seed",
        "3",
        "--analytic-offset",
        "0.1",
    ]
    assert main(argv) == EXIT_VALIDATION
    captured = capsys.readouterr()
    assert "FAIL" in captured.out
    assert "validation failed" in captured.err


def test_validation_pass_applies_overrides(capsys: pytest.CaptureFixture) -> None:
    report = pd.DataFrame({"strategy": ["povm"], "verdict": ["PASS"]})
    with patch(
        "pytelebench.cli.main.get_validation_report", return_value=report
    ) as mock_report:
        argv = ["validate", "--n", "1,2", "--kappa-grid", "0.5", "--seed", "9"]
        assert main(argv) == EXIT_OK
    grid = mock_report.call_args.args[0]
    assert grid["n_particles"] == [1, 2]
    assert grid["kappa"] == [0.5]
    assert mock_report.call_args.kwargs["seed"] == 9
    assert "PASS" in capsys.readouterr().out


def test_numerical_failure_exits_three(capsys: pytest.CaptureFixture) -> None:
    error = QuadratureError("did not converge", estimate=0.5, error_estimate=1e-3)
    with patch("pytelebench.cli.main.get_fidelity_curve", side_effect=error):
        assert main(["bench", "--n", "3", "--kappa-grid", "1"]) == EXIT_NUMERIC
    assert "numerical failure" in capsys.readouterr().err


def test_bench_povm_at_vanishing_concentration(capsys: pytest.CaptureFixture) -> None:
    argv = ["bench", "--n", "1", "--strategy", "povm", "--kappa-grid", "1e-300,1"]
    assert main(argv) == EXIT_OK
    df = _table(capsys)
    assert df["fidelity"].iloc[0] == pytest.approx(2.0 / 3.0, abs=1e-9)
    assert df["mean_n"].iloc[0] == pytest.approx(0.5)


def test_validate_accepts_single_axis_angle() -> None:
    report = pd.DataFrame({"strategy": ["projective"], "verdict": ["PASS"]})
    with patch(
        "pytelebench.cli.main.get_validation_report", return_value=report
    ) as mock_report:
        argv = ["validate", "--n", "1", "--strategy", "projective", "--theta0", "pi/4"]
        assert main(argv) == EXIT_OK
    grid = mock_report.call_args.args[0]
    assert grid["theta0"] == [repr(math.pi / 4)]
    assert grid["strategies"] == ["projective"]
