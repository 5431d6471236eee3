import json
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from pytelebench.benchmarks.nqubit_povm import fidelity_curve
from pytelebench.export.writer import CurveWriter, OutputFormat
from pytelebench.utils.exceptions import DomainError


@pytest.fixture
def frame() -> pd.DataFrame:
    curve = fidelity_curve(1, "projective", mean_n_values=[0.05, 0.25, 0.45])
    asymptotic = fidelity_curve(math.inf, "asymptotic", mean_n_values=[0.1, 0.7])
    return pd.concat([curve.to_frame(), asymptotic.to_frame()], ignore_index=True)


def test_unknown_format() -> None:
    with pytest.raises(DomainError):
        CurveWriter("xlsx")


def test_csv_text(frame: pd.DataFrame) -> None:
    text = CurveWriter("csv").to_text(frame)
    lines = text.split("\n")
    assert lines[0] == "n_particles,kappa,mean_n,strategy,theta0,fidelity"
    assert lines[1].startswith("1,")
    assert "\ninf,,0.1,asymptotic,," in text
    assert text.endswith("\n")
    assert "\r" not in text


def test_json_text(frame: pd.DataFrame) -> None:
    records = json.loads(CurveWriter(OutputFormat.JSON).to_text(frame))
    assert len(records) == len(frame)
    assert records[0]["strategy"] == "projective"
    assert records[-1]["kappa"] is None
    assert records[0]["fidelity"] == float("%.12g" % frame.loc[0, "fidelity"])


def test_parquet_has_no_text(frame: pd.DataFrame) -> None:
    with pytest.raises(DomainError):
        CurveWriter("parquet").to_text(frame)


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_text_formats_rewrite_byte_for_byte(
    frame: pd.DataFrame, tmp_path: Path, fmt: str
) -> None:
    writer = CurveWriter(fmt)
    first = writer.write(frame, tmp_path / f"first.{fmt}")
    again = writer.write(writer.read(first), tmp_path / "nested" / f"again.{fmt}")
    assert first.read_bytes() == again.read_bytes()


def test_parquet_round_trip(frame: pd.DataFrame, tmp_path: Path) -> None:
    writer = CurveWriter("parquet")
    path = writer.write(frame, tmp_path / "curve.parquet")
    pd.testing.assert_frame_equal(writer.read(path), frame)


def test_csv_values_survive_round_trip(frame: pd.DataFrame, tmp_path: Path) -> None:
    writer = CurveWriter("csv")
    back = writer.read(writer.write(frame, tmp_path / "curve.csv"))
    np.testing.assert_allclose(back["fidelity"], frame["fidelity"], rtol=1e-11)
    assert back["theta0"].isna().sum() == frame["theta0"].isna().sum()


def test_read_missing_file(tmp_path: Path) -> None:
    with pytest.raises(FileNotFoundError):
        CurveWriter("csv").read(tmp_path / "missing.csv")
