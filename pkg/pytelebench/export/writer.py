import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from pytelebench.utils.config import FLOAT_FORMAT
from pytelebench.utils.exceptions import DomainError


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    PARQUET = "parquet"


def _json_value(value: Any) -> Any:
    if isinstance(value, bool | np.bool_):
        return bool(value)
    if isinstance(value, int | np.integer):
        return int(value)
    if isinstance(value, float | np.floating):
        if math.isnan(value):
            return None
        return float(FLOAT_FORMAT % value)
    return value


class CurveWriter:
    """
    Writes curve tables as long-format CSV, a JSON records mirror or parquet.

    CSV and JSON carry every float with 12 significant digits, so reading a written
    file and writing it again reproduces it byte for byte.

    Attributes:
        fmt (OutputFormat): Output format.

    Methods:
        to_text(frame: pd.DataFrame) -> str: CSV or JSON text of a table.
        write(frame: pd.DataFrame, path: Path) -> Path: Write a table to a file.
        read(path: Path) -> pd.DataFrame: Parse a file written by this writer.
    """

    def __init__(self, fmt: OutputFormat | str = OutputFormat.CSV):
        try:
            self.fmt = OutputFormat(fmt)
        except ValueError as e:
            logging.error(f"Unknown output format {fmt!r}.")
            raise DomainError(f"Unknown output format {fmt!r}") from e

    def to_text(self, frame: pd.DataFrame) -> str:
        if self.fmt is OutputFormat.CSV:
            return frame.to_csv(
                index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n"
            )
        if self.fmt is OutputFormat.JSON:
            records = [
                {column: _json_value(value) for column, value in row.items()}
                for row in frame.to_dict(orient="records")
            ]
            return json.dumps(records, indent=2) + "\n"
        logging.error("Parquet output has no text form.")
        raise DomainError("Parquet output needs a file path")

    def write(self, frame: pd.DataFrame, path: Path) -> Path:
        """
        Write ``frame`` to ``path``, creating parent directories.

        Raises:
            OSError: If the file cannot be written.
        """
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            if self.fmt is OutputFormat.PARQUET:
                frame.to_parquet(path, index=False)
            else:
                with open(path, "w", newline="") as file:
                    file.write(self.to_text(frame))
        except OSError as e:
            logging.error(f"Error writing {self.fmt.value} file {path}: {e}")
            raise
        logging.info(f"Wrote {len(frame)} rows to {path}.")
        return path

    def read(self, path: Path) -> pd.DataFrame:
        path = Path(path)
        if not path.exists():
            logging.error(f"Curve file not found at {path}")
            raise FileNotFoundError(f"Curve file not found at {path}")
        if self.fmt is OutputFormat.CSV:
            return pd.read_csv(path, keep_default_na=False, na_values=[""])
        if self.fmt is OutputFormat.JSON:
            with open(path, "r") as file:
                records = json.load(file)
            columns = list(records[0]) if records else None
            return pd.DataFrame.from_records(records, columns=columns)
        return pd.read_parquet(path)
