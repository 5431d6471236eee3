"""
Writers for curve tables.

Available classes:
- CurveWriter: CSV (primary), JSON records or parquet output of a DataFrame.
- OutputFormat: The supported formats.
"""

from .writer import CurveWriter, OutputFormat

__all__ = ["CurveWriter", "OutputFormat"]

__version__ = "0.1.0"
__author__ = "Gutto França"
__email__ = "guttolaudie@gmail.com"
