import json
import logging
from pathlib import Path
from typing import Any

from pytelebench.utils.config import FIGURES_JSON, VALIDATION_JSON


def load_json(path: Path) -> dict[str, Any]:
    """
    Load a JSON object from ``path``.

    Raises:
        FileNotFoundError: If the file does not exist.
        json.JSONDecodeError: If the file is not valid JSON.
    """
    if not path.exists():
        logging.error(f"JSON file not found at {path}")
        raise FileNotFoundError(f"JSON file not found at {path}")

    try:
        with open(path, "r") as file:
            content = json.load(file)
        logging.info(f"JSON data loaded successfully from {path}.")
        return dict(content)
    except json.JSONDecodeError as e:
        logging.error(f"Error decoding JSON file {path}: {e}")
        raise


def load_figures(path: Path = FIGURES_JSON) -> dict[str, Any]:
    """Curve families of every reproducible figure, keyed by figure id."""
    return load_json(path)


def load_validation_grid(path: Path = VALIDATION_JSON) -> dict[str, Any]:
    """Default (N, kappa, strategy) grid of the Monte Carlo validation run."""
    return load_json(path)
