import ast
import logging
import math
import operator

import numpy as np
from numpy.typing import NDArray

from pytelebench.utils.exceptions import DomainError

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def _evaluate(node: ast.AST) -> float:
    if isinstance(node, ast.Expression):
        return _evaluate(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int | float):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        return _BINARY[type(node.op)](_evaluate(node.left), _evaluate(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        return _UNARY[type(node.op)](_evaluate(node.operand))
    raise ValueError(f"unsupported token {ast.dump(node)}")


def parse_value(text: str) -> float:
    """
    Parse a real number, allowing arithmetic on ``pi`` such as ``pi/2`` or ``3*pi/16``.

    Raises:
        DomainError: If the text is not a finite arithmetic expression.
    """
    try:
        value = _evaluate(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError) as e:
        logging.error(f"Cannot parse numeric value {text!r}: {e}")
        raise DomainError(f"Cannot parse numeric value {text!r}") from e
    if not math.isfinite(value):
        logging.error(f"Numeric value {text!r} is not finite.")
        raise DomainError(f"Numeric value {text!r} is not finite")
    return value


def parse_grid(text: str) -> NDArray[np.float64]:
    """
    Parse a grid specification.

    Accepted forms are ``start:stop:count`` (inclusive at both ends, count >= 1),
    a comma-separated list of values, or a single value.

    Example:
        parse_grid("0:pi/2:9")  # nine axes from the pole to the equator
    """
    parts = text.split(":")
    if len(parts) == 1:
        return np.array([parse_value(v) for v in text.split(",") if v.strip()])
    if len(parts) != 3:
        logging.error(f"Grid {text!r} is not of the form start:stop:count.")
        raise DomainError(f"Grid {text!r} is not of the form start:stop:count")

    start, stop = parse_value(parts[0]), parse_value(parts[1])
    try:
        count = int(parts[2])
    except ValueError as e:
        logging.error(f"Grid count {parts[2]!r} is not an integer.")
        raise DomainError(f"Grid count {parts[2]!r} is not an integer") from e
    if count < 1:
        logging.error(f"Grid count must be positive, got {count}.")
        raise DomainError(f"Grid count must be positive, got {count}")
    if count == 1:
        return np.array([start])
    return np.linspace(start, stop, count)
