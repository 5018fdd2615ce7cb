"""Shared numeric helpers and output formatting"""
import csv
import io
import json
import logging

from dataclasses import dataclass, field
from typing import Union

import numpy as np

NUMBER_FORMAT = ".15g"

log = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def format_number(x: float) -> str:
    """Renders a number with a fixed 15 significant digits.  Every numeric value written by pkratzer goes through here, so CSV and JSON output of the same run contain identical strings.

    Args:
        x (float): The number to render.

    Returns:
        str: `x`, formatted.
    """
    return format(float(x), NUMBER_FORMAT)


def require_quantum_number(name: str, value: int) -> int:
    """Checks that `value` is a non-negative integer quantum number.

    Args:
        name (str): The name of the quantum number, used in error messages.
        value (int): The value to check.

    Raises:
        TypeError: If `value` is not an integer.
        ValueError: If `value` is negative.

    Returns:
        int: `value`, as a plain `int`.
    """
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {value!r}")

    if value < 0:
        raise ValueError(f"{name} must be non-negative, got {value}")

    return int(value)


def signed_exp(log_magnitude: np.ndarray, factor: np.ndarray) -> np.ndarray:
    """Computes `factor * exp(log_magnitude)` without ever forming `exp(log_magnitude)` on its own, so that huge and tiny partial results cannot overflow or underflow before they meet.

    Args:
        log_magnitude (np.ndarray): The log of the (positive) prefactor.
        factor (np.ndarray): The signed factor multiplying the prefactor.

    Returns:
        np.ndarray: The product, computed as `sign(factor) * exp(log_magnitude + log|factor|)`.
    """
    factor = np.asarray(factor, dtype=float)
    with np.errstate(divide="ignore"):
        magnitude = np.exp(log_magnitude + np.log(np.abs(factor)))

    return np.sign(factor) * magnitude


def unwrap(values: np.ndarray, like: ArrayLike) -> ArrayLike:
    """Returns a plain `float` when the caller passed a scalar, otherwise the array itself.

    Args:
        values (np.ndarray): The computed values.
        like (ArrayLike): The argument the caller originally passed in.

    Returns:
        ArrayLike: `values` shaped like `like`.
    """
    return float(values) if np.ndim(like) == 0 else values


def relative_sup(residual: np.ndarray, reference: np.ndarray, fallback: np.ndarray = None) -> float:
    """Sup-norm of `residual`, relative to the sup-norm of `reference`.

    Args:
        residual (np.ndarray): The residual samples.
        reference (np.ndarray): Samples whose sup-norm sets the scale.
        fallback (np.ndarray, optional): Samples to use for the scale when `reference` vanishes identically. Defaults to None.

    Returns:
        float: `max|residual| / max|reference|`.  If both scales are zero, the absolute sup-norm of `residual`.
    """
    if not (scale := float(np.max(np.abs(reference)))) and fallback is not None:
        scale = float(np.max(np.abs(fallback)))

    sup = float(np.max(np.abs(residual)))
    return sup / scale if scale else sup


@dataclass
class OutputTable:
    """A table of pre-formatted strings with a fixed column schema, renderable as CSV or JSON"""
    header: list[str]
    rows: list[list[str]] = field(default_factory=list)

    def append(self, *values: Union[int, float, str]) -> None:
        """Adds a row.  Floats are formatted with `format_number`, everything else with `str`.

        Args:
            values (Union[int, float, str]): The cells of the row, in header order.

        Raises:
            ValueError: If the number of cells does not match the header.
        """
        if len(values) != len(self.header):
            raise ValueError(f"expected {len(self.header)} cells, got {len(values)}")

        self.rows.append([format_number(v) if isinstance(v, (float, np.floating)) else str(v) for v in values])

    def to_csv(self) -> str:
        """Renders this table as CSV, header first.

        Returns:
            str: The CSV text.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)

        return buf.getvalue()

    def to_json(self) -> str:
        """Renders this table as a JSON object holding the header and one object per row.  Cells stay strings so that they match the CSV rendering exactly.

        Returns:
            str: The JSON text.
        """
        return json.dumps({"header": self.header, "rows": [dict(zip(self.header, r)) for r in self.rows]}, indent=2) + "\n"

    def render(self, fmt: str) -> str:
        """Renders this table in the named format.

        Args:
            fmt (str): Either "csv" or "json".

        Raises:
            ValueError: If `fmt` is not a known format.

        Returns:
            str: The rendered table.
        """
        if fmt == "csv":
            return self.to_csv()
        elif fmt == "json":
            return self.to_json()

        raise ValueError(f"unknown output format '{fmt}'")
