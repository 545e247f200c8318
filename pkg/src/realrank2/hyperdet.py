"""The 2x2x2 hyperdeterminant and its symmetric restrictions.

Sign conventions follow the normalization in which a sum of two real rank-one
tensors has nonnegative hyperdeterminant and a conjugate pair of complex
rank-one tensors has nonpositive hyperdeterminant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .multipoly import MultiPoly, det_bareiss
from .tensors import (
    SubBlockSelector,
    enumerate_subblocks,
    extract_subblock,
    is_exact,
    ShapeMismatch,
)

DEFAULT_ZERO_TOL_SCALE = 1e-10


def hyperdet222(t: np.ndarray):
    """Hyperdeterminant of a 2x2x2 tensor; exact when the entries are exact."""
    if t.shape != (2, 2, 2):
        raise ShapeMismatch(f"hyperdet222 needs shape (2, 2, 2), got {t.shape}")
    x000, x001, x010, x011, x100, x101, x110, x111 = t.ravel().tolist()
    return (
        x000 * x000 * x111 * x111
        + x001 * x001 * x110 * x110
        + x010 * x010 * x101 * x101
        + x011 * x011 * x100 * x100
        + 4 * x000 * x011 * x101 * x110
        + 4 * x001 * x010 * x100 * x111
        - 2 * x000 * x001 * x110 * x111
        - 2 * x000 * x010 * x101 * x111
        - 2 * x000 * x011 * x100 * x111
        - 2 * x001 * x010 * x101 * x110
        - 2 * x001 * x011 * x100 * x110
        - 2 * x010 * x011 * x100 * x101
    )


def hyperdet_zero_tol(t: np.ndarray, scale: float = DEFAULT_ZERO_TOL_SCALE):
    """Zero threshold for hyperdet values of sub-blocks of t.

    The hyperdeterminant is quartic in the entries, hence the fourth power.
    Exact tensors use an exact zero test.
    """
    if is_exact(t):
        return 0
    peak = float(np.max(np.abs(t))) if t.size else 0.0
    return scale * (1.0 + peak) ** 4


@dataclass
class HyperdetReport:
    """All 2x2x2 sub-block hyperdeterminants of a tensor, with sign counts."""

    values: list[tuple[str, object]]
    min_value: object
    argmin: str | None
    num_positive: int
    num_zero: int
    num_negative: int
    zero_tol: object

    def to_json(self) -> dict:
        return {
            "values": [{"selector": k, "value": _num(v)} for k, v in self.values],
            "min_value": _num(self.min_value) if self.min_value is not None else None,
            "argmin": self.argmin,
            "num_positive": self.num_positive,
            "num_zero": self.num_zero,
            "num_negative": self.num_negative,
            "zero_tol": _num(self.zero_tol),
        }


def _num(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def report_from_values(values: list[tuple[str, object]], zero_tol) -> HyperdetReport:
    num_pos = sum(1 for _, v in values if v > zero_tol)
    num_neg = sum(1 for _, v in values if v < -zero_tol)
    num_zero = len(values) - num_pos - num_neg
    if values:
        argmin, min_value = min(values, key=lambda kv: kv[1])
    else:
        argmin, min_value = None, None
    return HyperdetReport(values, min_value, argmin, num_pos, num_zero, num_neg, zero_tol)


def all_subhyperdets(t: np.ndarray, zero_tol_scale: float = DEFAULT_ZERO_TOL_SCALE) -> HyperdetReport:
    """Hyperdeterminants of every 2x2x2 sub-block, with a scaled zero test."""
    zero_tol = hyperdet_zero_tol(t, zero_tol_scale)
    values = []
    for sel in enumerate_subblocks(t.shape):
        values.append((sel.label(), hyperdet222(extract_subblock(t, sel))))
    return report_from_values(values, zero_tol)


# ----------------------------------------------------- symmetric restriction

def discriminant_quartic(coords: Sequence, i: int):
    """Shifted binary-cubic discriminant D_i on coordinates (x_i .. x_{i+3}).

    Equals the hyperdeterminant of any 2x2x2 sub-block of the symmetric
    tensor whose fixed indices sum to i.
    """
    d = len(coords) - 1
    if not 0 <= i <= d - 3:
        raise ValueError(f"need 0 <= i <= d-3 = {d - 3}, got {i}")
    a, b, c, e = coords[i], coords[i + 1], coords[i + 2], coords[i + 3]
    return (
        a * a * e * e
        - 6 * a * b * c * e
        - 3 * b * b * c * c
        + 4 * b * b * b * e
        + 4 * a * c * c * c
    )


def discriminant_quartic_poly(d: int, i: int, names: Sequence[str] | None = None) -> MultiPoly:
    """D_i as an exact polynomial in the coordinates x_0 .. x_d."""
    if names is None:
        names = tuple(f"x{j}" for j in range(d + 1))
    coords = [MultiPoly.variable(nm, names) for nm in names]
    return discriminant_quartic(coords, i)


def cubic_discriminant_determinant() -> MultiPoly:
    """The binary-cubic discriminant as the classical 4x4 determinant.

    The matrix is the Sylvester resultant of the two rows of the cubic's
    catalecticant; expanding it gives exactly D_0.
    """
    names = ("x0", "x1", "x2", "x3")
    x0, x1, x2, x3 = (MultiPoly.variable(nm, names) for nm in names)
    zero = MultiPoly.zero(names)
    rows = [
        [x0, 2 * x1, x2, zero],
        [zero, x0, 2 * x1, x2],
        [x1, 2 * x2, x3, zero],
        [zero, x1, 2 * x2, x3],
    ]
    return det_bareiss(rows)
