"""Dense tensors, flattenings, 2x2x2 sub-block enumeration, symmetric coords.

Tensors are numpy arrays in row-major entry order: float64 for numeric work,
object dtype holding ints/Fractions when every entry is exactly representable.
Mode indices are 0-based throughout the API; serialized reports label modes
from 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactsolve import exact_rank
from .multipoly import as_fraction

Shape = tuple[int, ...]


class ShapeMismatch(ValueError):
    pass


class InvalidModes(ValueError):
    pass


class ArityTooSmall(ValueError):
    pass


class InvalidSelector(ValueError):
    pass


def is_exact(t: np.ndarray) -> bool:
    return t.dtype == object


def tensor(shape: Sequence[int], entries: Sequence) -> np.ndarray:
    """Build a tensor from row-major entries; exact inputs stay exact."""
    shape = tuple(int(n) for n in shape)
    if any(n < 1 for n in shape):
        raise ShapeMismatch(f"invalid shape {shape}")
    flat = list(entries)
    expected = int(np.prod(shape))
    if len(flat) != expected:
        raise ShapeMismatch(f"expected {expected} entries, got {len(flat)}")
    if all(isinstance(v, (int, Fraction)) or isinstance(v, str) for v in flat):
        arr = np.empty(expected, dtype=object)
        for i, v in enumerate(flat):
            arr[i] = as_fraction(v) if isinstance(v, str) else v
        return arr.reshape(shape)
    return np.asarray(flat, dtype=float).reshape(shape)

def to_float(t: np.ndarray) -> np.ndarray:
    return t.astype(float) if is_exact(t) else t


def outer(vectors: Sequence[np.ndarray]) -> np.ndarray:
    result = np.asarray(vectors[0])
    for v in vectors[1:]:
        result = np.multiply.outer(result, np.asarray(v))
    return result


def frobenius_norm(t: np.ndarray) -> float:
    return float(np.linalg.norm(to_float(t).ravel()))


def _check_modes(ndim: int, modes: Iterable[int]) -> tuple[int, ...]:
    modes = tuple(sorted(set(int(m) for m in modes)))
    if not modes:
        raise InvalidModes("row mode set is empty")
    if any(m < 0 or m >= ndim for m in modes):
        raise InvalidModes(f"modes {modes} out of range for order {ndim}")
    if len(modes) == ndim:
        raise InvalidModes("row modes must be a proper subset of all modes")
    return modes


def flatten(t: np.ndarray, row_modes: Iterable[int]) -> np.ndarray:
    """Matrix with the chosen modes as rows, remaining modes as columns.

    Both groups keep their original mode order and enumerate multi-indices
    row-major, so the (3,2,2) mode-0 flattening has columns ordered
    (0,0),(0,1),(1,0),(1,1).
    """
    rows = _check_modes(t.ndim, row_modes)
    cols = tuple(m for m in range(t.ndim) if m not in rows)
    moved = np.transpose(t, rows + cols)
    nrow = int(np.prod([t.shape[m] for m in rows]))
    return moved.reshape(nrow, -1)


def unflatten(matrix: np.ndarray, shape: Sequence[int], row_modes: Iterable[int]) -> np.ndarray:
    shape = tuple(shape)
    rows = _check_modes(len(shape), row_modes)
    cols = tuple(m for m in range(len(shape)) if m not in rows)
    interim = matrix.reshape([shape[m] for m in rows] + [shape[m] for m in cols])
    inverse = np.argsort(rows + cols)
    return np.transpose(interim, inverse)


def numeric_rank(matrix: np.ndarray, tol: float = 1e-8) -> int:
    """Rank by singular values above tol * sigma_max."""
    m = to_float(np.asarray(matrix))
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def exact_matrix_rank(matrix: np.ndarray) -> int:
    rows = [list(row) for row in np.asarray(matrix, dtype=object)]
    return exact_rank(rows)


def matrix_rank(matrix: np.ndarray, tol: float = 1e-8, exact: bool | None = None) -> int:
    if exact is None:
        exact = isinstance(matrix, np.ndarray) and matrix.dtype == object
    return exact_matrix_rank(matrix) if exact else numeric_rank(matrix, tol)


@dataclass(frozen=True)
class SubBlockSelector:
    """A 2x2x2 sub-block: three free modes, an index pair per free mode, and
    a fixed index for every remaining mode."""

    free_modes: tuple[int, int, int]
    index_pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    fixed: tuple[tuple[int, int], ...]

    def label(self) -> str:
        pairs = ",".join(f"{m + 1}:({i},{j})" for m, (i, j) in zip(self.free_modes, self.index_pairs))
        fixed = ",".join(f"{m + 1}={i}" for m, i in self.fixed)
        return f"modes[{pairs}]" + (f" fixed[{fixed}]" if fixed else "")


def enumerate_subblocks(shape: Sequence[int]) -> list[SubBlockSelector]:
    """Every 2x2x2 sub-block selector of a tensor shape, deterministic order."""
    shape = tuple(shape)
    d = len(shape)
    if d < 3:
        raise ArityTooSmall("sub-blocks need at least three modes")
    out: list[SubBlockSelector] = []
    for free in itertools.combinations(range(d), 3):
        if any(shape[m] < 2 for m in free):
            continue
        others = [m for m in range(d) if m not in free]
        pair_choices = [list(itertools.combinations(range(shape[m]), 2)) for m in free]
        for pairs in itertools.product(*pair_choices):
            for fixed_vals in itertools.product(*[range(shape[m]) for m in others]):
                out.append(SubBlockSelector(free, tuple(pairs), tuple(zip(others, fixed_vals))))
    return out


def extract_subblock(t: np.ndarray, selector: SubBlockSelector) -> np.ndarray:
    if len(selector.free_modes) != 3:
        raise InvalidSelector("selector must have exactly three free modes")
    idx: list[object] = [None] * t.ndim
    for m, value in selector.fixed:
        if not (0 <= value < t.shape[m]):
            raise InvalidSelector(f"fixed index {value} out of range in mode {m}")
        idx[m] = value
    out = np.empty((2, 2, 2), dtype=t.dtype)
    for eps in itertools.product((0, 1), repeat=3):
        pos = list(idx)
        for m, pair, e in zip(selector.free_modes, selector.index_pairs, eps):
            if not (0 <= pair[0] < pair[1] < t.shape[m]):
                raise InvalidSelector(f"bad index pair {pair} in mode {m}")
            pos[m] = pair[e]
        out[eps] = t[tuple(pos)]
    return out


def squeeze_ones(t: np.ndarray) -> np.ndarray:
    """Drop size-1 modes; a 1 x n x m tensor certifies as an n x m matrix."""
    keep = tuple(m for m, n in enumerate(t.shape) if n > 1)
    if len(keep) == t.ndim:
        return t
    return t.reshape([t.shape[m] for m in keep]) if keep else t.reshape([1])


# ---------------------------------------------------------------- symmetric

@dataclass
class SymTensorCoords:
    """Coordinates of a symmetric tensor in the scaled monomial basis.

    coeffs maps each multidegree u (|u| = d, length n) to the coordinate x_u;
    the corresponding polynomial is sum of binom(d, u) x_u t^u.
    """

    n: int
    d: int
    coeffs: dict[tuple[int, ...], object]

    def __post_init__(self):
        expected = comb(self.n + self.d - 1, self.d)
        if len(self.coeffs) != expected:
            raise ShapeMismatch(
                f"need {expected} coordinates for n={self.n}, d={self.d}, got {len(self.coeffs)}"
            )
        for u in self.coeffs:
            if len(u) != self.n or any(e < 0 for e in u) or sum(u) != self.d:
                raise ShapeMismatch(f"bad multidegree {u}")

    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in self.coeffs.values())


def multidegrees(n: int, d: int) -> list[tuple[int, ...]]:
    """All multidegrees of total degree d in n slots, descending lex."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in multidegrees(n - 1, d - first):
            out.append((first,) + rest)
    return out


def index_multidegree(index: Sequence[int], n: int) -> tuple[int, ...]:
    u = [0] * n
    for i in index:
        u[i] += 1
    return tuple(u)


def sym_to_tensor(f: SymTensorCoords) -> np.ndarray:
    """Symmetric tensor with t[i_1 .. i_d] = x_(multidegree of the index)."""
    shape = (f.n,) * f.d
    exact = f.is_exact()
    t = np.empty(shape, dtype=object if exact else float)
    for index in np.ndindex(shape):
        v = f.coeffs[index_multidegree(index, f.n)]
        t[index] = v if exact else float(v)
    return t


# --------------------------------------------------------------------- JSON

def _entry_to_json(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


def tensor_to_json(t: np.ndarray) -> dict:
    return {
        "shape": list(t.shape),
        "entries": [_entry_to_json(v) for v in t.ravel()],
    }


def tensor_from_json(payload: Mapping) -> np.ndarray:
    return tensor(payload["shape"], payload["entries"])


def sym_to_json(f: SymTensorCoords) -> dict:
    return {
        "n": f.n,
        "d": f.d,
        "coeffs": {
            ",".join(str(e) for e in u): _entry_to_json(v)
            for u, v in sorted(f.coeffs.items(), reverse=True)
        },
    }


def sym_from_json(payload: Mapping) -> SymTensorCoords:
    """Multidegrees omitted from the JSON coeffs count as zero."""
    n, d = int(payload["n"]), int(payload["d"])
    coeffs = {}
    exact = all(isinstance(v, (int, str)) for v in payload["coeffs"].values())
    for key, value in payload["coeffs"].items():
        u = tuple(int(p) for p in key.split(","))
        if isinstance(value, str):
            coeffs[u] = as_fraction(value)
        else:
            coeffs[u] = value if exact else float(value)
    for u in multidegrees(n, d):
        coeffs.setdefault(u, Fraction(0) if exact else 0.0)
    return SymTensorCoords(n, d, coeffs)
