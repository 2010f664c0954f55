"""Exact and floating kernel computations for small dense matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Tuple

import numpy as np

DEFAULT_KERNEL_TOL = 1e-8


def _integer_rows(m) -> list:
    rows = []
    for row in np.asarray(m, dtype=object).tolist():
        fr = [Fraction(x) for x in row]
        scale = lcm(*(x.denominator for x in fr)) if fr else 1
        rows.append([int(x * scale) for x in fr])
    return rows


def exact_rank(m) -> int:
    """Rank over the rationals via fraction-free (Bareiss) elimination.

    Accepts integer, Fraction, or integral-float entries. Every intermediate
    value is an integer, so the result carries no tolerance.
    """
    a = _integer_rows(m)
    if not a or not a[0]:
        return 0
    n_rows, n_cols = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p_row = a[rank]
        p = p_row[col]
        for r in range(rank + 1, n_rows):
            row = a[r]
            f = row[col]
            if f == 0:
                if p != prev:
                    for c in range(col + 1, n_cols):
                        if row[c]:
                            row[c] = row[c] * p // prev
                continue
            for c in range(col + 1, n_cols):
                row[c] = (row[c] * p - p_row[c] * f) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def gershgorin_radius(m: np.ndarray) -> float:
    """Largest Gershgorin disk extent ``max_i |a_ii| + sum_{j != i} |a_ij|``."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(m), axis=1)))


def float_kernel_dim(m, tol: float = DEFAULT_KERNEL_TOL) -> int:
    """Count eigenvalues below ``tol * max(1, gershgorin_radius)`` (symmetric input)."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        return 0
    threshold = tol * max(1.0, gershgorin_radius(m))
    return int(np.sum(np.abs(np.linalg.eigvalsh(m)) < threshold))


@dataclass(frozen=True)
class DenseSymMatrix:
    """Symmetric matrix ``scale * entries`` with integer ``entries``.

    The integer view is exact; ``to_float`` gives the floating view for
    eigenvalue work. ``labels`` name the rows (vertex ids or simplices).
    """

    entries: np.ndarray
    scale: Fraction = Fraction(1)
    labels: Optional[Tuple] = None

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=object)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {e.shape}")
        e = np.vectorize(int, otypes=[object])(e) if e.size else e
        if not (e == e.T).all():
            raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.labels is not None and len(self.labels) != e.shape[0]:
            raise ValueError("label count does not match side")

    @classmethod
    def from_rational(cls, m, labels=None) -> "DenseSymMatrix":
        m = np.asarray(m, dtype=object)
        if m.size == 0:
            return cls(np.zeros(m.shape, dtype=object), Fraction(1), labels)
        fr = np.vectorize(Fraction, otypes=[object])(m)
        denom = lcm(*(x.denominator for x in fr.flat))
        return cls(fr * denom, Fraction(1, denom), labels)

    @property
    def side(self) -> int:
        return self.entries.shape[0]

    def exact(self) -> np.ndarray:
        """Entries as Fractions (object array)."""
        return np.vectorize(lambda x: self.scale * x, otypes=[object])(self.entries) if self.side else \
            np.zeros((0, 0), dtype=object)

    def to_float(self) -> np.ndarray:
        return self.entries.astype(float) * float(self.scale)

    def rescaled(self, factor) -> "DenseSymMatrix":
        return DenseSymMatrix(self.entries, self.scale * Fraction(factor), self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseSymMatrix):
            return NotImplemented
        return self.side == other.side and bool((self.exact() == other.exact()).all())

    __hash__ = None

    def eigenvalues(self) -> np.ndarray:
        if self.side == 0:
            return np.zeros(0)
        return np.linalg.eigvalsh(self.to_float())


def kernel_dim(m, tol: float = DEFAULT_KERNEL_TOL, exact: Optional[bool] = None) -> int:
    """Dimension of the kernel of a symmetric matrix.

    ``exact=None`` uses exact rank whenever the entries are rational (always the
    case for :class:`DenseSymMatrix`); ``exact=False`` forces the floating,
    scale-aware eigenvalue count.
    """
    if isinstance(m, DenseSymMatrix):
        if exact is False:
            return float_kernel_dim(m.to_float(), tol)
        return m.side - exact_rank(m.entries) if m.scale != 0 else m.side
    arr = np.asarray(m)
    if exact is None:
        exact = arr.dtype == object or np.issubdtype(arr.dtype, np.integer) or \
            (arr.size > 0 and np.all(np.asarray(arr, dtype=float) == np.round(np.asarray(arr, dtype=float))))
    if exact:
        if arr.dtype != object:
            arr = np.round(arr).astype(np.int64).astype(object) if np.issubdtype(arr.dtype, np.floating) else arr
        return arr.shape[0] - exact_rank(arr) if arr.size else arr.shape[0]
    return float_kernel_dim(arr, tol)

