"""Multivariate tensor-product polynomial basis.

Hidden-layer features are products of one-dimensional polynomials, one factor
per input coordinate, indexed by a vector of per-coordinate degrees. The
basis enumerates the first ``L`` multi-indices in graded-lexicographic order:
total degree ascending, ties broken by ascending lexicographic order on the
degree vector, so the first index is always all zeros (the constant feature).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count, islice
from typing import Iterator

import numpy as np

from gegnet.exceptions import InvalidParameterError, NormalizationViolationError, ShapeError
from gegnet.polynomials import _check_lambda, eval_recurrence, recurrence_table

__all__ = [
    "BasisSpec",
    "enumerate_graded_lex",
    "make_basis_spec",
    "gef_eval",
    "build_activation_matrix",
]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # ascending lexicographic within a fixed total degree
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _graded_lex_stream(m: int) -> Iterator[tuple[int, ...]]:
    for degree in count(0):
        yield from _compositions(degree, m)


def enumerate_graded_lex(m: int, L: int) -> list[tuple[int, ...]]:
    """First ``L`` multi-indices over ``m`` coordinates in graded-lex order."""
    if m < 1:
        raise InvalidParameterError(f"feature dimension must be >= 1, got {m}")
    if L < 1:
        raise InvalidParameterError(f"basis size must be >= 1, got {L}")
    return list(islice(_graded_lex_stream(m), L))


@dataclass(frozen=True)
class BasisSpec:
    """Hidden-layer definition: parameter, dimension, size, ordered indices."""

    lam: float
    m: int
    L: int
    indices: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        _check_lambda(self.lam)
        if len(self.indices) != self.L:
            raise InvalidParameterError(
                f"expected {self.L} multi-indices, got {len(self.indices)}"
            )
        if len(set(self.indices)) != self.L:
            raise InvalidParameterError("multi-indices must be distinct")
        if any(len(idx) != self.m for idx in self.indices):
            raise InvalidParameterError("every multi-index must have length m")
        if any(d < 0 for idx in self.indices for d in idx):
            raise InvalidParameterError("multi-index degrees must be non-negative")
        key = [(sum(idx), idx) for idx in self.indices]
        if key != sorted(key):
            raise InvalidParameterError("multi-indices must be in graded-lex order")
        if any(d != 0 for d in self.indices[0]):
            raise InvalidParameterError("first multi-index must be all zeros")


def make_basis_spec(lam: float, m: int, L: int) -> BasisSpec:
    """Build the spec for the first ``L`` graded-lex indices in dimension ``m``."""
    return BasisSpec(lam=float(lam), m=m, L=L, indices=tuple(enumerate_graded_lex(m, L)))


def gef_eval(index: tuple[int, ...], lam: float, x: np.ndarray) -> float:
    """One basis function: product over coordinates of g_{k_t}(x_t)."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or len(index) != x.size:
        raise ShapeError(
            f"multi-index length {len(index)} does not match point dimension {x.size}"
        )
    value = 1.0
    for k_t, x_t in zip(index, x):
        value *= eval_recurrence(k_t, lam, float(x_t))
    return value


def build_activation_matrix(X: np.ndarray, spec: BasisSpec) -> np.ndarray:
    """Evaluate all basis functions on all rows of ``X``; shape (S, L).

    ``X`` must already be normalized to [0, 1]; violations are hard errors so
    normalization bugs surface early. One recurrence pass per feature column
    serves every basis function, so cost is O(S*(m*d_max + L*m)).
    """
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise ShapeError(f"expected a 2-D sample matrix, got ndim={X.ndim}")
    if X.shape[1] != spec.m:
        raise ShapeError(f"expected {spec.m} feature columns, got {X.shape[1]}")
    bad = ~((X >= 0.0) & (X <= 1.0))
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NormalizationViolationError(
            f"feature value {X[row, col]} at row {row}, column {col} "
            "is outside the normalized domain [0, 1]"
        )
    S = X.shape[0]
    degrees = np.asarray(spec.indices, dtype=int)
    G = np.ones((S, spec.L))
    for t in range(spec.m):
        table = recurrence_table(X[:, t], int(degrees[:, t].max()), spec.lam)
        G *= table[degrees[:, t]].T
    return G
