"""The polynomial-feature network classifier.

``fit`` composes the whole training pipeline: per-feature min/max
normalization to [0, 1], graded-lex basis enumeration, activation-matrix
construction, +/-1 target encoding, and the closed-form ridge solve. No
iterative training occurs. Binary problems use a single output column
(sign decodes the class); K-class problems use K one-vs-all columns
(argmax decodes).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from gegnet.basis import BasisSpec, build_activation_matrix, make_basis_spec
from gegnet.exceptions import InvalidParameterError, LabelError, ShapeError
from gegnet.solver import ridge_branch, ridge_weights

__all__ = [
    "LabelCodec",
    "NormalizationRanges",
    "TrainedModel",
    "fit_normalization",
    "apply_normalization",
    "encode_labels",
    "fit",
    "predict_scores",
    "predict",
    "accuracy",
]

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabelCodec:
    """Deterministic mapping between raw class labels and +/-1 targets.

    Classes are kept in ascending raw-label order, so repeated fits on
    reshuffled data always agree on target polarity. In binary mode the
    first class encodes to -1 and the second to +1.
    """

    classes: tuple

    def __post_init__(self) -> None:
        if len(self.classes) < 2:
            raise LabelError(f"need at least 2 classes, got {list(self.classes)}")
        if len(set(self.classes)) != len(self.classes):
            raise LabelError("classes must be distinct")

    @property
    def K(self) -> int:
        return len(self.classes)

    @classmethod
    def from_labels(cls, labels) -> "LabelCodec":
        return cls(classes=tuple(sorted(set(np.asarray(labels).tolist()))))

    def positions(self, labels) -> np.ndarray:
        lookup = {c: k for k, c in enumerate(self.classes)}
        try:
            return np.array([lookup[lab] for lab in np.asarray(labels).tolist()], dtype=int)
        except KeyError as exc:
            raise LabelError(f"unknown label {exc.args[0]!r}") from exc


def encode_labels(labels, codec: LabelCodec, mode: str) -> np.ndarray:
    """Targets as an S x K matrix of +/-1 (S x 1 in binary mode)."""
    pos = codec.positions(labels)
    if mode == "binary":
        if codec.K != 2:
            raise LabelError(f"binary mode requires exactly 2 classes, got {codec.K}")
        return np.where(pos == 1, 1.0, -1.0)[:, None]
    if mode == "multiclass":
        Phi = -np.ones((len(pos), codec.K))
        Phi[np.arange(len(pos)), pos] = 1.0
        return Phi
    raise InvalidParameterError(f"mode must be 'binary' or 'multiclass', got {mode!r}")


@dataclass(frozen=True)
class NormalizationRanges:
    """Per-feature (min, max) pairs learned from the training matrix."""

    mins: np.ndarray
    maxs: np.ndarray

    def __post_init__(self) -> None:
        if self.mins.shape != self.maxs.shape or self.mins.ndim != 1:
            raise ShapeError("mins and maxs must be 1-D arrays of equal length")
        if np.any(self.mins > self.maxs):
            raise InvalidParameterError("each feature must satisfy min <= max")

    @property
    def m(self) -> int:
        return self.mins.size


def fit_normalization(X_raw: np.ndarray) -> NormalizationRanges:
    """Columnwise min/max of the training matrix."""
    X_raw = np.asarray(X_raw, dtype=float)
    if X_raw.ndim != 2 or X_raw.shape[0] < 1:
        raise ShapeError("expected a non-empty 2-D sample matrix")
    return NormalizationRanges(mins=X_raw.min(axis=0), maxs=X_raw.max(axis=0))


def apply_normalization(X_raw: np.ndarray, ranges: NormalizationRanges) -> np.ndarray:
    """Map features into [0, 1]: (x - min) / (max - min), clamped.

    Constant features (min == max) map to 0.5; out-of-range values, which
    legitimately occur on test data, are clamped to the boundary rather
    than rejected.
    """
    X_raw = np.asarray(X_raw, dtype=float)
    if X_raw.ndim != 2 or X_raw.shape[1] != ranges.m:
        raise ShapeError(
            f"expected {ranges.m} feature columns, got shape {X_raw.shape}"
        )
    width = ranges.maxs - ranges.mins
    constant = width == 0.0
    safe_width = np.where(constant, 1.0, width)
    X01 = (X_raw - ranges.mins) / safe_width
    X01[:, constant] = 0.5
    return np.clip(X01, 0.0, 1.0)


@dataclass(frozen=True)
class TrainedModel:
    """Everything prediction needs; immutable after fit."""

    spec: BasisSpec
    ranges: NormalizationRanges
    weights: np.ndarray  # (L, K) output weights; K = 1 in binary mode
    codec: LabelCodec
    gamma: float
    mode: str
    branch: str

    def scores(self, X_raw: np.ndarray) -> np.ndarray:
        G = build_activation_matrix(apply_normalization(X_raw, self.ranges), self.spec)
        return G @ self.weights

    def predict(self, X_raw: np.ndarray) -> np.ndarray:
        return _decode(self.scores(X_raw), self.codec, self.mode)


def _decode(scores: np.ndarray, codec: LabelCodec, mode: str) -> np.ndarray:
    classes = np.asarray(codec.classes, dtype=object)
    if mode == "binary":
        return classes[(scores[:, 0] >= 0.0).astype(int)]
    # np.argmax takes the lowest index on ties
    return classes[np.argmax(scores, axis=1)]


def _resolve_mode(mode: str, K: int) -> str:
    if mode == "auto":
        return "binary" if K == 2 else "multiclass"
    if mode not in ("binary", "multiclass"):
        raise InvalidParameterError(f"mode must be 'auto', 'binary' or 'multiclass', got {mode!r}")
    return mode


def fit(
    X_raw: np.ndarray,
    labels,
    lam: float,
    L: int,
    gamma: float,
    mode: str = "auto",
) -> TrainedModel:
    """Train on raw features and raw labels; returns an immutable model."""
    X_raw = np.asarray(X_raw, dtype=float)
    if X_raw.ndim != 2 or X_raw.shape[0] != len(labels):
        raise ShapeError(
            f"features of shape {X_raw.shape} do not match {len(labels)} labels"
        )
    if X_raw.shape[0] < 2:
        raise InvalidParameterError("training requires at least 2 samples")
    codec = LabelCodec.from_labels(labels)
    mode = _resolve_mode(mode, codec.K)
    ranges = fit_normalization(X_raw)
    spec = make_basis_spec(lam, X_raw.shape[1], L)
    G = build_activation_matrix(apply_normalization(X_raw, ranges), spec)
    Phi = encode_labels(labels, codec, mode)
    branch = ridge_branch(G.shape[0], G.shape[1])
    weights = ridge_weights(G, Phi, gamma)
    logger.info(
        "fit: S=%d, m=%d, L=%d, K=%d, mode=%s, branch=%s",
        G.shape[0], spec.m, spec.L, codec.K, mode, branch,
    )
    return TrainedModel(
        spec=spec, ranges=ranges, weights=weights, codec=codec,
        gamma=float(gamma), mode=mode, branch=branch,
    )


def predict_scores(model: TrainedModel, X_raw: np.ndarray) -> np.ndarray:
    """Raw network outputs, one row per sample, one column per output node."""
    return model.scores(X_raw)


def predict(model: TrainedModel, X_raw: np.ndarray) -> np.ndarray:
    """Predicted raw labels: sign rule in binary mode, argmax otherwise."""
    return model.predict(X_raw)


def accuracy(model, X_raw: np.ndarray, labels) -> float:
    """Fraction of rows whose predicted label equals the given label."""
    predicted = model.predict(X_raw)
    actual = np.asarray(labels, dtype=object)
    return float(np.mean(predicted == actual))
