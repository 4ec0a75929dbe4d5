"""Comparison classifiers sharing the main model's codec and evaluation path.

Two baselines: a single-hidden-layer network with randomly drawn input
weights and biases (sigmoid activation, ridge-solved output weights), and a
Gaussian-kernel ridge classifier solved in the dual. The random-feature
variant is fully reproducible from its seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist

from gegnet.exceptions import ConditioningError, InvalidParameterError, ShapeError
from gegnet.model import (
    LabelCodec,
    NormalizationRanges,
    _decode,
    _resolve_mode,
    apply_normalization,
    encode_labels,
    fit_normalization,
)
from gegnet.solver import ridge_branch, ridge_weights

__all__ = [
    "RandomFeatureSpec",
    "RandomFeatureModel",
    "fit_random_feature",
    "KernelSpec",
    "KernelRidgeModel",
    "fit_kernel_ridge",
]


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-z))


_ACTIVATIONS = {"sigmoid": _sigmoid}


@dataclass(frozen=True)
class RandomFeatureSpec:
    """Hidden-layer draw: size, activation, seed, and sampling ranges."""

    L: int
    seed: int
    activation: str = "sigmoid"
    input_weight_range: tuple[float, float] = (-1.0, 1.0)
    bias_range: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self) -> None:
        if self.L < 1:
            raise InvalidParameterError(f"hidden layer size must be >= 1, got {self.L}")
        if self.activation not in _ACTIVATIONS:
            raise InvalidParameterError(f"unknown activation {self.activation!r}")
        for lo, hi in (self.input_weight_range, self.bias_range):
            if not lo <= hi:
                raise InvalidParameterError(f"empty sampling range ({lo}, {hi})")


@dataclass(frozen=True)
class RandomFeatureModel:
    spec: RandomFeatureSpec
    ranges: NormalizationRanges
    input_weights: np.ndarray  # (m, L)
    biases: np.ndarray  # (L,)
    weights: np.ndarray  # (L, K)
    codec: LabelCodec
    gamma: float
    mode: str
    branch: str

    def _hidden(self, X_raw: np.ndarray) -> np.ndarray:
        Xn = apply_normalization(X_raw, self.ranges)
        return _ACTIVATIONS[self.spec.activation](Xn @ self.input_weights + self.biases)

    def scores(self, X_raw: np.ndarray) -> np.ndarray:
        return self._hidden(X_raw) @ self.weights

    def predict(self, X_raw: np.ndarray) -> np.ndarray:
        return _decode(self.scores(X_raw), self.codec, self.mode)


def fit_random_feature(
    X_raw: np.ndarray,
    labels,
    spec: RandomFeatureSpec,
    gamma: float,
    mode: str = "auto",
) -> RandomFeatureModel:
    """Draw the hidden layer from the seed, then ridge-solve output weights."""
    X_raw = np.asarray(X_raw, dtype=float)
    if X_raw.ndim != 2 or X_raw.shape[0] != len(labels):
        raise ShapeError(
            f"features of shape {X_raw.shape} do not match {len(labels)} labels"
        )
    codec = LabelCodec.from_labels(labels)
    mode = _resolve_mode(mode, codec.K)
    ranges = fit_normalization(X_raw)
    rng = np.random.default_rng(spec.seed)
    lo_w, hi_w = spec.input_weight_range
    lo_b, hi_b = spec.bias_range
    W = rng.uniform(lo_w, hi_w, size=(X_raw.shape[1], spec.L))
    b = rng.uniform(lo_b, hi_b, size=spec.L)
    H = _ACTIVATIONS[spec.activation](apply_normalization(X_raw, ranges) @ W + b)
    Phi = encode_labels(labels, codec, mode)
    branch = ridge_branch(H.shape[0], H.shape[1])
    weights = ridge_weights(H, Phi, gamma)
    return RandomFeatureModel(
        spec=spec, ranges=ranges, input_weights=W, biases=b, weights=weights,
        codec=codec, gamma=float(gamma), mode=mode, branch=branch,
    )


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel exp(-delta*||u - v||^2) with cost parameter C."""

    delta: float
    C: float

    def __post_init__(self) -> None:
        if not self.delta > 0.0:
            raise InvalidParameterError(f"kernel width parameter must be > 0, got {self.delta}")
        if not self.C > 0.0:
            raise InvalidParameterError(f"cost parameter must be > 0, got {self.C}")


@dataclass(frozen=True)
class KernelRidgeModel:
    spec: KernelSpec
    ranges: NormalizationRanges
    support: np.ndarray  # (S, m) normalized training inputs
    dual_coef: np.ndarray  # (S, K)
    codec: LabelCodec
    mode: str

    def scores(self, X_raw: np.ndarray) -> np.ndarray:
        Xn = apply_normalization(X_raw, self.ranges)
        K = np.exp(-self.spec.delta * cdist(Xn, self.support, "sqeuclidean"))
        return K @ self.dual_coef

    def predict(self, X_raw: np.ndarray) -> np.ndarray:
        return _decode(self.scores(X_raw), self.codec, self.mode)


def fit_kernel_ridge(
    X_raw: np.ndarray,
    labels,
    spec: KernelSpec,
    mode: str = "auto",
) -> KernelRidgeModel:
    """Solve (I/C + Omega) alpha = Phi with Omega the Gaussian kernel matrix."""
    X_raw = np.asarray(X_raw, dtype=float)
    if X_raw.ndim != 2 or X_raw.shape[0] != len(labels):
        raise ShapeError(
            f"features of shape {X_raw.shape} do not match {len(labels)} labels"
        )
    codec = LabelCodec.from_labels(labels)
    mode = _resolve_mode(mode, codec.K)
    ranges = fit_normalization(X_raw)
    Xn = apply_normalization(X_raw, ranges)
    Omega = np.exp(-spec.delta * cdist(Xn, Xn, "sqeuclidean"))
    Omega[np.diag_indices_from(Omega)] += 1.0 / spec.C
    Phi = encode_labels(labels, codec, mode)
    try:
        factor = linalg.cho_factor(Omega, overwrite_a=True)
        alpha = linalg.cho_solve(factor, Phi)
    except linalg.LinAlgError as exc:
        raise ConditioningError(
            f"kernel system factorization failed for C={spec.C}, delta={spec.delta} "
            f"on a {Xn.shape[0]}x{Xn.shape[0]} system"
        ) from exc
    return KernelRidgeModel(
        spec=spec, ranges=ranges, support=Xn, dual_coef=alpha, codec=codec, mode=mode,
    )
