"""One-dimensional Gegenbauer polynomial evaluation.

The family ``g_n`` is parameterized by ``lam > 0`` and defined by the
three-term recurrence

    g_0(x) = 1
    g_1(x) = 2*lam*x
    g_n(x) = a_n*x*g_{n-1}(x) - b_n*g_{n-2}(x),   n >= 2

with ``a_n = 2*(n + lam - 1)/n`` and ``b_n = (n + 2*lam - 2)/n``. It
specializes to Legendre polynomials at ``lam = 0.5`` and to Chebyshev
polynomials of the second kind at ``lam = 1``.

``eval_recurrence`` is the authoritative evaluation used everywhere
downstream; ``eval_closed_form`` exists only as an independent cross-check.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import roots_gegenbauer

from gegnet.exceptions import (
    DegreeTooLargeError,
    InsufficientQuadratureError,
    InvalidParameterError,
)

__all__ = [
    "CLOSED_FORM_MAX_DEGREE",
    "eval_recurrence",
    "eval_all_degrees",
    "eval_closed_form",
    "recurrence_table",
    "orthogonality_inner_product",
]

# Pochhammer factors in the closed form grow factorially; above this degree
# they are computed in log space.
CLOSED_FORM_MAX_DEGREE = 30
_LOG_POCHHAMMER_DEGREE = 12


def _check_degree(n: int) -> int:
    if n != int(n) or n < 0:
        raise InvalidParameterError(f"degree must be a non-negative integer, got {n}")
    return int(n)


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise InvalidParameterError(f"polynomial parameter must be finite and > 0, got {lam}")
    return lam


def _check_x(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidParameterError(f"evaluation point must be finite, got {x}")
    return x


def eval_recurrence(n: int, lam: float, x: float) -> float:
    """Evaluate the degree-``n`` polynomial at ``x`` by the recurrence."""
    n = _check_degree(n)
    lam = _check_lambda(lam)
    x = _check_x(x)
    if n == 0:
        return 1.0
    g_prev = 1.0
    g = 2.0 * lam * x
    for k in range(2, n + 1):
        a = 2.0 * (k + lam - 1.0) / k
        b = (k + 2.0 * lam - 2.0) / k
        g_prev, g = g, a * x * g - b * g_prev
    return g


def eval_all_degrees(n_max: int, lam: float, x: float) -> np.ndarray:
    """All degrees ``0..n_max`` at ``x`` in one recurrence pass.

    Element ``i`` equals ``eval_recurrence(i, lam, x)`` bit for bit: the
    arithmetic is the same expression in the same order.
    """
    n_max = _check_degree(n_max)
    lam = _check_lambda(lam)
    x = _check_x(x)
    out = np.empty(n_max + 1)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * lam * x
    for k in range(2, n_max + 1):
        a = 2.0 * (k + lam - 1.0) / k
        b = (k + 2.0 * lam - 2.0) / k
        out[k] = a * x * out[k - 1] - b * out[k - 2]
    return out


def recurrence_table(x: np.ndarray, n_max: int, lam: float) -> np.ndarray:
    """Vectorized recurrence: shape ``(n_max + 1, len(x))`` table over points.

    Row ``i`` agrees with ``eval_recurrence(i, lam, x_j)`` at every point;
    the elementwise operation order matches the scalar path.
    """
    n_max = _check_degree(n_max)
    lam = _check_lambda(lam)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidParameterError("recurrence_table expects a 1-D array of points")
    if not np.all(np.isfinite(x)):
        raise InvalidParameterError("evaluation points must be finite")
    out = np.empty((n_max + 1, x.size))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * lam * x
    for k in range(2, n_max + 1):
        a = 2.0 * (k + lam - 1.0) / k
        b = (k + 2.0 * lam - 2.0) / k
        out[k] = a * x * out[k - 1] - b * out[k - 2]
    return out


def _pochhammer(a: float, k: int) -> float:
    # rising factorial a*(a+1)*...*(a+k-1)
    p = 1.0
    for i in range(k):
        p *= a + i
    return p


def _log_pochhammer(a: float, k: int) -> float:
    # valid for a > 0
    return math.lgamma(a + k) - math.lgamma(a)


def eval_closed_form(n: int, lam: float, x: float) -> float:
    """Evaluate by the explicit series in powers of ``(x - 1)/2``.

    The coefficient of ``((x-1)/2)**k`` is
    ``(2*lam)_n * (2*lam+n)_k / (k! * (n-k)! * (lam+1/2)_k)`` with ``(a)_k``
    the rising factorial. Used only as a cross-check oracle for
    ``eval_recurrence``; degrees above ``CLOSED_FORM_MAX_DEGREE`` are
    rejected because the Pochhammer products overflow usefulness.
    """
    n = _check_degree(n)
    lam = _check_lambda(lam)
    x = _check_x(x)
    if n > CLOSED_FORM_MAX_DEGREE:
        raise DegreeTooLargeError(
            f"closed form supports degree <= {CLOSED_FORM_MAX_DEGREE}, got {n}"
        )
    z = (x - 1.0) / 2.0
    total = 0.0
    if n <= _LOG_POCHHAMMER_DEGREE:
        poch_2lam_n = _pochhammer(2.0 * lam, n)
        for k in range(n + 1):
            coeff = (
                poch_2lam_n
                * _pochhammer(2.0 * lam + n, k)
                / (math.factorial(k) * math.factorial(n - k) * _pochhammer(lam + 0.5, k))
            )
            total += coeff * z**k
    else:
        # All Pochhammer arguments are positive, so only z**k carries sign.
        log_poch_2lam_n = _log_pochhammer(2.0 * lam, n)
        for k in range(n + 1):
            log_coeff = (
                log_poch_2lam_n
                + _log_pochhammer(2.0 * lam + n, k)
                - math.lgamma(k + 1)
                - math.lgamma(n - k + 1)
                - _log_pochhammer(lam + 0.5, k)
            )
            total += math.exp(log_coeff) * z**k
    return total


def orthogonality_inner_product(i: int, j: int, lam: float, quad_points: int) -> float:
    """Weighted inner product of degrees ``i`` and ``j`` on [-1, 1].

    Computed by Gaussian quadrature whose weight is ``(1 - t^2)**(lam - 1/2)``,
    so the integrand seen by the rule is the polynomial product itself. Near
    zero for ``i != j``; strictly positive for ``i == j``.
    """
    i = _check_degree(i)
    j = _check_degree(j)
    lam = _check_lambda(lam)
    if quad_points < i + j + 2:
        raise InsufficientQuadratureError(
            f"need at least {i + j + 2} quadrature points for degrees ({i}, {j}), "
            f"got {quad_points}"
        )
    nodes, weights = roots_gegenbauer(quad_points, lam)
    gi = recurrence_table(nodes, i, lam)[i]
    gj = recurrence_table(nodes, j, lam)[j]
    return float(np.dot(weights, gi * gj))
