"""Dense complex numerics: expm, principal logm, operator norm, quadrature.

The exponential delegates to scipy's scaling-and-squaring Pade
implementation; spectral radii in this package stay small (at most ~10
for the strongest dissipators), well inside its comfort zone.  The
principal logarithm is an explicit eigendecomposition so that branch-cut
proximity and defective inputs surface as errors instead of silently
degraded results.

Quadrature is a fixed composite 4-point Gauss-Legendre product rule
(order 8), refined by doubling the cell count until two successive
levels agree; the difference between levels is the reported error
estimate.  Everything is deterministic, with a fixed summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import BranchCutError, QuadratureError

__all__ = [
    "QUADRATURE_ORDER",
    "QuadratureResult",
    "expm",
    "interval_quadrature",
    "logm_principal",
    "op_norm",
    "sinc",
    "triangle_quadrature",
]

QUADRATURE_ORDER = 8  # composite 4-point Gauss-Legendre per cell

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(4)


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an adaptive quadrature plus its error estimate and cost."""

    value: np.ndarray
    estimated_error: float
    evaluations: int

    def __post_init__(self):
        if not math.isfinite(self.estimated_error) or self.estimated_error < 0:
            raise ValueError("estimated_error must be finite and >= 0")
        if self.evaluations <= 0:
            raise ValueError("evaluations must be positive")


def _as_square_finite(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def expm(m) -> np.ndarray:
    """Matrix exponential of a square complex matrix."""
    return scipy.linalg.expm(_as_square_finite(m))


def logm_principal(m, branch_tol: float = 1e-8) -> np.ndarray:
    """Principal matrix logarithm via eigendecomposition.

    Requires a diagonalizable input with every eigenvalue farther than
    ``branch_tol`` from the closed negative real axis (the branch cut,
    including 0).  Eigenvalue arguments of the result lie in (-pi, pi).
    A near-defective eigenbasis raises instead of silently degrading.
    """
    m = _as_square_finite(m)
    eigvals, eigvecs = np.linalg.eig(m)
    for value in eigvals:
        # Distance to the ray (-inf, 0]: |Im| beside it, |z| past its end.
        distance = abs(value.imag) if value.real < 0 else abs(value)
        if distance <= branch_tol:
            if abs(value) <= branch_tol:
                raise BranchCutError(
                    f"matrix is singular to working precision (eigenvalue {value:.3e})"
                )
            raise BranchCutError(
                f"eigenvalue {value:.6e} lies within {branch_tol:g} of the"
                " branch cut of the principal logarithm; reduce the evolution"
                " time tau so the eigenphases stay inside (-pi, pi)"
            )
    try:
        inverse = np.linalg.inv(eigvecs)
    except np.linalg.LinAlgError:
        raise ArithmeticError(
            "eigenbasis is singular; the matrix is defective and has no"
            " eigendecomposition logarithm"
        ) from None
    residual = np.linalg.norm((eigvecs * eigvals) @ inverse - m)
    if residual > 1e-9 * max(1.0, np.linalg.norm(m)):
        raise ArithmeticError(
            "eigenbasis too ill-conditioned for a reliable logarithm"
            f" (reconstruction residual {residual:.3e}); the matrix is"
            " defective or nearly so"
        )
    return (eigvecs * np.log(eigvals)) @ inverse


def op_norm(m) -> float:
    """Largest singular value."""
    m = _as_square_finite(m)
    return float(np.linalg.norm(m, 2))


def sinc(x: float) -> float:
    """sin(x)/x with a series fallback near 0."""
    if abs(x) < 1e-4:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def _composite_rule(cells: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite Gauss-Legendre rule on [0, 1]."""
    width = 1.0 / cells
    offsets = width * (_GL_NODES + 1.0) / 2.0
    nodes = np.concatenate([c * width + offsets for c in range(cells)])
    weights = np.tile(_GL_WEIGHTS * width / 2.0, cells)
    return nodes, weights


def interval_quadrature(f, upper: float, tol: float = 1e-9,
                        max_evaluations: int = 2**20) -> QuadratureResult:
    """Integrate f(t) over [0, upper] by cell-doubling refinement."""
    if upper <= 0:
        raise ValueError(f"upper limit must be positive, got {upper}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    previous = None
    estimate = math.inf
    evaluations = 0
    cells = 1
    while True:
        nodes, weights = _composite_rule(cells)
        if evaluations + nodes.size > max_evaluations:
            best = None
            if previous is not None and math.isfinite(estimate):
                best = QuadratureResult(previous, estimate, evaluations)
            raise QuadratureError(
                f"interval quadrature did not reach tol={tol:g} within"
                f" {max_evaluations} evaluations (best estimate"
                f" {estimate:.3e})",
                best=best,
            )
        total = None
        for node, weight in zip(nodes, weights):
            term = weight * np.asarray(f(upper * node), dtype=complex)
            total = term if total is None else total + term
        evaluations += nodes.size
        current = upper * total
        if previous is not None:
            estimate = float(np.linalg.norm(current - previous))
            if estimate <= tol:
                return QuadratureResult(current, estimate, evaluations)
        previous = current
        cells *= 2


def triangle_quadrature(f, tau: float, tol: float = 1e-9,
                        max_evaluations: int = 2**20) -> QuadratureResult:
    """Integrate f(t1, t2) over the time-ordered triangle 0 <= t2 <= t1 <= tau.

    The triangle maps onto the unit square through (t1, t2) =
    (tau u, tau u v) with Jacobian tau^2 u, then a composite 4-point
    Gauss-Legendre product rule is applied and the cell count doubled
    until successive levels agree to ``tol`` in Frobenius norm.

    Raises ``QuadratureError`` (carrying the best estimate) if ``tol``
    is not reached within ``max_evaluations`` integrand calls.
    """
    if tau <= 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    previous = None
    estimate = math.inf
    evaluations = 0
    cells = 1
    while True:
        nodes, weights = _composite_rule(cells)
        if evaluations + nodes.size**2 > max_evaluations:
            best = None
            if previous is not None and math.isfinite(estimate):
                best = QuadratureResult(previous, estimate, evaluations)
            raise QuadratureError(
                f"triangle quadrature did not reach tol={tol:g} within"
                f" {max_evaluations} evaluations (best estimate"
                f" {estimate:.3e})",
                best=best,
            )
        total = None
        for u, wu in zip(nodes, weights):
            t1 = tau * u
            for v, wv in zip(nodes, weights):
                term = (wu * wv * u) * np.asarray(f(t1, t1 * v), dtype=complex)
                total = term if total is None else total + term
        evaluations += nodes.size**2
        current = (tau * tau) * total
        if previous is not None:
            estimate = float(np.linalg.norm(current - previous))
            if estimate <= tol:
                return QuadratureResult(current, estimate, evaluations)
        previous = current
        cells *= 2
