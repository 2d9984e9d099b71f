"""Gradient of the uncrowded hypervolume with respect to decision variables.

The UHV gradient of a solution set splits into per-solution subvectors.
Each subvector is a chain rule through objective space:

    dUHV/dx_i = dUHV/df0(x_i) * grad_f0(x_i) + dUHV/df1(x_i) * grad_f1(x_i)

For a non-dominated solution the objective-space factor is the hypervolume
gradient, obtained from its front neighbors; the boundary-distance part is
explicitly zeroed there so that dominated solutions cannot pull front
members backwards.  For a dominated solution the hypervolume part vanishes
and the factor is the (negated) gradient of its squared distance to the
interior domination boundary.  Weakly dominated solutions (coinciding
coordinates) have no defined gradient; their shared coordinates are
temporarily worsened by a small epsilon, which makes them strictly
dominated, before the assembly runs.

Per solution, the objective-space factor is normalized to unit length
(weight W_i); feeding raw factors to an ascent scheme makes solutions with
small hypervolume contributions creep.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateConfigurationError, NumericError
from .hypervolume import (
    DominationReport,
    DominationStatus,
    as_objective_matrix,
    classify,
)
from .problems import EvaluationLedger, MOProblem


@dataclass(frozen=True)
class UhvGradient:
    """Assembled UHV gradient for a solution set.

    Attributes:
        per_solution_direction: (p, n) normalized search directions
            (objective-space factor divided by W_i).
        objective_space_gradient: (p, 2) dUHV/d(f0, f1) per solution.
        normalization_weights: (p,) norms W_i of the objective-space rows;
            solutions with W_i == 0 get a zero direction.
    """

    per_solution_direction: np.ndarray
    objective_space_gradient: np.ndarray
    normalization_weights: np.ndarray

    @property
    def concatenated(self) -> np.ndarray:
        """Directions stacked into a single vector in R^(n*p)."""
        return self.per_solution_direction.ravel()

    @property
    def unnormalized(self) -> np.ndarray:
        """The exact dUHV/dx_i rows (direction scaled back by W_i)."""
        return self.per_solution_direction * self.normalization_weights[:, None]


def hv_objective_gradient(Y, report: DominationReport, i: int, reference) -> tuple[float, float]:
    """Objective-space hypervolume gradient of non-dominated point ``i``.

    With the front sorted ascending in f0, the gradient follows from the
    neighboring front points, substituting the reference coordinate at the
    extremes (and for neighbors beyond the reference box):

        d_f0 = y1_i - y1_left,   d_f1 = y0_i - y0_right

    Both components are <= 0 for a point strictly inside the reference box.

    Raises:
        ValueError: if point ``i`` is not non-dominated or lies outside
            the reference box.
    """
    Y = as_objective_matrix(Y)
    if report.status[i] != DominationStatus.NONDOMINATED:
        raise ValueError(f"point {i} is not non-dominated")
    r0, r1 = float(reference[0]), float(reference[1])
    y0, y1 = Y[i]
    if not (y0 < r0 and y1 < r1):
        raise ValueError(f"point {i} is not strictly inside the reference box")
    pos = int(np.flatnonzero(report.front == i)[0])
    left_f1 = report.front_points[pos - 1, 1] if pos > 0 else np.inf
    right_f0 = report.front_points[pos + 1, 0] if pos < len(report.front) - 1 else np.inf
    return float(y1 - min(left_f1, r1)), float(y0 - min(right_f0, r0))


def ud_objective_gradient(y, s, p: int) -> tuple[float, float]:
    """Gradient of the mean squared boundary distance for a dominated point.

    Returns (2/p) * (y - s); the UHV contribution is its negation.

    Raises:
        ValueError: if ``y == s`` (zero distance; callers must perturb
            weakly dominated points first).
    """
    y = np.asarray(y, dtype=float).reshape(2)
    s = np.asarray(s, dtype=float).reshape(2)
    if np.all(y == s):
        raise ValueError("zero uncrowded distance: point lies on the boundary")
    d = (2.0 / p) * (y - s)
    return float(d[0]), float(d[1])


def perturb_weakly_dominated(
    Y, report: DominationReport, epsilon: float = 1e-9
) -> np.ndarray:
    """Worsen the shared coordinates of weakly dominated points by epsilon.

    Each shared coordinate is increased by ``epsilon * max(1, |value|)``.
    The perturbation must leave every previously weakly dominated point
    strictly dominated without creating dominance by any point that did not
    cover it before; epsilon is shrunk by 10x and the perturbation retried
    (up to 10 times) when that check fails.  The input matrix is never
    modified.

    Raises:
        DegenerateConfigurationError: when no epsilon small enough exists
            in working precision; carries the colliding indices.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    Y = as_objective_matrix(Y)
    weak = np.flatnonzero(report.status == DominationStatus.WEAKLY_DOMINATED)
    if weak.size == 0:
        return Y

    p = Y.shape[0]
    f0, f1 = Y[:, 0], Y[:, 1]
    covers = (f0[:, None] <= f0[None, :]) & (f1[:, None] <= f1[None, :])
    equal = (f0[:, None] == f0[None, :]) & (f1[:, None] == f1[None, :])
    earlier = np.arange(p)[:, None] < np.arange(p)[None, :]
    witness = covers & (~equal | earlier)
    np.fill_diagonal(witness, False)

    eps = float(epsilon)
    for _ in range(10):
        Yp = Y.copy()
        for i in weak:
            for k in range(2):
                shares_k = witness[:, i] & (Y[:, k] == Y[i, k])
                if np.any(shares_k):
                    Yp[i, k] += eps * max(1.0, abs(Y[i, k]))
        new_report = classify(Yp)
        if not new_report.has_weakly_dominated and _dominators_unchanged(
            Y, Yp, weak, witness
        ):
            return Yp
        eps *= 0.1
    raise DegenerateConfigurationError(
        f"cannot resolve weak domination for indices {weak.tolist()}",
        indices=tuple(int(i) for i in weak),
    )


def _dominators_unchanged(Y, Yp, weak, witness) -> bool:
    """No perturbed point gained a strict dominator it was not covered by."""
    for i in weak:
        strict_new = (Yp[:, 0] < Yp[i, 0]) & (Yp[:, 1] < Yp[i, 1])
        if np.any(strict_new & ~witness[:, i]):
            return False
    return True


def uhv_gradient(
    Y, mo_grads: np.ndarray, reference, normalize: bool = True
) -> UhvGradient:
    """Assemble the UHV gradient of a solution set via the chain rule.

    Args:
        Y: (p, 2) objective matrix of the set.
        mo_grads: (p, 2, n) per-solution objective gradients (analytic or
            finite-difference).
        reference: hypervolume reference point.
        normalize: divide each chain-rule row by the norm W_i of its
            objective-space factor (the creep-avoiding default).  With
            ``normalize=False`` the raw rows are used as directions.

    Returns:
        The assembled :class:`UhvGradient`.
    """
    Y = as_objective_matrix(Y)
    mo_grads = np.asarray(mo_grads, dtype=float)
    if mo_grads.ndim != 3 or mo_grads.shape[:2] != (Y.shape[0], 2):
        raise ValueError(
            f"mo_grads must have shape (p, 2, n), got {mo_grads.shape}"
        )
    state = _kernels.uhv_state(Y, reference)
    if np.any(state.status == DominationStatus.WEAKLY_DOMINATED):
        perturbed = perturb_weakly_dominated(Y, classify(Y))
        state = _kernels.uhv_state(perturbed, reference)

    obj_grad = state.grad
    weights = np.sqrt(np.sum(obj_grad * obj_grad, axis=1))
    raw = np.einsum("pk,pkn->pn", obj_grad, mo_grads)
    if normalize:
        scale = np.divide(
            1.0, weights, out=np.zeros_like(weights), where=weights > 0.0
        )
        directions = raw * scale[:, None]
    else:
        directions = raw
    return UhvGradient(
        per_solution_direction=directions,
        objective_space_gradient=obj_grad,
        normalization_weights=weights,
    )


def fd_mo_gradient(
    problem: MOProblem,
    x,
    h: float,
    ledger: EvaluationLedger | None = None,
    base: tuple[float, float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Forward-difference objective gradients at a single point.

    Uses a backward difference in coordinates where the forward step would
    leave the constraint box.  Costs ``n`` MO-evaluations beyond the base
    point; the base itself is evaluated (one more) unless supplied.

    Raises:
        NumericError: if ``h`` vanishes against ``x`` in working precision.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    if h <= 0.0:
        raise ValueError("finite-difference step h must be positive")
    if base is None:
        base = problem.evaluate(x, ledger)
    f_base = np.asarray(base, dtype=float)
    G = _fd_batch(problem, x.reshape(1, -1), f_base.reshape(1, 2), h, ledger)
    return G[0, 0].copy(), G[0, 1].copy()


def fd_mo_gradient_set(
    problem: MOProblem,
    X: np.ndarray,
    Y: np.ndarray,
    h: float,
    ledger: EvaluationLedger | None = None,
) -> np.ndarray:
    """Forward-difference gradients for a whole set; costs ``n * p`` evaluations."""
    if h <= 0.0:
        raise ValueError("finite-difference step h must be positive")
    return _fd_batch(problem, np.asarray(X, dtype=float), np.asarray(Y, dtype=float), h, ledger)


def _fd_batch(problem, X, F_base, h, ledger) -> np.ndarray:
    p, n = X.shape
    steps = np.full((p, n), h)
    backward = X + h > problem.upper
    steps[backward] = -h
    points = np.repeat(X, n, axis=0)
    idx = np.tile(np.arange(n), p)
    points[np.arange(p * n), idx] += steps.ravel()
    if np.any(points[np.arange(p * n), idx] == X[np.repeat(np.arange(p), n), idx]):
        raise NumericError(f"finite-difference step h={h} vanishes in working precision")
    F = problem.evaluate_set(points, ledger)  # charges n * p
    diffs = (F.reshape(p, n, 2) - F_base[:, None, :]) / steps[:, :, None]
    return np.swapaxes(diffs, 1, 2)
