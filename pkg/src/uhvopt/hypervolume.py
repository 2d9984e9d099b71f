"""Bi-objective domination analysis and the uncrowded hypervolume indicator.

All objectives are minimized.  The hypervolume (HV) of a point set is the
area dominated by its non-dominated front and bounded by a reference point
``r``.  The uncrowded distance (ud) of a dominated point is its Euclidean
distance to the interior domination boundary of the front, i.e. the
corner-to-corner staircase between the sorted front points with the two
semi-infinite rays removed.  The uncrowded hypervolume combines both:

    UHV(Y) = HV(Y) - (1/p) * sum_i ud(y_i, Y)^2

These functions are the readable reference implementations; the optimizer
hot loop uses the fused kernels in :mod:`uhvopt._kernels`, which are tested
against this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np


class DominationStatus(IntEnum):
    NONDOMINATED = 0
    DOMINATED = 1
    WEAKLY_DOMINATED = 2


@dataclass(frozen=True)
class DominationReport:
    """Per-point domination classification plus the sorted front structure.

    Attributes:
        status: (p,) int8 array of :class:`DominationStatus` values.
        front: indices of non-dominated points, ascending in f0 (hence
            strictly descending in f1).
        front_points: (|front|, 2) objective values of the front, sorted.
        boundary: (S, 4) axis-parallel segments ``[x0, y0, x1, y1]`` forming
            the interior domination boundary.  ``S = 2*|front| - 2`` for
            two or more front points; a single front point degenerates to
            one zero-length segment at that point.
    """

    status: np.ndarray
    front: np.ndarray
    front_points: np.ndarray
    boundary: np.ndarray

    @property
    def has_weakly_dominated(self) -> bool:
        return bool(np.any(self.status == DominationStatus.WEAKLY_DOMINATED))


def as_objective_matrix(Y) -> np.ndarray:
    """Validate and convert ``Y`` to a (p, 2) float64 objective matrix."""
    Y = np.asarray(Y, dtype=np.float64)
    if Y.ndim == 1 and Y.shape == (2,):
        Y = Y.reshape(1, 2)
    if Y.ndim != 2 or Y.shape[1] != 2:
        raise ValueError(f"expected a (p, 2) objective matrix, got shape {Y.shape}")
    if Y.shape[0] < 1:
        raise ValueError("objective matrix must contain at least one point")
    if not np.all(np.isfinite(Y)):
        raise ValueError("objective matrix contains non-finite entries")
    return Y


def classify(Y) -> DominationReport:
    """Classify every point of ``Y`` and build the sorted front structure.

    A point is DOMINATED iff another point is strictly better in both
    objectives.  It is WEAKLY_DOMINATED iff it is not strictly dominated
    but some other point is no worse in both objectives while sharing at
    least one coordinate; exact duplicates keep the first occurrence (in
    index order) non-dominated.  All remaining points are NONDOMINATED.
    """
    Y = as_objective_matrix(Y)
    p = Y.shape[0]
    f0 = Y[:, 0]
    f1 = Y[:, 1]

    # strict[j, i]: point j strictly dominates point i
    lt0 = f0[:, None] < f0[None, :]
    lt1 = f1[:, None] < f1[None, :]
    strictly_dominated = np.any(lt0 & lt1, axis=0)

    # covered[j, i]: j is no worse than i in both objectives
    covered = (f0[:, None] <= f0[None, :]) & (f1[:, None] <= f1[None, :])
    equal = (f0[:, None] == f0[None, :]) & (f1[:, None] == f1[None, :])
    earlier = np.arange(p)[:, None] < np.arange(p)[None, :]
    np.fill_diagonal(covered, False)
    weak_witness = covered & (~equal | earlier)
    weakly_dominated = np.any(weak_witness, axis=0) & ~strictly_dominated

    status = np.zeros(p, dtype=np.int8)
    status[strictly_dominated] = DominationStatus.DOMINATED
    status[weakly_dominated] = DominationStatus.WEAKLY_DOMINATED

    front = np.flatnonzero(status == DominationStatus.NONDOMINATED)
    front = front[np.argsort(f0[front], kind="stable")]
    front_points = Y[front]
    return DominationReport(
        status=status,
        front=front,
        front_points=front_points,
        boundary=_interior_boundary(front_points),
    )


def _interior_boundary(front_points: np.ndarray) -> np.ndarray:
    """Staircase segments between consecutive sorted front points."""
    F = front_points.shape[0]
    if F == 1:
        x, y = front_points[0]
        return np.array([[x, y, x, y]])
    segments = np.empty((2 * F - 2, 4))
    for j in range(F - 1):
        x0, y0 = front_points[j]
        x1, y1 = front_points[j + 1]
        segments[2 * j] = (x0, y0, x1, y0)
        segments[2 * j + 1] = (x1, y0, x1, y1)
    return segments


def hypervolume(Y, reference) -> float:
    """Area dominated by the non-dominated front of ``Y`` within ``reference``.

    Points at or beyond the reference point contribute zero.  Computed by
    the sorted-staircase sum over front points clipped to the reference box.

    Args:
        Y: (p, 2) objective matrix.
        reference: reference point ``(r0, r1)``.

    Returns:
        The dominated area, >= 0.
    """
    report = classify(Y)
    return front_hypervolume(report.front_points, reference)


def front_hypervolume(front_points: np.ndarray, reference) -> float:
    """Staircase hypervolume of an f0-ascending, mutually non-dominated front."""
    r0, r1 = float(reference[0]), float(reference[1])
    inside = (front_points[:, 0] < r0) & (front_points[:, 1] < r1)
    pts = front_points[inside]
    hv = 0.0
    prev_f1 = r1
    for y0, y1 in pts:
        hv += (r0 - y0) * (prev_f1 - y1)
        prev_f1 = y1
    return hv


def _nearest_on_segment(y: np.ndarray, segment: np.ndarray) -> np.ndarray:
    ax, ay, bx, by = segment
    dx = bx - ax
    dy = by - ay
    norm_sq = dx * dx + dy * dy
    if norm_sq == 0.0:
        return np.array([ax, ay])
    t = ((y[0] - ax) * dx + (y[1] - ay) * dy) / norm_sq
    t = min(1.0, max(0.0, t))
    return np.array([ax + t * dx, ay + t * dy])


def uncrowded_distance(y, report: DominationReport) -> tuple[float, np.ndarray]:
    """Distance from ``y`` to the interior domination boundary.

    Args:
        y: objective-space point (2,).
        report: classification of the set ``y`` belongs to.

    Returns:
        ``(ud, s)`` where ``s`` is the nearest boundary point.  A point on
        the boundary (in particular any front point) has ``ud == 0``.

    Raises:
        ValueError: if the report carries an empty front.
    """
    if report.front.size == 0:
        raise ValueError("domination report has an empty front")
    y = np.asarray(y, dtype=np.float64).reshape(2)
    best_sq = np.inf
    best_s = y
    for segment in report.boundary:
        s = _nearest_on_segment(y, segment)
        d_sq = (y[0] - s[0]) ** 2 + (y[1] - s[1]) ** 2
        if d_sq < best_sq:
            best_sq = d_sq
            best_s = s
    return float(np.sqrt(best_sq)), best_s


def uhv(Y, reference) -> float:
    """Uncrowded hypervolume ``HV - (1/p) * sum ud^2`` of ``Y``.

    Equals the hypervolume whenever every point is non-dominated.  Dominated
    and weakly dominated points are penalized by their squared distance to
    the interior domination boundary; the reference point plays no role in
    that penalty.
    """
    Y = as_objective_matrix(Y)
    report = classify(Y)
    hv = front_hypervolume(report.front_points, reference)
    penalty = 0.0
    for i in np.flatnonzero(report.status != DominationStatus.NONDOMINATED):
        ud, _ = uncrowded_distance(Y[i], report)
        penalty += ud * ud
    return hv - penalty / Y.shape[0]
