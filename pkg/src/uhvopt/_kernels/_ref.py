"""Pure-numpy lane of the per-iteration indicator/gradient kernel.

Composes the reference functions from :mod:`uhvopt.hypervolume` into the
fused state computation used by the optimizer loop.  The compiled lane in
``_fast.pyx`` implements the same contract; both lanes use the same clamp
arithmetic and segment scan order so that nearest-point ties resolve
identically.
"""

from __future__ import annotations

import numpy as np

from ..hypervolume import DominationStatus, classify, front_hypervolume


def uhv_state(Y: np.ndarray, r0: float, r1: float):
    """Classification, hypervolume, uncrowded distances and dUHV/dY.

    Args:
        Y: (p, 2) float64 objective matrix.
        r0, r1: reference point.

    Returns:
        Tuple ``(status, hv, ud, nearest, grad)``:
          status:  (p,) int8 domination status codes.
          hv:      staircase hypervolume clipped to the reference box.
          ud:      (p,) distance to the interior domination boundary
                   (zero for non-dominated points).
          nearest: (p, 2) nearest boundary point (the point itself when
                   non-dominated).
          grad:    (p, 2) objective-space gradient of UHV.  Rows of weakly
                   dominated points are zero; the caller must perturb and
                   recompute to obtain their gradients.
    """
    Y = np.ascontiguousarray(Y, dtype=np.float64)
    p = Y.shape[0]
    report = classify(Y)
    status = report.status
    front_points = report.front_points
    hv = front_hypervolume(front_points, (r0, r1))

    ud = np.zeros(p)
    nearest = Y.copy()
    grad = np.zeros((p, 2))

    # Non-dominated points: hypervolume gradient from front neighbors, with
    # the reference coordinate standing in for missing or out-of-box
    # neighbors.  Points outside the reference box get pulled back toward it
    # componentwise instead (they have no exact hypervolume gradient).
    left_f1 = np.concatenate(([np.inf], front_points[:-1, 1]))
    right_f0 = np.concatenate((front_points[1:, 0], [np.inf]))
    d_f0 = front_points[:, 1] - np.minimum(left_f1, r1)
    d_f1 = front_points[:, 0] - np.minimum(right_f0, r0)
    inside = (front_points[:, 0] < r0) & (front_points[:, 1] < r1)
    pull = np.minimum(
        np.stack((r0 - front_points[:, 0], r1 - front_points[:, 1]), axis=1), 0.0
    )
    grad[report.front] = np.where(
        inside[:, None], np.stack((d_f0, d_f1), axis=1), pull
    )

    covered = status != DominationStatus.NONDOMINATED
    if np.any(covered):
        q = Y[covered]
        fx = front_points[:, 0]
        fy = front_points[:, 1]
        if front_points.shape[0] == 1:
            sx = np.broadcast_to(fx, (q.shape[0], 1))
            sy = np.broadcast_to(fy, (q.shape[0], 1))
            dist_sq = (q[:, 0, None] - sx) ** 2 + (q[:, 1, None] - sy) ** 2
        else:
            # staircase pieces between consecutive front points, scanned as
            # horizontal-then-vertical per pair (matches the compiled lane)
            hx = np.clip(q[:, 0, None], fx[:-1], fx[1:])
            hd = (q[:, 0, None] - hx) ** 2 + (q[:, 1, None] - fy[:-1]) ** 2
            vy = np.clip(q[:, 1, None], fy[1:], fy[:-1])
            vd = (q[:, 0, None] - fx[1:]) ** 2 + (q[:, 1, None] - vy) ** 2
            n_pairs = front_points.shape[0] - 1
            dist_sq = np.empty((q.shape[0], 2 * n_pairs))
            sx = np.empty_like(dist_sq)
            sy = np.empty_like(dist_sq)
            dist_sq[:, 0::2] = hd
            dist_sq[:, 1::2] = vd
            sx[:, 0::2] = hx
            sx[:, 1::2] = fx[1:]
            sy[:, 0::2] = fy[:-1]
            sy[:, 1::2] = vy
        best = np.argmin(dist_sq, axis=1)
        rows = np.arange(q.shape[0])
        nearest[covered, 0] = sx[rows, best]
        nearest[covered, 1] = sy[rows, best]
        ud[covered] = np.sqrt(dist_sq[rows, best])

        dominated = status == DominationStatus.DOMINATED
        grad[dominated] = -(2.0 / p) * (Y[dominated] - nearest[dominated])

    return status, hv, ud, nearest, grad
