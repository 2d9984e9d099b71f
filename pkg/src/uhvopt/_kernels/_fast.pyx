# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lane of the per-iteration indicator/gradient kernel.

Same contract as ``_ref.uhv_state``; O(p^2) pairwise classification and an
O(p * front) boundary-distance scan, which is the per-iteration hot spot of
gradient-ascent runs (p stays small, iteration counts reach 1e5+).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, sqrt

cnp.import_array()


def uhv_state(object Y_in, double r0, double r1):
    """See ``uhvopt._kernels._ref.uhv_state`` for the contract."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2, mode="c"] Y = \
        np.ascontiguousarray(Y_in, dtype=np.float64)
    cdef Py_ssize_t p = Y.shape[0]

    cdef cnp.ndarray[cnp.int8_t, ndim=1] status = np.zeros(p, dtype=np.int8)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ud = np.zeros(p, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] nearest = Y.copy()
    cdef cnp.ndarray[cnp.float64_t, ndim=2] grad = np.zeros((p, 2), dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] front = np.empty(p, dtype=np.intp)

    cdef double[:, ::1] y = Y
    cdef signed char[::1] st = status
    cdef double[::1] ud_v = ud
    cdef double[:, :] s_v = nearest
    cdef double[:, :] g_v = grad
    cdef Py_ssize_t[::1] fr = front

    cdef Py_ssize_t i, j, k, m, F = 0
    cdef double yi0, yi1, yj0, yj1
    cdef bint strict, weak

    # pairwise domination classification
    for i in range(p):
        yi0 = y[i, 0]
        yi1 = y[i, 1]
        strict = False
        weak = False
        for j in range(p):
            if j == i:
                continue
            yj0 = y[j, 0]
            yj1 = y[j, 1]
            if yj0 < yi0 and yj1 < yi1:
                strict = True
                break
            if yj0 <= yi0 and yj1 <= yi1:
                if yj0 != yi0 or yj1 != yi1 or j < i:
                    weak = True
        if strict:
            st[i] = 1
        elif weak:
            st[i] = 2
        else:
            st[i] = 0
            fr[F] = i
            F += 1

    # sort front indices ascending in f0 (insertion sort; F <= p is small)
    cdef Py_ssize_t tmp
    for i in range(1, F):
        tmp = fr[i]
        yi0 = y[tmp, 0]
        j = i - 1
        while j >= 0 and y[fr[j], 0] > yi0:
            fr[j + 1] = fr[j]
            j -= 1
        fr[j + 1] = tmp

    # staircase hypervolume over front points inside the reference box
    cdef double hv = 0.0
    cdef double prev_f1 = r1
    for i in range(F):
        yi0 = y[fr[i], 0]
        yi1 = y[fr[i], 1]
        if yi0 < r0 and yi1 < r1:
            hv += (r0 - yi0) * (prev_f1 - yi1)
            prev_f1 = yi1

    # objective-space hypervolume gradient of non-dominated points
    cdef double left_f1, right_f0, pull0, pull1
    for i in range(F):
        k = fr[i]
        yi0 = y[k, 0]
        yi1 = y[k, 1]
        if yi0 < r0 and yi1 < r1:
            left_f1 = y[fr[i - 1], 1] if i > 0 else INFINITY
            right_f0 = y[fr[i + 1], 0] if i < F - 1 else INFINITY
            if left_f1 > r1:
                left_f1 = r1
            if right_f0 > r0:
                right_f0 = r0
            g_v[k, 0] = yi1 - left_f1
            g_v[k, 1] = yi0 - right_f0
        else:
            pull0 = r0 - yi0
            pull1 = r1 - yi1
            g_v[k, 0] = pull0 if pull0 < 0.0 else 0.0
            g_v[k, 1] = pull1 if pull1 < 0.0 else 0.0

    # distance of covered points to the interior domination boundary
    cdef double best_sq, s0, s1, cx, cy, d_sq, ax, ay, bx
    for i in range(p):
        if st[i] == 0:
            continue
        yi0 = y[i, 0]
        yi1 = y[i, 1]
        if F == 1:
            s0 = y[fr[0], 0]
            s1 = y[fr[0], 1]
            best_sq = (yi0 - s0) * (yi0 - s0) + (yi1 - s1) * (yi1 - s1)
        else:
            best_sq = INFINITY
            s0 = yi0
            s1 = yi1
            for m in range(F - 1):
                ax = y[fr[m], 0]
                ay = y[fr[m], 1]
                bx = y[fr[m + 1], 0]
                # horizontal segment (ax, ay) -> (bx, ay)
                cx = yi0
                if cx < ax:
                    cx = ax
                elif cx > bx:
                    cx = bx
                d_sq = (yi0 - cx) * (yi0 - cx) + (yi1 - ay) * (yi1 - ay)
                if d_sq < best_sq:
                    best_sq = d_sq
                    s0 = cx
                    s1 = ay
                # vertical segment (bx, ay) -> (bx, y[fr[m+1], 1])
                cy = yi1
                if cy < y[fr[m + 1], 1]:
                    cy = y[fr[m + 1], 1]
                elif cy > ay:
                    cy = ay
                d_sq = (yi0 - bx) * (yi0 - bx) + (yi1 - cy) * (yi1 - cy)
                if d_sq < best_sq:
                    best_sq = d_sq
                    s0 = bx
                    s1 = cy
        ud_v[i] = sqrt(best_sq)
        s_v[i, 0] = s0
        s_v[i, 1] = s1
        if st[i] == 1:
            g_v[i, 0] = -(2.0 / p) * (yi0 - s0)
            g_v[i, 1] = -(2.0 / p) * (yi1 - s1)

    return status, hv, ud, nearest, grad
