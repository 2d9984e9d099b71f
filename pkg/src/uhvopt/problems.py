"""Bi-objective benchmark problems and MO-evaluation accounting.

Two families are provided:

* four quadratic problems (bi-sphere, sphere & rotated ellipsoid, concave
  bi-sphere, sphere & scaled Rosenbrock) with analytic gradients and an
  unconstrained decision space; only their initialization boxes are finite;
* the nine WFG problems instantiated with two objectives, ``k`` position
  and ``l`` distance variables on the box ``z_i in [0, 2(i+1)]``; these are
  black-box (no analytic gradients).

One MO-evaluation is the joint computation of ``f0, f1`` and, when
available, their gradients at a single point; evaluating a set of ``p``
points costs ``p``.  Gradient calls never charge the ledger on their own:
they are always paired with the evaluation of the same points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, UnsupportedOperationError


@dataclass
class EvaluationLedger:
    """Counts MO-evaluations charged against a run budget."""

    mo_evaluations: int = 0

    def charge(self, count: int = 1) -> None:
        if count < 0:
            raise ValueError("cannot charge a negative evaluation count")
        self.mo_evaluations += count


@dataclass
class SolutionSet:
    """Fixed-size set of decision vectors with cached objective values."""

    X: np.ndarray  # (p, n)
    Y: np.ndarray | None = None  # (p, 2), filled after evaluation

    @property
    def p(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def concatenated(self) -> np.ndarray:
        """The set as a single vector in R^(n*p)."""
        return self.X.ravel()


class MOProblem:
    """A to-be-minimized bi-objective problem on a box-constrained space.

    Attributes:
        name: registry identifier.
        n: decision-space dimension.
        lower/upper: constraint box (+-inf for unconstrained problems).
        init_lower/init_upper: initialization box, contained in the
            constraint box.
        has_analytic_gradients: whether :meth:`gradient` is available.
    """

    name = "abstract"
    has_analytic_gradients = False

    def __init__(self, n, lower, upper, init_lower, init_upper):
        self.n = int(n)
        self.lower = np.broadcast_to(np.asarray(lower, dtype=float), (self.n,)).copy()
        self.upper = np.broadcast_to(np.asarray(upper, dtype=float), (self.n,)).copy()
        self.init_lower = np.broadcast_to(
            np.asarray(init_lower, dtype=float), (self.n,)
        ).copy()
        self.init_upper = np.broadcast_to(
            np.asarray(init_upper, dtype=float), (self.n,)
        ).copy()
        if np.any(self.init_lower < self.lower) or np.any(self.init_upper > self.upper):
            raise ValueError("initialization box must lie inside the constraint box")

    # subclass hooks ------------------------------------------------------
    def _objectives(self, X: np.ndarray) -> np.ndarray:
        """Objective values for a (q, n) batch; returns (q, 2)."""
        raise NotImplementedError

    def _gradients(self, X: np.ndarray) -> np.ndarray:
        """Objective gradients for a (q, n) batch; returns (q, 2, n)."""
        raise UnsupportedOperationError(
            f"problem {self.name!r} does not provide analytic gradients"
        )

    # public surface ------------------------------------------------------
    def _check_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.ndim != 2 or X.shape[1] != self.n:
            raise ValueError(
                f"expected decision vectors of dimension {self.n}, got shape {X.shape}"
            )
        return X

    def evaluate(self, x, ledger: EvaluationLedger | None = None) -> tuple[float, float]:
        """Evaluate a single decision vector; charges one MO-evaluation."""
        F = self.evaluate_set(np.asarray(x, dtype=float).reshape(1, -1), ledger)
        return float(F[0, 0]), float(F[0, 1])

    def evaluate_set(self, X, ledger: EvaluationLedger | None = None) -> np.ndarray:
        """Evaluate a (p, n) batch; charges ``p`` MO-evaluations."""
        X = self._check_batch(X)
        F = self._objectives(X)
        bad = ~np.isfinite(F).all(axis=1)
        if np.any(bad):
            i = int(np.flatnonzero(bad)[0])
            raise NumericError(
                f"non-finite objective value for {self.name} at x={X[i].tolist()}"
            )
        if ledger is not None:
            ledger.charge(X.shape[0])
        return F

    def gradient(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Analytic gradients (grad_f0, grad_f1) at ``x``.

        Not charged to the ledger: gradients count as part of the
        MO-evaluation that computed the objectives at the same point.
        """
        G = self.gradient_set(np.asarray(x, dtype=float).reshape(1, -1))
        return G[0, 0].copy(), G[0, 1].copy()

    def gradient_set(self, X) -> np.ndarray:
        """Analytic gradients for a (p, n) batch; returns (p, 2, n)."""
        X = self._check_batch(X)
        G = self._gradients(X)
        if not np.isfinite(G).all():
            bad = int(np.flatnonzero(~np.isfinite(G).reshape(X.shape[0], -1).all(axis=1))[0])
            raise NumericError(
                f"non-finite gradient for {self.name} at x={X[bad].tolist()}"
            )
        return G

    def clip_to_box(self, X: np.ndarray) -> np.ndarray:
        return np.clip(X, self.lower, self.upper)

    @property
    def init_range(self) -> float:
        """Maximum initialization range over dimensions."""
        return float(np.max(self.init_upper - self.init_lower))


def sample_initial_set(problem: MOProblem, p: int, rng_seed: int) -> SolutionSet:
    """Draw ``p`` independent uniform samples from the initialization box."""
    if p < 1:
        raise ValueError("set size p must be >= 1")
    rng = np.random.default_rng(rng_seed)
    X = rng.uniform(problem.init_lower, problem.init_upper, size=(p, problem.n))
    return SolutionSet(X=X)


# --------------------------------------------------------------------------
# quadratic benchmarks
# --------------------------------------------------------------------------

def _sphere(X: np.ndarray) -> np.ndarray:
    return np.sum(X * X, axis=1)


class BiSphere(MOProblem):
    """Convex bi-sphere: f0 = |x|^2, f1 = |x - c|^2 with c = e_0."""

    name = "bisphere"
    has_analytic_gradients = True

    def __init__(self, n: int = 10):
        super().__init__(n, -np.inf, np.inf, -2.0, 2.0)
        self.c = np.zeros(self.n)
        self.c[0] = 1.0

    def _objectives(self, X):
        return np.stack((_sphere(X), _sphere(X - self.c)), axis=1)

    def _gradients(self, X):
        return np.stack((2.0 * X, 2.0 * (X - self.c)), axis=1)


def _givens_rotation_all_axes(n: int, angle_deg: float = 45.0) -> np.ndarray:
    """Ordered product of plane rotations G(i, i+1) for i = 0..n-2.

    Applied in increasing i, i.e. the matrix is G_{n-2} @ ... @ G_0.
    """
    theta = np.deg2rad(angle_deg)
    c, s = np.cos(theta), np.sin(theta)
    R = np.eye(n)
    for i in range(n - 1):
        G = np.eye(n)
        G[i, i] = c
        G[i, i + 1] = -s
        G[i + 1, i] = s
        G[i + 1, i + 1] = c
        R = G @ R
    return R


class SphereRotatedEllipsoid(MOProblem):
    """Sphere f0 = |x|^2 / n against a rotated ill-conditioned ellipsoid.

    f1 = (Rx - c)^T W (Rx - c) with diagonal weights
    W_ii = 10^(-6 i / (n - 1)) and R a 45-degree rotation along all axes.
    The target ``c`` is shared with the bi-sphere problem.
    """

    name = "sphere-rot-ellipsoid"
    has_analytic_gradients = True

    def __init__(self, n: int = 10):
        super().__init__(n, -np.inf, np.inf, -2.0, 2.0)
        self.c = np.zeros(self.n)
        self.c[0] = 1.0
        self.R = _givens_rotation_all_axes(self.n)
        if self.n == 1:
            self.w = np.ones(1)
        else:
            self.w = 10.0 ** (-6.0 * np.arange(self.n) / (self.n - 1))

    def _objectives(self, X):
        z = X @ self.R.T - self.c
        return np.stack((_sphere(X) / self.n, np.sum(self.w * z * z, axis=1)), axis=1)

    def _gradients(self, X):
        z = X @ self.R.T - self.c
        g1 = 2.0 * (self.w * z) @ self.R
        return np.stack((2.0 * X / self.n, g1), axis=1)


class ConcaveBiSphere(MOProblem):
    """Bi-sphere objectives raised to the power 1/4 (concave front)."""

    name = "concave-bisphere"
    has_analytic_gradients = True

    def __init__(self, n: int = 10):
        super().__init__(n, -np.inf, np.inf, -2.0, 2.0)
        self.c = np.zeros(self.n)
        self.c[0] = 1.0

    def _objectives(self, X):
        return np.stack(
            (_sphere(X) ** 0.25, _sphere(X - self.c) ** 0.25), axis=1
        )

    def _gradients(self, X):
        # d/dx (|x|^2)^(1/4) = x / (2 |x|^(3/2)); zero at the sphere center
        # (the true gradient is unbounded there, which only occurs at the
        # single-objective optimum).
        G = np.empty((X.shape[0], 2, self.n))
        for k, Z in enumerate((X, X - self.c)):
            s = _sphere(Z)
            scale = np.zeros_like(s)
            nz = s > 0.0
            scale[nz] = 0.5 * s[nz] ** -0.75
            G[:, k, :] = scale[:, None] * Z
        return G


class SphereRosenbrock(MOProblem):
    """Sphere f0 = |x|^2 against the dimension-scaled Rosenbrock function."""

    name = "sphere-rosenbrock"
    has_analytic_gradients = True

    def __init__(self, n: int = 10):
        if n < 2:
            raise ValueError("sphere-rosenbrock requires n >= 2")
        super().__init__(n, -np.inf, np.inf, 0.0, 2.0)

    def _objectives(self, X):
        a = X[:, 1:] - X[:, :-1] ** 2
        b = 1.0 - X[:, :-1]
        ros = np.sum(100.0 * a * a + b * b, axis=1) / (self.n - 1)
        return np.stack((_sphere(X), ros), axis=1)

    def _gradients(self, X):
        a = X[:, 1:] - X[:, :-1] ** 2
        g1 = np.zeros_like(X)
        g1[:, :-1] = -400.0 * X[:, :-1] * a - 2.0 * (1.0 - X[:, :-1])
        g1[:, 1:] += 200.0 * a
        g1 /= self.n - 1
        return np.stack((2.0 * X, g1), axis=1)


# --------------------------------------------------------------------------
# WFG suite (bi-objective)
# --------------------------------------------------------------------------
#
# Transformation functions below operate on column batches normalized to
# [0, 1].  Formulas follow the published WFG toolkit definitions; the
# floor() gates select the active piece of each piecewise expression.

def _b_poly(y, alpha):
    return y**alpha


def _b_flat(y, A, B, C):
    low = np.minimum(0.0, np.floor(y - B)) * A * (B - y) / B
    high = np.minimum(0.0, np.floor(C - y)) * (1.0 - A) * (y - C) / (1.0 - C)
    return A + low - high


def _b_param(y, u, A, B, C):
    v = A - (1.0 - 2.0 * u) * np.abs(np.floor(0.5 - u) + A)
    return y ** (B + (C - B) * v)


def _s_linear(y, A):
    return np.abs(y - A) / np.abs(np.floor(A - y) + A)


def _s_decept(y, A, B, C):
    left = np.floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B)
    right = np.floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B)
    return 1.0 + (np.abs(y - A) - B) * (left + right + 1.0 / B)


def _s_multi(y, A, B, C):
    t = np.abs(y - C) / (2.0 * (np.floor(C - y) + C))
    return (1.0 + np.cos((4.0 * A + 2.0) * np.pi * (0.5 - t)) + 4.0 * B * t * t) / (
        B + 2.0
    )


def _r_sum(cols, w):
    return cols @ w / np.sum(w)


def _r_nonsep(cols, A: int):
    m = cols.shape[1]
    total = np.sum(cols, axis=1)
    for k in range(A - 1):
        total += np.sum(np.abs(cols - np.roll(cols, -(k + 1), axis=1)), axis=1)
    denom = (m / A) * np.ceil(A / 2.0) * (1.0 + 2.0 * A - 2.0 * np.ceil(A / 2.0))
    return total / denom


class WFG(MOProblem):
    """Bi-objective WFG problem (variants 1-9).

    Decision variables live on ``z_i in [0, 2(i+1)]``; ``k`` position and
    ``l`` distance variables.  The final objectives use the toolkit scaling
    f_m = x_M + 2m * h_m, so f0 ranges over [0, 3] and f1 over [0, 5].
    """

    has_analytic_gradients = False

    def __init__(self, variant: int, k: int = 4, l: int = 20):
        if not 1 <= variant <= 9:
            raise ValueError("WFG variant must be in 1..9")
        if k < 1 or l < 1:
            raise ValueError("k and l must be positive")
        if variant in (2, 3) and l % 2 != 0:
            raise ValueError(f"WFG{variant} requires an even number of distance variables")
        n = k + l
        upper = 2.0 * np.arange(1, n + 1)
        super().__init__(n, 0.0, upper, 0.0, upper)
        self.variant = variant
        self.k = k
        self.l = l
        self.name = f"wfg{variant}"

    def _check_batch(self, X):
        X = super()._check_batch(X)
        if np.any(X < self.lower) or np.any(X > self.upper):
            raise ValueError(f"{self.name}: decision vector outside the domain box")
        return X

    def _objectives(self, Z):
        k = self.k
        y = Z / self.upper
        x1, xM = getattr(self, f"_chain_wfg{self.variant}")(y)
        # degeneracy map: x_i = max(x_M, A_i) * (t_i - 0.5) + 0.5 with A_1 = 1
        x1 = np.maximum(xM, 1.0) * (x1 - 0.5) + 0.5
        h0, h1 = self._shapes(x1)
        return np.stack((xM + 2.0 * h0, xM + 4.0 * h1), axis=1)

    def _shapes(self, x1):
        if self.variant == 1:
            convex = 1.0 - np.cos(x1 * np.pi / 2.0)
            mixed = 1.0 - x1 - np.cos(10.0 * np.pi * x1 + np.pi / 2.0) / (10.0 * np.pi)
            return convex, mixed
        if self.variant == 2:
            convex = 1.0 - np.cos(x1 * np.pi / 2.0)
            disc = 1.0 - x1 * np.cos(5.0 * np.pi * x1) ** 2
            return convex, disc
        if self.variant == 3:
            return x1, 1.0 - x1
        return np.sin(x1 * np.pi / 2.0), np.cos(x1 * np.pi / 2.0)

    # transformation chains; each returns the reduced (position, distance)
    # pair (t_1, t_M) for the bi-objective case
    def _chain_wfg1(self, y):
        k, n = self.k, self.n
        t = y.copy()
        t[:, k:] = _s_linear(t[:, k:], 0.35)
        t[:, k:] = _b_flat(t[:, k:], 0.8, 0.75, 0.85)
        t = _b_poly(t, 0.02)
        x1 = _r_sum(t[:, :k], 2.0 * np.arange(1, k + 1))
        xM = _r_sum(t[:, k:], 2.0 * np.arange(k + 1, n + 1))
        return x1, xM

    def _pair_reduce(self, t):
        # non-separable reduction of consecutive distance pairs (WFG2/3)
        a = t[:, self.k :: 2]
        b = t[:, self.k + 1 :: 2]
        return (a + b + 2.0 * np.abs(a - b)) / 3.0

    def _chain_wfg2(self, y):
        t = y.copy()
        t[:, self.k :] = _s_linear(t[:, self.k :], 0.35)
        pairs = self._pair_reduce(t)
        x1 = _r_sum(t[:, : self.k], np.ones(self.k))
        xM = _r_sum(pairs, np.ones(pairs.shape[1]))
        return x1, xM

    _chain_wfg3 = _chain_wfg2

    def _chain_wfg4(self, y):
        t = _s_multi(y, 30.0, 10.0, 0.35)
        return self._unit_sums(t)

    def _chain_wfg5(self, y):
        t = _s_decept(y, 0.35, 0.001, 0.05)
        return self._unit_sums(t)

    def _chain_wfg6(self, y):
        t = y.copy()
        t[:, self.k :] = _s_linear(t[:, self.k :], 0.35)
        return _r_nonsep(t[:, : self.k], self.k), _r_nonsep(t[:, self.k :], self.l)

    def _chain_wfg7(self, y):
        k = self.k
        t = y.copy()
        for i in range(k):
            u = _r_sum(y[:, i + 1 :], np.ones(self.n - i - 1))
            t[:, i] = _b_param(y[:, i], u, 0.98 / 49.98, 0.02, 50.0)
        t[:, k:] = _s_linear(t[:, k:], 0.35)
        return self._unit_sums(t)

    def _chain_wfg8(self, y):
        k = self.k
        t = y.copy()
        for i in range(k, self.n):
            u = _r_sum(y[:, :i], np.ones(i))
            t[:, i] = _b_param(y[:, i], u, 0.98 / 49.98, 0.02, 50.0)
        t[:, k:] = _s_linear(t[:, k:], 0.35)
        return self._unit_sums(t)

    def _chain_wfg9(self, y):
        k = self.k
        t = y.copy()
        for i in range(self.n - 1):
            u = _r_sum(y[:, i + 1 :], np.ones(self.n - i - 1))
            t[:, i] = _b_param(y[:, i], u, 0.98 / 49.98, 0.02, 50.0)
        t[:, :k] = _s_decept(t[:, :k], 0.35, 0.001, 0.05)
        t[:, k:] = _s_multi(t[:, k:], 30.0, 95.0, 0.35)
        return _r_nonsep(t[:, :k], self.k), _r_nonsep(t[:, k:], self.l)

    def _unit_sums(self, t):
        k = self.k
        return (
            _r_sum(t[:, :k], np.ones(k)),
            _r_sum(t[:, k:], np.ones(self.n - k)),
        )


# --------------------------------------------------------------------------
# registry
# --------------------------------------------------------------------------

QUADRATIC_IDS = (
    "bisphere",
    "sphere-rot-ellipsoid",
    "concave-bisphere",
    "sphere-rosenbrock",
)
WFG_IDS = tuple(f"wfg{v}" for v in range(1, 10))
PROBLEM_IDS = QUADRATIC_IDS + WFG_IDS

_QUADRATICS = {
    "bisphere": BiSphere,
    "sphere-rot-ellipsoid": SphereRotatedEllipsoid,
    "concave-bisphere": ConcaveBiSphere,
    "sphere-rosenbrock": SphereRosenbrock,
}


def get_problem(problem_id: str, n: int | None = None) -> MOProblem:
    """Instantiate a problem by identifier.

    Quadratic problems default to n=10.  WFG problems default to k=4
    position plus l=20 distance variables (n=24); an explicit ``n`` keeps
    k=4 and adjusts the number of distance variables.
    """
    if problem_id in _QUADRATICS:
        return _QUADRATICS[problem_id](n if n is not None else 10)
    if problem_id in WFG_IDS:
        variant = int(problem_id[3:])
        if n is None:
            return WFG(variant)
        if n <= 4:
            raise ValueError("WFG problems need n > k = 4")
        return WFG(variant, k=4, l=n - 4)
    raise ValueError(
        f"unknown problem {problem_id!r}; available: {', '.join(PROBLEM_IDS)}"
    )
