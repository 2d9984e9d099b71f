"""Kernel lane selection.

The compiled Cython lane is preferred when its extension was built;
otherwise (or when ``UHVOPT_PURE_PYTHON`` is set to a non-empty value) the
pure-numpy lane is used.  Both lanes implement the same contract, see
``benchmarks/bench_kernels.py`` for a side-by-side timing comparison.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

if os.environ.get("UHVOPT_PURE_PYTHON"):
    from . import _ref as _impl

    BACKEND = "pure-python"
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from . import _ref as _impl  # type: ignore[no-redef]

        BACKEND = "pure-python"


class UhvState(NamedTuple):
    """Fused per-iteration objective-space state of a solution set."""

    status: np.ndarray
    hv: float
    ud: np.ndarray
    nearest: np.ndarray
    grad: np.ndarray

    @property
    def uhv(self) -> float:
        return self.hv - float(np.dot(self.ud, self.ud)) / self.ud.shape[0]

    @property
    def n_nondominated(self) -> int:
        return int(np.count_nonzero(self.status == 0))


def uhv_state(Y: np.ndarray, reference) -> UhvState:
    """Compute the fused indicator/gradient state of ``Y`` (see lane docs)."""
    return UhvState(*_impl.uhv_state(Y, float(reference[0]), float(reference[1])))
