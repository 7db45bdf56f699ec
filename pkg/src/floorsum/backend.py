"""Kernel backend selection.

The numeric inner loops (sieve segments, floor-quotient sums, Vaaler
grids, triple exponential sums, proximity counts) exist twice: a numba
@njit implementation and a pure-numpy one. The active backend is chosen
once at import time from the FLOORSUM_BACKEND environment variable:

    FLOORSUM_BACKEND=auto   use numba when importable, else numpy (default)
    FLOORSUM_BACKEND=numba  require numba, fail if missing
    FLOORSUM_BACKEND=numpy  force the pure-numpy path

Both backends compute the same quantities; the test suite runs the
equivalence checks against whichever is active, and tests/benchmarks can
import the backend modules directly to compare the two.
"""

import os


def _choose() -> str:
    requested = os.environ.get("FLOORSUM_BACKEND", "auto").strip().lower()
    if requested not in ("auto", "numba", "numpy"):
        raise RuntimeError(
            f"FLOORSUM_BACKEND must be auto, numba or numpy; got {requested!r}"
        )
    if requested == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        if requested == "numba":
            raise RuntimeError("FLOORSUM_BACKEND=numba but numba is not importable")
        return "numpy"


BACKEND = _choose()
