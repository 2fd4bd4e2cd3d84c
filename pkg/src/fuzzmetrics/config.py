"""Global numeric configuration.

All floating-point comparisons in the package go through the single absolute
tolerance defined here.  Values are plain IEEE doubles; +inf is the only
non-finite value that ever appears (it is the "infinite distance" of the
empty-set Hausdorff extension and of divergent integrals).
"""

import os

#: Absolute comparison tolerance.  Overridable through the environment so the
#: CLI and test harness stay in sync without plumbing a parameter everywhere.
DEFAULT_TOL = 1e-9

#: Default certification budget for any sampled (non-exact) evaluation path.
DEFAULT_CERT_TOL = 1e-6


def tolerance() -> float:
    """Active comparison tolerance (env var FUZZMETRICS_TOL wins)."""
    raw = os.environ.get("FUZZMETRICS_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        val = float(raw)
    except ValueError as exc:
        raise ValueError(f"FUZZMETRICS_TOL is not a number: {raw!r}") from exc
    if val <= 0:
        raise ValueError(f"FUZZMETRICS_TOL must be positive, got {val}")
    return val


def use_numba() -> bool:
    """Kernel backend selector: set FUZZMETRICS_NO_NUMBA=1 to force numpy."""
    return os.environ.get("FUZZMETRICS_NO_NUMBA", "").strip() not in ("1", "true", "yes")
