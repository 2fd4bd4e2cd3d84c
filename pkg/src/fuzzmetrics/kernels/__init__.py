"""Kernel dispatch: numba-compiled loops by default, pure numpy on request.

Set FUZZMETRICS_NO_NUMBA=1 (or run without numba installed) to select the
numpy twins.  Both implementations share one data layout and are asserted
equal in the test suite; `benchmarks/bench_kernels.py` times them head to
head.
"""

from ..config import use_numba
from . import numpy_impl

_impl = numpy_impl
_backend = "numpy"

if use_numba():
    try:
        from . import numba_impl as _numba_mod

        _impl = _numba_mod
        _backend = "numba"
    except ImportError:  # numba missing: silently fall back
        pass


def active_backend() -> str:
    return _backend


hstar_line = _impl.hstar_line
hausdorff_line = _impl.hausdorff_line
riemann_pow_line = _impl.riemann_pow_line
graph_directed_step_line = _impl.graph_directed_step_line
graph_grid_directed_line = _impl.graph_grid_directed_line
dist_union_vec = numpy_impl.dist_union_vec
