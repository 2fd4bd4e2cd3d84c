"""Hausdorff distance between compact ground sets.

``hausdorff_pre`` is the directed distance H*(A, B) = sup_{a in A} d(a, B);
``hausdorff`` symmetrises it.  On the line backend the sup is evaluated on an
exact finite candidate set, so no discretisation error enters: restricted to
A, x -> d(x, B) is piecewise linear with slopes +-1 and attains its maximum
either at an endpoint of one of A's intervals or at a midpoint of a gap of B
that lies inside A.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from . import kernels
from .ground import BackendMismatch, GroundSet


def hausdorff_pre(A: GroundSet, B: GroundSet) -> float:
    """Directed Hausdorff distance sup_{a in A} d(a, B)."""
    if A.space != B.space:
        raise BackendMismatch("sets live in different spaces")
    b = A.backend
    if b == "line":
        return float(
            kernels.hstar_line(
                np.ascontiguousarray(A.ivals[:, 0]),
                np.ascontiguousarray(A.ivals[:, 1]),
                np.ascontiguousarray(B.ivals[:, 0]),
                np.ascontiguousarray(B.ivals[:, 1]),
            )
        )
    if b == "euclidean":
        diff = A.points_arr[:, None, :] - B.points_arr[None, :, :]
        dmat = np.sqrt((diff * diff).sum(axis=2))
        return float(dmat.min(axis=1).max())
    if b == "matrix":
        sub = A.space.D[np.ix_(A.indices, B.indices)]
        return float(sub.min(axis=1).max())
    # full cartesian products under the sup metric: the directed distance
    # factors, sup_x max_j d(x_j, B_j) = max_j sup_{x_j} d(x_j, B_j)
    return max(hausdorff_pre(p, q) for p, q in zip(A.parts, B.parts))


def hausdorff(A: GroundSet, B: GroundSet) -> float:
    """Hausdorff distance max{H*(A,B), H*(B,A)}."""
    return max(hausdorff_pre(A, B), hausdorff_pre(B, A))


def hausdorff_ext(A: GroundSet | None, B: GroundSet | None) -> float:
    """Hausdorff distance extended to the empty set.

    H'(empty, empty) = 0 and H'(empty, S) = +inf for nonempty S; on two
    nonempty sets it coincides with ``hausdorff``.
    """
    if A is None and B is None:
        return 0.0
    if A is None or B is None:
        return math.inf
    return hausdorff(A, B)


def hausdorff_product(As: Sequence[GroundSet], Bs: Sequence[GroundSet]) -> float:
    """Hausdorff distance between product sets prod(As) and prod(Bs) under the
    sup metric; equals the largest componentwise Hausdorff distance."""
    if len(As) != len(Bs):
        raise BackendMismatch(f"component lists differ in length: {len(As)} vs {len(Bs)}")
    if len(As) < 1:
        raise BackendMismatch("need at least one component")
    return max(hausdorff(a, b) for a, b in zip(As, Bs))
