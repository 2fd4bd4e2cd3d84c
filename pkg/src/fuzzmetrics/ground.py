"""Ground metric-space backends.

Three concrete backends carry all the geometry:

* ``line``       -- compact subsets of the real line stored as sorted,
                    disjoint, maximal closed intervals;
* ``euclidean``  -- finite point clouds in R^m;
* ``matrix``     -- finite metric spaces given by an explicit distance matrix.

A product space combines backends under the sup metric
``d(x, y) = max_j d_j(x_j, y_j)``.  Sets, points and spaces are immutable;
every operation is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .config import tolerance


class DomainError(ValueError):
    """Invalid value for an operation (wrong range, empty input, bad matrix)."""


class BackendMismatch(TypeError):
    """Operands live in different spaces or different backends."""


# ---------------------------------------------------------------------------
# spaces


class Space:
    backend: str = "abstract"

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"<{type(self).__name__}>"


class LineSpace(Space):
    backend = "line"

    def __eq__(self, other) -> bool:
        return isinstance(other, LineSpace)

    def __hash__(self) -> int:
        return hash("line")


#: The real line; all line-backend values share this space object.
LINE = LineSpace()


class EuclideanSpace(Space):
    backend = "euclidean"

    def __init__(self, dim: int):
        if dim < 1:
            raise DomainError(f"euclidean dimension must be >= 1, got {dim}")
        self.dim = int(dim)

    def __eq__(self, other) -> bool:
        return isinstance(other, EuclideanSpace) and other.dim == self.dim

    def __hash__(self) -> int:
        return hash(("euclidean", self.dim))


class MatrixSpace(Space):
    """Finite metric space: n points indexed 0..n-1 with distance matrix D."""

    backend = "matrix"

    def __init__(self, D):
        D = np.asarray(D, dtype=float)
        if D.ndim != 2 or D.shape[0] != D.shape[1]:
            raise DomainError(f"distance matrix must be square, got shape {D.shape}")
        if D.shape[0] < 1:
            raise DomainError("distance matrix must be nonempty")
        if not np.allclose(D, D.T, atol=tolerance()):
            raise DomainError("distance matrix must be symmetric")
        if not np.allclose(np.diag(D), 0.0, atol=tolerance()):
            raise DomainError("distance matrix must have zero diagonal")
        if np.any(D < 0):
            raise DomainError("distance matrix must be nonnegative")
        self.D = D
        self.D.setflags(write=False)
        self.n = D.shape[0]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixSpace)
            and other.n == self.n
            and np.array_equal(other.D, self.D)
        )

    def __hash__(self) -> int:
        return hash(("matrix", self.n))


class ProductSpace(Space):
    backend = "product"

    def __init__(self, components: Sequence[Space]):
        components = tuple(components)
        if len(components) < 1:
            raise DomainError("product space needs at least one component")
        for c in components:
            if c.backend == "product":
                raise DomainError("nested product spaces are not supported")
        self.components = components

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductSpace) and other.components == self.components

    def __hash__(self) -> int:
        return hash(("product", len(self.components)))


# ---------------------------------------------------------------------------
# points


@dataclass(frozen=True)
class GroundPoint:
    """A point of a ground space; ``value`` is backend-specific:

    line -> float, euclidean -> coordinate tuple, matrix -> index,
    product -> tuple of component values.
    """

    space: Space
    value: object

    def __post_init__(self):
        b = self.space.backend
        if b == "line":
            v = float(self.value)
            if not np.isfinite(v):
                raise DomainError(f"line point must be finite, got {v}")
            object.__setattr__(self, "value", v)
        elif b == "euclidean":
            v = tuple(float(c) for c in self.value)
            if len(v) != self.space.dim:
                raise DomainError(
                    f"point has {len(v)} coordinates, space has dim {self.space.dim}"
                )
            if not all(np.isfinite(c) for c in v):
                raise DomainError("euclidean point must have finite coordinates")
            object.__setattr__(self, "value", v)
        elif b == "matrix":
            i = int(self.value)
            if not 0 <= i < self.space.n:
                raise DomainError(f"index {i} outside matrix space of size {self.space.n}")
            object.__setattr__(self, "value", i)
        elif b == "product":
            comps = self.space.components
            vals = tuple(self.value)
            if len(vals) != len(comps):
                raise DomainError("product point arity mismatch")
            object.__setattr__(
                self, "value", tuple(GroundPoint(c, v).value for c, v in zip(comps, vals))
            )
        else:  # pragma: no cover - defensive
            raise BackendMismatch(f"unknown backend {b!r}")


def line_point(x: float) -> GroundPoint:
    return GroundPoint(LINE, x)


# ---------------------------------------------------------------------------
# sets


class GroundSet:
    """A nonempty compact set in one backend.

    Line sets are canonical interval unions (sorted, disjoint, maximal);
    euclidean sets are lexicographically sorted distinct points; matrix sets
    are sorted index arrays; product sets are tuples of component sets.
    """

    __slots__ = ("space", "ivals", "points_arr", "indices", "parts")

    def __init__(self, space: Space, data):
        self.space = space
        self.ivals = None
        self.points_arr = None
        self.indices = None
        self.parts = None
        b = space.backend
        if b == "line":
            self.ivals = data
        elif b == "euclidean":
            self.points_arr = data
        elif b == "matrix":
            self.indices = data
        elif b == "product":
            self.parts = data
        else:  # pragma: no cover - defensive
            raise BackendMismatch(f"unknown backend {b!r}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_intervals(intervals: Iterable[Sequence[float]]) -> "GroundSet":
        return closure_of_interval_list(intervals)

    # -- structure ---------------------------------------------------------

    @property
    def backend(self) -> str:
        return self.space.backend

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroundSet) or other.space != self.space:
            return False
        tol = tolerance()
        b = self.backend
        if b == "line":
            return self.ivals.shape == other.ivals.shape and np.allclose(
                self.ivals, other.ivals, atol=tol, rtol=0.0
            )
        if b == "euclidean":
            return self.points_arr.shape == other.points_arr.shape and np.allclose(
                self.points_arr, other.points_arr, atol=tol, rtol=0.0
            )
        if b == "matrix":
            return np.array_equal(self.indices, other.indices)
        return all(p == q for p, q in zip(self.parts, other.parts))

    def __hash__(self):  # pragma: no cover - sets are not meant as dict keys
        return id(self)

    def contains(self, x: GroundPoint) -> bool:
        if x.space != self.space:
            raise BackendMismatch("point and set live in different spaces")
        return dist_to_set(x, self) <= tolerance()

    def __contains__(self, x: GroundPoint) -> bool:
        return self.contains(x)

    def subset_of(self, other: "GroundSet") -> bool:
        if other.space != self.space:
            raise BackendMismatch("sets live in different spaces")
        tol = tolerance()
        b = self.backend
        if b == "line":
            # every interval of self must sit inside one interval of other
            for a, c in self.ivals:
                j = np.searchsorted(other.ivals[:, 0], a + tol) - 1
                if j < 0 or a < other.ivals[j, 0] - tol or c > other.ivals[j, 1] + tol:
                    return False
            return True
        if b == "euclidean":
            for p in self.points_arr:
                if np.min(np.linalg.norm(other.points_arr - p, axis=1)) > tol:
                    return False
            return True
        if b == "matrix":
            return bool(np.all(np.isin(self.indices, other.indices)))
        return all(p.subset_of(q) for p, q in zip(self.parts, other.parts))

    def enumerate_points(self) -> list:
        """Finite enumeration of the set's elements (backend values).

        Line sets qualify only when every interval is degenerate; product
        sets when each component does.  Raises DomainError otherwise.
        """
        b = self.backend
        tol = tolerance()
        if b == "line":
            if np.any(self.ivals[:, 1] - self.ivals[:, 0] > tol):
                raise DomainError("line set with non-degenerate intervals is not finite")
            return [float(a) for a, _ in self.ivals]
        if b == "euclidean":
            return [tuple(p) for p in self.points_arr]
        if b == "matrix":
            return [int(i) for i in self.indices]
        comp_lists = [p.enumerate_points() for p in self.parts]
        out = [()]
        for lst in comp_lists:
            out = [t + (v,) for t in out for v in lst]
        return out

    def to_json(self) -> dict:
        b = self.backend
        if b == "line":
            return {"backend": "line", "intervals": [[float(a), float(c)] for a, c in self.ivals]}
        if b == "euclidean":
            return {
                "backend": "euclidean",
                "dim": self.space.dim,
                "points": [[float(c) for c in p] for p in self.points_arr],
            }
        if b == "matrix":
            return {
                "backend": "matrix",
                "n": self.space.n,
                "D": [[float(v) for v in row] for row in self.space.D],
                "indices": [int(i) for i in self.indices],
            }
        raise DomainError("product sets have no JSON form")

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        b = self.backend
        if b == "line":
            return f"GroundSet(line, {self.ivals.tolist()})"
        if b == "euclidean":
            return f"GroundSet(euclidean, {len(self.points_arr)} pts)"
        if b == "matrix":
            return f"GroundSet(matrix, {self.indices.tolist()})"
        return f"GroundSet(product, {self.parts!r})"


def closure_of_interval_list(intervals: Iterable[Sequence[float]]) -> GroundSet:
    """Canonical line set: merge overlapping/touching intervals, sort them."""
    raw = [(float(a), float(b)) for a, b in intervals]
    if not raw:
        raise DomainError("empty interval list")
    tol = tolerance()
    for a, b in raw:
        if not (np.isfinite(a) and np.isfinite(b)):
            raise DomainError(f"interval endpoints must be finite, got [{a}, {b}]")
        if b < a - tol:
            raise DomainError(f"interval has b < a: [{a}, {b}]")
    raw.sort()
    merged = [[raw[0][0], max(raw[0])]]
    for a, b in raw[1:]:
        if a <= merged[-1][1] + tol:
            merged[-1][1] = max(merged[-1][1], b)
        else:
            merged.append([a, b])
    arr = np.array(merged, dtype=float)
    arr.setflags(write=False)
    return GroundSet(LINE, arr)


def line_set(intervals: Iterable[Sequence[float]]) -> GroundSet:
    return closure_of_interval_list(intervals)


def euclidean_set(points: Iterable[Sequence[float]], dim: int | None = None) -> GroundSet:
    pts = [tuple(float(c) for c in p) for p in points]
    if not pts:
        raise DomainError("empty point list")
    if dim is None:
        dim = len(pts[0])
    space = EuclideanSpace(dim)
    arr = np.array(sorted(set(pts)), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DomainError(f"points do not all have dimension {dim}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("euclidean points must be finite")
    arr.setflags(write=False)
    return GroundSet(space, arr)


def matrix_set(space: MatrixSpace, indices: Iterable[int]) -> GroundSet:
    idx = np.unique(np.asarray(list(indices), dtype=np.int64))
    if idx.size == 0:
        raise DomainError("empty index set")
    if idx[0] < 0 or idx[-1] >= space.n:
        raise DomainError(f"indices outside 0..{space.n - 1}")
    idx.setflags(write=False)
    return GroundSet(space, idx)


def product_set(parts: Sequence[GroundSet]) -> GroundSet:
    parts = tuple(parts)
    if not parts:
        raise DomainError("empty product")
    space = ProductSpace(tuple(p.space for p in parts))
    return GroundSet(space, parts)


def singleton_set(x: GroundPoint) -> GroundSet:
    b = x.space.backend
    if b == "line":
        return line_set([[x.value, x.value]])
    if b == "euclidean":
        return euclidean_set([x.value], x.space.dim)
    if b == "matrix":
        return matrix_set(x.space, [x.value])
    comps = [
        singleton_set(GroundPoint(s, v)) for s, v in zip(x.space.components, x.value)
    ]
    return product_set(comps)


# ---------------------------------------------------------------------------
# metric operations


def dist(x: GroundPoint, y: GroundPoint) -> float:
    if x.space != y.space:
        raise BackendMismatch("points live in different spaces")
    return _dist_values(x.space, x.value, y.value)


def _dist_values(space: Space, xv, yv) -> float:
    b = space.backend
    if b == "line":
        return abs(xv - yv)
    if b == "euclidean":
        return float(np.linalg.norm(np.subtract(xv, yv)))
    if b == "matrix":
        return float(space.D[xv, yv])
    return max(
        _dist_values(c, a, b2) for c, a, b2 in zip(space.components, xv, yv)
    )


def product_dist(x: Sequence, y: Sequence, P: ProductSpace) -> float:
    """Sup metric on a finite product, max of component distances."""
    x = GroundPoint(P, tuple(x))
    y = GroundPoint(P, tuple(y))
    return dist(x, y)


def dist_to_set(x: GroundPoint, A: GroundSet) -> float:
    if x.space != A.space:
        raise BackendMismatch("point and set live in different spaces")
    return _dist_value_to_set(A, x.value)


def _dist_value_to_set(A: GroundSet, xv) -> float:
    b = A.backend
    if b == "line":
        return _dist_to_intervals(float(xv), A.ivals)
    if b == "euclidean":
        return float(np.min(np.linalg.norm(A.points_arr - np.asarray(xv, float), axis=1)))
    if b == "matrix":
        return float(np.min(A.space.D[int(xv), A.indices]))
    return max(
        _dist_value_to_set(p, v) for p, v in zip(A.parts, xv)
    )


def _dist_to_intervals(x: float, ivals: np.ndarray) -> float:
    starts = ivals[:, 0]
    ends = ivals[:, 1]
    j = int(np.searchsorted(starts, x))
    best = np.inf
    if j < len(starts):
        best = starts[j] - x
        if best <= 0:
            return 0.0
    if j > 0:
        if x <= ends[j - 1]:
            return 0.0
        best = min(best, x - ends[j - 1])
    return float(best)


def diameter(A: GroundSet) -> float:
    b = A.backend
    if b == "line":
        return float(A.ivals[-1, 1] - A.ivals[0, 0])
    if b == "euclidean":
        P = A.points_arr
        if len(P) == 1:
            return 0.0
        diff = P[:, None, :] - P[None, :, :]
        return float(np.sqrt((diff * diff).sum(axis=2)).max())
    if b == "matrix":
        sub = A.space.D[np.ix_(A.indices, A.indices)]
        return float(sub.max())
    return max(diameter(p) for p in A.parts)


def union(A: GroundSet, B: GroundSet) -> GroundSet:
    if A.space != B.space:
        raise BackendMismatch("sets live in different spaces")
    b = A.backend
    if b == "line":
        return closure_of_interval_list(list(A.ivals) + list(B.ivals))
    if b == "euclidean":
        return euclidean_set(
            [tuple(p) for p in A.points_arr] + [tuple(p) for p in B.points_arr],
            A.space.dim,
        )
    if b == "matrix":
        return matrix_set(A.space, np.concatenate([A.indices, B.indices]))
    return product_set([union(p, q) for p, q in zip(A.parts, B.parts)])


# ---------------------------------------------------------------------------
# JSON


def set_from_json(obj: dict, space: Space | None = None) -> GroundSet:
    """Parse a GroundSet.  ``space`` supplies the backend header when ``obj``
    carries only the body (as inside fuzzy-set level lists)."""
    if not isinstance(obj, dict):
        raise DomainError(f"ground set JSON must be an object, got {type(obj).__name__}")
    backend = obj.get("backend")
    if backend is None and space is not None:
        backend = space.backend
    if backend == "line":
        if "intervals" not in obj:
            raise DomainError("line set JSON needs 'intervals'")
        return line_set(obj["intervals"])
    if backend == "euclidean":
        if "points" not in obj:
            raise DomainError("euclidean set JSON needs 'points'")
        dim = obj.get("dim", space.dim if isinstance(space, EuclideanSpace) else None)
        return euclidean_set(obj["points"], dim)
    if backend == "matrix":
        if isinstance(space, MatrixSpace):
            msp = space
        else:
            if "D" not in obj or "n" not in obj:
                raise DomainError("matrix set JSON needs 'n' and 'D'")
            msp = MatrixSpace(obj["D"])
            if msp.n != int(obj["n"]):
                raise DomainError("matrix JSON: n does not match D's shape")
        if "indices" not in obj:
            raise DomainError("matrix set JSON needs 'indices'")
        return matrix_set(msp, obj["indices"])
    raise DomainError(f"unknown backend in ground set JSON: {backend!r}")


def space_to_json(space: Space) -> dict:
    b = space.backend
    if b == "line":
        return {"backend": "line"}
    if b == "euclidean":
        return {"backend": "euclidean", "dim": space.dim}
    if b == "matrix":
        return {
            "backend": "matrix",
            "n": space.n,
            "D": [[float(v) for v in row] for row in space.D],
        }
    raise DomainError("product spaces have no JSON form")


def space_from_json(obj: dict) -> Space:
    backend = obj.get("backend")
    if backend == "line":
        return LINE
    if backend == "euclidean":
        if "dim" not in obj:
            raise DomainError("euclidean space JSON needs 'dim'")
        return EuclideanSpace(int(obj["dim"]))
    if backend == "matrix":
        if "D" not in obj:
            raise DomainError("matrix space JSON needs 'D'")
        sp = MatrixSpace(obj["D"])
        if "n" in obj and int(obj["n"]) != sp.n:
            raise DomainError("matrix JSON: n does not match D's shape")
        return sp
    raise DomainError(f"unknown backend in space JSON: {backend!r}")
