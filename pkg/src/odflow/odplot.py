"""Trip projection onto OD-plot coordinates and selection evaluation.

Each trip becomes one integer point (origin rank, destination rank).  The
geometry here is deliberately plain: inclusive rectangles and axis bands,
even-odd polygons with boundary points counted inside, and equal-width
floor binning for density grids and OD matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal, NamedTuple, Sequence, Union

import numpy as np

from .errors import IntegrityError, InvalidSelectionError, UnknownTripError
from .graph import SpatialGraph
from .spectral import FiedlerOrdering

ClassFilter = Literal["all", "0", "1"]
CLASS_FILTERS = ("all", "0", "1")


class OdPoint(NamedTuple):
    trip_id: int
    x: int  # origin rank
    y: int  # destination rank


@dataclass(frozen=True)
class TripTable:
    """Trips plus their feature columns.

    ``features`` maps feature name to a column aligned with ``trip_ids``:
    float64 for continuous features, str for discrete ones.
    """

    trip_ids: np.ndarray  # (t,) int64, unique
    origins: np.ndarray  # (t,) int64 node ids
    dests: np.ndarray  # (t,) int64 node ids
    labels: np.ndarray  # (t,) int8 in {0, 1}
    predicted: np.ndarray  # (t,) int8 in {0, 1}
    feature_names: tuple[str, ...] = ()
    feature_kinds: tuple[str, ...] = ()  # "discrete" | "continuous"
    features: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        t = len(self.trip_ids)
        if len(np.unique(self.trip_ids)) != t:
            raise IntegrityError("trip_ids are not unique")
        for arr_name in ("origins", "dests", "labels", "predicted"):
            if len(getattr(self, arr_name)) != t:
                raise IntegrityError(f"{arr_name} length != number of trips")
        if len(self.feature_names) != len(self.feature_kinds):
            raise IntegrityError("feature_names and feature_kinds disagree")
        for name in self.feature_names:
            col = self.features.get(name)
            if col is None or len(col) != t:
                raise IntegrityError(f"feature column {name!r} missing or misaligned")
        for kind in self.feature_kinds:
            if kind not in ("discrete", "continuous"):
                raise IntegrityError(f"unknown feature kind {kind!r}")

    @property
    def n_trips(self) -> int:
        return len(self.trip_ids)

    @property
    def n_features(self) -> int:
        return len(self.feature_names)

    @cached_property
    def index(self) -> dict[int, int]:
        return {int(tid): i for i, tid in enumerate(self.trip_ids)}

    def rows_for(self, ids: Sequence[int]) -> np.ndarray:
        """Row indices for a collection of trip ids (sorted by trip_id)."""
        lut = self.index
        try:
            return np.array([lut[int(t)] for t in sorted(ids)], dtype=np.int64)
        except KeyError as exc:
            raise UnknownTripError(f"unknown trip_id {exc.args[0]}") from None

    def kind_of(self, feature: str) -> str:
        try:
            return self.feature_kinds[self.feature_names.index(feature)]
        except ValueError:
            from .errors import UnknownFeatureError

            raise UnknownFeatureError(f"unknown feature {feature!r}") from None


# ---------------------------------------------------------------------------
# Selection shapes


@dataclass(frozen=True)
class Rectangle:
    x0: float
    x1: float
    y0: float
    y1: float

    def __post_init__(self):
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise InvalidSelectionError("rectangle bounds must satisfy x0<=x1, y0<=y1")


@dataclass(frozen=True)
class AxisBand:
    axis: Literal["x", "y"]
    lo: float
    hi: float

    def __post_init__(self):
        if self.axis not in ("x", "y"):
            raise InvalidSelectionError(f"band axis must be 'x' or 'y', got {self.axis!r}")
        if self.lo > self.hi:
            raise InvalidSelectionError("band bounds must satisfy lo<=hi")


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise InvalidSelectionError("polygon needs at least 3 vertices")


Shape = Union[Rectangle, AxisBand, Polygon]


@dataclass(frozen=True)
class Selection:
    shape: Shape
    class_filter: ClassFilter = "all"

    def __post_init__(self):
        if self.class_filter not in CLASS_FILTERS:
            raise InvalidSelectionError(
                f"class_filter must be one of {CLASS_FILTERS}, got {self.class_filter!r}"
            )


# ---------------------------------------------------------------------------
# Operations


def project_trips(t: TripTable, o: FiedlerOrdering) -> list[OdPoint]:
    """One OdPoint per trip, in table order: (origin rank, dest rank)."""
    rank = o.rank
    points = []
    for tid, orig, dest in zip(t.trip_ids, t.origins, t.dests):
        try:
            points.append(OdPoint(int(tid), rank[int(orig)], rank[int(dest)]))
        except KeyError as exc:
            raise IntegrityError(
                f"trip {int(tid)} references node {exc.args[0]} absent from the ordering"
            ) from None
    return points


def _point_arrays(points: Sequence[OdPoint]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ids = np.fromiter((p.trip_id for p in points), dtype=np.int64, count=len(points))
    xs = np.fromiter((p.x for p in points), dtype=np.int64, count=len(points))
    ys = np.fromiter((p.y for p in points), dtype=np.int64, count=len(points))
    return ids, xs, ys


def _polygon_mask(poly: Polygon, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Even-odd rule, boundary points inside, vectorized over points."""
    verts = np.asarray(poly.vertices, dtype=np.float64)
    px = xs.astype(np.float64)
    py = ys.astype(np.float64)
    inside = np.zeros(len(px), dtype=bool)
    boundary = np.zeros(len(px), dtype=bool)
    n = len(verts)
    for i in range(n):
        x1, y1 = verts[i]
        x2, y2 = verts[(i + 1) % n]
        # edge crossing for a rightward ray from the point
        crosses = (y1 > py) != (y2 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_at = np.where(crosses, (x2 - x1) * (py - y1) / (y2 - y1) + x1, 0.0)
        inside ^= crosses & (px < x_at)
        # on-segment test: collinear and within the bounding box
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        onseg = (
            (cross == 0.0)
            & (px >= min(x1, x2))
            & (px <= max(x1, x2))
            & (py >= min(y1, y2))
            & (py <= max(y1, y2))
        )
        boundary |= onseg
    return inside | boundary


def _geometry_mask(shape: Shape, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    if isinstance(shape, Rectangle):
        return (xs >= shape.x0) & (xs <= shape.x1) & (ys >= shape.y0) & (ys <= shape.y1)
    if isinstance(shape, AxisBand):
        coord = xs if shape.axis == "x" else ys
        return (coord >= shape.lo) & (coord <= shape.hi)
    if isinstance(shape, Polygon):
        return _polygon_mask(shape, xs, ys)
    raise InvalidSelectionError(f"unknown shape {type(shape).__name__}")


def _class_mask_aligned(t: TripTable, ids: np.ndarray, class_filter: ClassFilter) -> np.ndarray:
    """Boolean mask over ``ids`` (any order) for the label filter."""
    if class_filter == "all":
        return np.ones(len(ids), dtype=bool)
    lut = t.index
    rows = np.fromiter((lut[int(i)] for i in ids), dtype=np.int64, count=len(ids))
    return t.labels[rows] == int(class_filter)


def select(points: Sequence[OdPoint], t: TripTable, s: Selection) -> set[int]:
    """Trip ids whose point satisfies the shape (boundary-inclusive) and
    whose true label passes the class filter."""
    if not points:
        return set()
    ids, xs, ys = _point_arrays(points)
    mask = _geometry_mask(s.shape, xs, ys)
    if s.class_filter != "all":
        mask &= _class_mask_aligned(t, ids, s.class_filter)
    return set(int(i) for i in ids[mask])


def density_grid(points: Sequence[OdPoint], bins: int, n: int) -> np.ndarray:
    """bins x bins counts over rank space [0, n); rows are destination bins,
    columns origin bins; cell index = floor(rank * bins / n)."""
    if not 1 <= bins <= n:
        raise InvalidSelectionError(f"bins must be in 1..{n}")
    grid = np.zeros((bins, bins), dtype=np.int64)
    if not points:
        return grid
    _, xs, ys = _point_arrays(points)
    bx = xs * bins // n
    by = ys * bins // n
    np.add.at(grid, (by, bx), 1)
    return grid


@dataclass(frozen=True)
class OdMatrix:
    """Aggregated trip counts at a fixed resolution; rows destinations,
    columns origins, same floor binning as density_grid."""

    resolution: int
    cells: np.ndarray  # (R, R) int64
    class_filter: ClassFilter

    @property
    def total(self) -> int:
        return int(self.cells.sum())


def od_matrix(
    points: Sequence[OdPoint],
    t: TripTable,
    resolution: int,
    class_filter: ClassFilter = "all",
    *,
    n: int,
) -> OdMatrix:
    """Aggregate (filtered) trips into an R x R matrix over rank space."""
    if not 1 <= resolution <= n:
        raise InvalidSelectionError(f"resolution must be in 1..{n}")
    if class_filter not in CLASS_FILTERS:
        raise InvalidSelectionError(f"bad class filter {class_filter!r}")
    if not points:
        return OdMatrix(resolution, np.zeros((resolution, resolution), dtype=np.int64), class_filter)
    ids, xs, ys = _point_arrays(points)
    keep = _class_mask_aligned(t, ids, class_filter)
    grid = np.zeros((resolution, resolution), dtype=np.int64)
    bx = xs[keep] * resolution // n
    by = ys[keep] * resolution // n
    np.add.at(grid, (by, bx), 1)
    return OdMatrix(resolution, grid, class_filter)


class TripGeometry(NamedTuple):
    trip_id: int
    origin: tuple[float, float]
    dest: tuple[float, float]
    label: int


def trip_geometry(ids: Sequence[int], t: TripTable, g: SpatialGraph) -> list[TripGeometry]:
    """Straight origin->dest segments with class labels, trip_id ascending."""
    rows = t.rows_for(ids)
    out = []
    for r in rows:
        out.append(
            TripGeometry(
                trip_id=int(t.trip_ids[r]),
                origin=g.position_of(int(t.origins[r])),
                dest=g.position_of(int(t.dests[r])),
                label=int(t.labels[r]),
            )
        )
    return out
