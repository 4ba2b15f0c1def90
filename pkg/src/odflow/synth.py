"""Synthetic dataset generator.

Builds a spatial graph (path, grid, or random planar), computes its spectral
ordering, and then plants trip patterns directly in rank space so each
pattern is recoverable from the finished OD plot:

  diagonal    short trips, |origin rank - dest rank| <= ~2% of n
  vertical    common-origin band (width < 5% of n), destinations anywhere
  horizontal  common-destination band, origins anywhere
  cluster     off-diagonal blob, both ranks confined to narrow bands

Class labels are assigned by exact quota, features are drawn conditionally
on the label, and the predicted column comes from a linear scorer whose
per-trip attributions are written alongside.  Everything is driven by one
RNG seed, so a rerun reproduces every file byte for byte.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .bundle import DatasetBundle
from .explain import AttributionTable, linear_shapley
from .graph import SpatialGraph, make_graph
from .odplot import TripTable
from .spectral import order_nodes

PATTERNS = ("diagonal", "vertical", "horizontal", "cluster")

MODES = ("bike", "bus", "car")
WEEKDAYS = ("fri", "mon", "sat", "sun", "thu", "tue", "wed")

FEATURE_NAMES = ("duration", "speed", "hour", "mode", "weekday", "rank_span")
FEATURE_KINDS = (
    "continuous",
    "continuous",
    "continuous",
    "discrete",
    "discrete",
    "continuous",
)


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for one synthetic bundle.

    graph is "path:N", "grid:WxH", or "planar:N".  weights are the pattern
    mix (diagonal, vertical, horizontal, cluster); they must be nonnegative
    and not all zero.
    """

    graph: str
    trips: int
    weights: tuple[float, float, float, float] = (0.5, 0.2, 0.2, 0.1)
    class_ratio: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.trips < 1:
            raise ValueError("trip count must be positive")
        if len(self.weights) != 4 or any(w < 0 for w in self.weights):
            raise ValueError("need 4 nonnegative pattern weights")
        if sum(self.weights) <= 0:
            raise ValueError("pattern weights must not all be zero")
        if not 0.0 <= self.class_ratio <= 1.0:
            raise ValueError("class_ratio must be in [0, 1]")
        _parse_graph_kind(self.graph)


def _parse_graph_kind(kind: str) -> tuple[str, tuple[int, ...]]:
    m = re.fullmatch(r"path:(\d+)", kind)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ValueError("path needs at least 2 nodes")
        return "path", (n,)
    m = re.fullmatch(r"grid:(\d+)x(\d+)", kind)
    if m:
        w, h = int(m.group(1)), int(m.group(2))
        if w * h < 2 or min(w, h) < 1:
            raise ValueError("grid needs at least 2 nodes")
        return "grid", (w, h)
    m = re.fullmatch(r"planar:(\d+)", kind)
    if m:
        n = int(m.group(1))
        if n < 4:
            raise ValueError("planar needs at least 4 nodes")
        return "planar", (n,)
    raise ValueError(f"unknown graph kind {kind!r} (want path:N, grid:WxH, planar:N)")


def make_synthetic_graph(kind: str, seed: int = 0) -> SpatialGraph:
    shape, dims = _parse_graph_kind(kind)
    if shape == "path":
        (n,) = dims
        nodes = [(i, float(i), 0.0) for i in range(n)]
        edges = [(i, i + 1, 1.0) for i in range(n - 1)]
        return make_graph(nodes, edges)
    if shape == "grid":
        w, h = dims
        nodes = [(j * w + i, float(i), float(j)) for j in range(h) for i in range(w)]
        edges = []
        for j in range(h):
            for i in range(w):
                nid = j * w + i
                if i + 1 < w:
                    edges.append((nid, nid + 1, 1.0))
                if j + 1 < h:
                    edges.append((nid, nid + w, 1.0))
        return make_graph(nodes, edges)
    # random planar: Delaunay triangulation of uniform points
    from scipy.spatial import Delaunay

    (n,) = dims
    rng = np.random.default_rng(seed)
    pts = rng.uniform(0.0, 100.0, size=(n, 2))
    tri = Delaunay(pts)
    pairs = set()
    for simplex in tri.simplices:
        for a, b in ((0, 1), (1, 2), (0, 2)):
            u, v = int(simplex[a]), int(simplex[b])
            pairs.add((min(u, v), max(u, v)))
    nodes = [(i, float(pts[i, 0]), float(pts[i, 1])) for i in range(n)]
    edges = [
        (u, v, float(np.hypot(*(pts[u] - pts[v])))) for u, v in sorted(pairs)
    ]
    return make_graph(nodes, edges)


def _band(rng: np.random.Generator, n: int, lo_frac: float, hi_frac: float, width: int):
    """Pick a band of `width` consecutive ranks inside [lo_frac, hi_frac)."""
    lo = int(lo_frac * n)
    hi = max(lo + 1, int(hi_frac * n) - width)
    start = int(rng.integers(lo, hi))
    return start, min(start + width, n)


def _rank_pairs(rng, pattern: str, count: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    if count == 0:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    band_w = max(1, int(0.04 * n))
    if pattern == "diagonal":
        k = max(1, int(0.02 * n))
        ox = rng.integers(min(k, n - 1 - k), max(k + 1, n - k), size=count)
        off = rng.integers(1, k + 1, size=count) * rng.choice([-1, 1], size=count)
        dy = np.clip(ox + off, 0, n - 1)
        return ox.astype(np.int64), dy.astype(np.int64)
    if pattern == "vertical":
        lo, hi = _band(rng, n, 0.1, 0.9, band_w)
        ox = rng.integers(lo, hi, size=count)
        dy = rng.integers(0, n, size=count)
        return ox.astype(np.int64), dy.astype(np.int64)
    if pattern == "horizontal":
        lo, hi = _band(rng, n, 0.1, 0.9, band_w)
        ox = rng.integers(0, n, size=count)
        dy = rng.integers(lo, hi, size=count)
        return ox.astype(np.int64), dy.astype(np.int64)
    if pattern == "cluster":
        xlo, xhi = _band(rng, n, 0.05, 0.30, band_w)
        ylo, yhi = _band(rng, n, 0.65, 0.95, band_w)
        ox = rng.integers(xlo, xhi, size=count)
        dy = rng.integers(ylo, yhi, size=count)
        return ox.astype(np.int64), dy.astype(np.int64)
    raise ValueError(f"unknown pattern {pattern!r}")


def _draw_features(rng, labels: np.ndarray, rank_span: np.ndarray) -> dict:
    t = len(labels)
    is1 = labels == 1
    duration = np.where(is1, rng.normal(30.0, 6.0, t), rng.normal(22.0, 6.0, t))
    speed = np.where(is1, rng.normal(24.0, 5.0, t), rng.normal(31.0, 5.0, t))
    hour = rng.uniform(0.0, 24.0, t)
    mode_p0 = np.array([0.15, 0.25, 0.60])
    mode_p1 = np.array([0.25, 0.40, 0.35])
    mode_idx = np.where(
        is1,
        rng.choice(len(MODES), size=t, p=mode_p1),
        rng.choice(len(MODES), size=t, p=mode_p0),
    )
    weekday_idx = rng.integers(0, len(WEEKDAYS), size=t)
    span = rank_span + rng.normal(0.0, 0.05, t)
    return {
        "duration": duration,
        "speed": speed,
        "hour": hour,
        "mode": np.array([MODES[i] for i in mode_idx]),
        "weekday": np.array([WEEKDAYS[i] for i in weekday_idx]),
        "rank_span": span,
    }


def _encode(features: dict) -> np.ndarray:
    """Numeric model matrix: category index for discrete columns."""
    cols = []
    for name, kind in zip(FEATURE_NAMES, FEATURE_KINDS):
        if kind == "continuous":
            cols.append(features[name].astype(np.float64))
        else:
            cats = MODES if name == "mode" else WEEKDAYS
            lut = {c: float(i) for i, c in enumerate(cats)}
            cols.append(np.array([lut[v] for v in features[name]]))
    return np.column_stack(cols)


def _fit_scorer(x: np.ndarray, labels: np.ndarray):
    """Class-separation direction; degenerate single-class data scores flat."""
    is1 = labels == 1
    if not is1.any() or is1.all():
        return np.zeros(x.shape[1]), 0.0
    mu0, mu1 = x[~is1].mean(axis=0), x[is1].mean(axis=0)
    var = x.var(axis=0) + 1e-9
    w = (mu1 - mu0) / var
    scores = x @ w
    bias = -0.5 * (scores[~is1].mean() + scores[is1].mean())
    return w, float(bias)


def generate(spec: SyntheticSpec, dataset_id: str = "synthetic") -> DatasetBundle:
    rng = np.random.default_rng(spec.seed)
    graph = make_synthetic_graph(spec.graph, seed=spec.seed)
    ordering = order_nodes(graph)
    n = ordering.n

    node_by_rank = np.empty(n, dtype=np.int64)
    for node, rank in ordering.rank.items():
        node_by_rank[rank] = node

    p = np.asarray(spec.weights, dtype=np.float64)
    counts = rng.multinomial(spec.trips, p / p.sum())
    ox_parts, dy_parts = [], []
    for pattern, count in zip(PATTERNS, counts):
        ox, dy = _rank_pairs(rng, pattern, int(count), n)
        ox_parts.append(ox)
        dy_parts.append(dy)
    ox = np.concatenate(ox_parts)
    dy = np.concatenate(dy_parts)
    order = rng.permutation(spec.trips)
    ox, dy = ox[order], dy[order]

    t = spec.trips
    n1 = round(spec.class_ratio * t)
    labels = np.zeros(t, dtype=np.int8)
    labels[rng.permutation(t)[:n1]] = 1

    rank_span = np.abs(ox - dy) / max(1, n)
    features = _draw_features(rng, labels, rank_span)
    x = _encode(features)
    w, bias = _fit_scorer(x, labels)
    if np.any(w):
        predicted = ((x @ w + bias) > 0).astype(np.int8)
    else:
        predicted = labels.copy()

    trip_ids = np.arange(t, dtype=np.int64)
    trips = TripTable(
        trip_ids=trip_ids,
        origins=node_by_rank[ox],
        dests=node_by_rank[dy],
        labels=labels,
        predicted=predicted,
        feature_names=FEATURE_NAMES,
        feature_kinds=FEATURE_KINDS,
        features=features,
    )

    background = x.mean(axis=0)
    values = np.vstack([linear_shapley(w, bias, background, x[i]) for i in range(t)])
    attrs = AttributionTable(
        trip_ids=trip_ids, values=values, feature_names=FEATURE_NAMES
    )

    return DatasetBundle(
        dataset_id=dataset_id,
        graph=graph,
        ordering=ordering,
        trips=trips,
        attributions=attrs,
    )
