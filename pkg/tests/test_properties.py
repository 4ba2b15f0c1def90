"""Property-based checks over randomized graphs, points, and selections."""

import numpy as np
from hypothesis import given, settings, strategies as st

from conftest import small_trip_table
from odflow.graph import build_laplacian, make_graph
from odflow.odplot import (
    AxisBand,
    OdPoint,
    Polygon,
    Rectangle,
    Selection,
    density_grid,
    od_matrix,
    project_trips,
    select,
)
from odflow.spectral import fiedler_vector, order_nodes, rayleigh_quotient
from odflow.explain import AttributionTable, evaluate, importance


@st.composite
def connected_graphs(draw, max_n=40):
    """Random spanning tree plus optional chords, bounded lengths."""
    n = draw(st.integers(2, max_n))
    edges = []
    for i in range(1, n):
        parent = draw(st.integers(0, i - 1))
        length = draw(st.floats(0.01, 100.0, allow_nan=False))
        edges.append((parent, i, length))
    n_extra = draw(st.integers(0, min(n, 10)))
    for _ in range(n_extra):
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1))
        if a != b:
            edges.append((a, b, draw(st.floats(0.01, 100.0, allow_nan=False))))
    nodes = [(i, float(i % 7), float(i // 7)) for i in range(n)]
    return make_graph(nodes, edges)


@settings(max_examples=40, deadline=None)
@given(connected_graphs())
def test_laplacian_invariants(g):
    L = build_laplacian(g).matrix.toarray()
    assert np.allclose(L, L.T)
    assert (L - np.diag(np.diag(L)) <= 0).all()
    row_sums = L.sum(axis=1)
    assert (np.abs(row_sums) <= 1e-12 * np.maximum(np.abs(L).max(axis=1), 1.0)).all()


@settings(max_examples=25, deadline=None)
@given(connected_graphs())
def test_rank_is_bijection(g):
    o = order_nodes(g)
    n = len(g.node_ids)
    assert sorted(o.rank.values()) == list(range(n))
    assert set(o.rank) == set(int(i) for i in g.node_ids)


@settings(max_examples=20, deadline=None)
@given(connected_graphs(max_n=25), st.integers(0, 2**32 - 1))
def test_fiedler_minimizes_rayleigh(g, seed):
    L = build_laplacian(g)
    r = fiedler_vector(L)
    base = rayleigh_quotient(L, r.vector)
    rng = np.random.default_rng(seed)
    n = len(g.node_ids)
    for _ in range(20):
        u = rng.normal(size=n)
        u -= u.mean()
        norm = np.linalg.norm(u)
        if norm < 1e-12:
            continue
        assert base <= rayleigh_quotient(L, u / norm) + 1e-9


@st.composite
def point_sets(draw):
    n = draw(st.integers(2, 30))
    count = draw(st.integers(0, 60))
    pts = [
        OdPoint(i, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1)))
        for i in range(count)
    ]
    labels = [draw(st.integers(0, 1)) for _ in range(count)]
    return n, pts, labels


def table_for(pts, labels):
    return small_trip_table(
        origins=[0] * len(pts),
        dests=[0] * len(pts),
        labels=labels,
        predicted=labels,
        trip_ids=[p.trip_id for p in pts],
    )


def on_segment(px, py, ax, ay, bx, by):
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    if cross != 0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def point_in_polygon(px, py, verts):
    """Scalar even-odd rule with boundary counted inside."""
    inside = False
    m = len(verts)
    for i in range(m):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % m]
        if on_segment(px, py, ax, ay, bx, by):
            return True
        if (ay > py) != (by > py):
            x_at = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < x_at:
                inside = not inside
    return inside


@st.composite
def shapes(draw):
    which = draw(st.integers(0, 2))
    coord = st.integers(-2, 31)
    if which == 0:
        x0, x1 = sorted((draw(coord), draw(coord)))
        y0, y1 = sorted((draw(coord), draw(coord)))
        return Rectangle(float(x0), float(x1), float(y0), float(y1))
    if which == 1:
        axis = draw(st.sampled_from(["x", "y"]))
        lo, hi = sorted((draw(coord), draw(coord)))
        return AxisBand(axis, float(lo), float(hi))
    k = draw(st.integers(3, 7))
    verts = tuple((float(draw(coord)), float(draw(coord))) for _ in range(k))
    return Polygon(verts)


@settings(max_examples=60, deadline=None)
@given(point_sets(), shapes(), st.sampled_from(["all", "0", "1"]))
def test_select_equals_scalar_oracle(ps, shape, cf):
    n, pts, labels = ps
    t = table_for(pts, labels)
    got = select(pts, t, Selection(shape, class_filter=cf))

    want = set()
    for p, label in zip(pts, labels):
        if isinstance(shape, Rectangle):
            hit = shape.x0 <= p.x <= shape.x1 and shape.y0 <= p.y <= shape.y1
        elif isinstance(shape, AxisBand):
            value = p.x if shape.axis == "x" else p.y
            hit = shape.lo <= value <= shape.hi
        else:
            hit = point_in_polygon(float(p.x), float(p.y), shape.vertices)
        if hit and (cf == "all" or label == int(cf)):
            want.add(p.trip_id)
    assert got == want


@settings(max_examples=50, deadline=None)
@given(point_sets(), st.integers(1, 30))
def test_density_and_matrix_conserve_totals(ps, bins):
    n, pts, labels = ps
    if bins > n:
        bins = n
    t = table_for(pts, labels)
    grid = density_grid(pts, bins, n=n)
    assert grid.sum() == len(pts)
    m_all = od_matrix(pts, t, bins, n=n)
    m0 = od_matrix(pts, t, bins, class_filter="0", n=n)
    m1 = od_matrix(pts, t, bins, class_filter="1", n=n)
    assert m_all.total == len(pts)
    assert m0.total + m1.total == len(pts)
    assert (m0.cells + m1.cells == m_all.cells).all()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 50), st.integers(0, 2**32 - 1))
def test_importance_order_free(count, seed):
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, count)
    t = small_trip_table(
        origins=np.zeros(count), dests=np.zeros(count), labels=labels, predicted=labels
    )
    a = AttributionTable(
        trip_ids=t.trip_ids.copy(),
        values=rng.normal(size=(count, 1)),
        feature_names=t.feature_names,
    )
    ids = list(range(count))
    perm = list(rng.permutation(count))
    assert importance(ids, t, a) == importance(perm, t, a)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_evaluation_percentages_complementary(count, seed):
    rng = np.random.default_rng(seed)
    t = small_trip_table(
        origins=np.zeros(count),
        dests=np.zeros(count),
        labels=rng.integers(0, 2, count),
        predicted=rng.integers(0, 2, count),
    )
    rep = evaluate(set(range(count)), t)
    for cls in (rep.class0, rep.class1):
        if cls.support == 0:
            assert cls.hit_pct is None and cls.miss_pct is None
        else:
            assert abs(cls.hit_pct + cls.miss_pct - 100.0) <= 1e-9


@settings(max_examples=25, deadline=None)
@given(connected_graphs(max_n=20), st.integers(0, 2**31))
def test_projection_points_stay_in_rank_range(g, seed):
    rng = np.random.default_rng(seed)
    o = order_nodes(g)
    n = o.n
    ids = np.array(sorted(int(i) for i in g.node_ids))
    count = 30
    t = small_trip_table(
        origins=rng.choice(ids, count),
        dests=rng.choice(ids, count),
        labels=np.zeros(count),
        predicted=np.zeros(count),
    )
    for p in project_trips(t, o):
        assert 0 <= p.x < n and 0 <= p.y < n
