"""Fiedler eigenpair computation and the derived node ordering."""

import numpy as np
import pytest

from conftest import make_path_graph, random_connected_graph
from odflow.errors import (
    DisconnectedGraphError,
    NormalizationError,
    ParseError,
    SingletonGraphError,
)
from odflow.graph import build_laplacian, make_graph
from odflow.spectral import (
    FiedlerOrdering,
    fiedler_vector,
    order_nodes,
    rayleigh_quotient,
    value_order,
)


def dense_oracle(L):
    """Reference eigenpair from a full symmetric eigendecomposition."""
    lams, vecs = np.linalg.eigh(L.matrix.toarray())
    return float(lams[1]), vecs[:, 1]


def test_p3_eigenpair():
    L = build_laplacian(make_path_graph(3))
    r = fiedler_vector(L)
    assert r.lambda2 == pytest.approx(1.0, abs=1e-10)
    expected = np.array([1.0, 0.0, -1.0]) / np.sqrt(2)
    assert np.allclose(r.vector, expected, atol=1e-9)


def test_two_nodes_length_two():
    g = make_graph([(0, 0.0, 0.0), (1, 1.0, 0.0)], [(0, 1, 2.0)])
    r = fiedler_vector(build_laplacian(g))
    assert r.lambda2 == pytest.approx(1.0, abs=1e-10)
    # sign rule: tied magnitudes resolve to the smaller node id positive
    assert np.allclose(r.vector, [1 / np.sqrt(2), -1 / np.sqrt(2)])


def test_p4_lambda2():
    r = fiedler_vector(build_laplacian(make_path_graph(4)))
    assert r.lambda2 == pytest.approx(2.0 - np.sqrt(2.0), abs=1e-10)


def test_p50_vector_is_monotone():
    r = fiedler_vector(build_laplacian(make_path_graph(50)))
    diffs = np.diff(r.vector)
    assert (diffs > 0).all() or (diffs < 0).all()


def test_result_invariants_random_graphs():
    rng = np.random.default_rng(5)
    for _ in range(15):
        g = random_connected_graph(rng, int(rng.integers(5, 80)))
        L = build_laplacian(g)
        r = fiedler_vector(L)
        assert abs(np.linalg.norm(r.vector) - 1.0) <= 1e-10
        assert abs(r.vector.sum()) <= 1e-8
        resid = np.linalg.norm(L.matrix @ r.vector - r.lambda2 * r.vector)
        assert resid <= 1e-8 * max(1.0, r.lambda2)
        assert r.lambda2 > 0


def test_singleton_rejected():
    g = make_graph([(0, 0.0, 0.0)], [])
    with pytest.raises(SingletonGraphError):
        fiedler_vector(build_laplacian(g))


def test_disconnected_rejected():
    g = make_graph(
        [(i, float(i), 0.0) for i in range(4)],
        [(0, 1, 1.0), (2, 3, 1.0)],
    )
    with pytest.raises(DisconnectedGraphError):
        fiedler_vector(build_laplacian(g))


def test_canonical_sign_is_deterministic():
    # among the tied largest-magnitude entries the first one is positive
    L = build_laplacian(make_path_graph(9))
    r1 = fiedler_vector(L)
    r2 = fiedler_vector(L)
    assert (r1.vector == r2.vector).all()
    mags = np.abs(r1.vector)
    lead = int(np.argmax(mags >= (1.0 - 1e-9) * mags.max()))
    assert r1.vector[lead] > 0


def test_lanczos_matches_dense():
    rng = np.random.default_rng(17)
    for _ in range(8):
        g = random_connected_graph(rng, int(rng.integers(20, 120)))
        L = build_laplacian(g)
        rd = fiedler_vector(L, method="dense")
        rl = fiedler_vector(L, method="lanczos")
        assert rl.lambda2 == pytest.approx(rd.lambda2, abs=1e-8)
        # same vector up to the shared canonicalization
        assert min(
            np.linalg.norm(rl.vector - rd.vector),
            np.linalg.norm(rl.vector + rd.vector),
        ) <= 1e-6


def test_order_nodes_p4_is_path_order():
    g = make_path_graph(4)
    o = order_nodes(g)
    ranks = [o.rank[i] for i in range(4)]
    assert ranks in ([0, 1, 2, 3], [3, 2, 1, 0])


def test_order_nodes_disconnected_concatenates():
    g = make_graph(
        [(i, float(i), 0.0) for i in range(4)],
        [(0, 1, 1.0), (2, 3, 1.0)],
    )
    o = order_nodes(g)
    assert sorted(o.rank) == [0, 1, 2, 3]
    assert {o.rank[0], o.rank[1]} == {0, 1}
    assert {o.rank[2], o.rank[3]} == {2, 3}
    assert len(o.components) == 2


def test_order_nodes_singleton_component():
    g = make_graph(
        [(0, 0.0, 0.0), (1, 1.0, 0.0), (2, 2.0, 0.0), (9, 9.0, 0.0)],
        [(0, 1, 1.0), (1, 2, 1.0)],
    )
    o = order_nodes(g)
    assert o.rank[9] == 3
    assert o.values[9] == 0.0


def test_rank_ties_resolved_by_node_id():
    order = value_order(np.array([0.5, 0.5, -0.7]), np.array([0, 1, 2]))
    # node 2 ranks first, then the tied pair by ascending node id
    assert list(order) == [2, 0, 1]


def test_reversal_symmetry_of_sort_rule():
    rng = np.random.default_rng(23)
    g = random_connected_graph(rng, 30)
    L = build_laplacian(g)
    r = fiedler_vector(L)
    v = r.vector
    if len(np.unique(v)) < len(v):
        pytest.skip("tied entries")
    fwd = np.argsort(v)
    rev = np.argsort(-v)
    assert (fwd == rev[::-1]).all()


def test_scale_equivariance():
    rng = np.random.default_rng(29)
    g = random_connected_graph(rng, 40)
    scaled = make_graph(
        [(int(i), float(x), float(y)) for i, (x, y) in zip(g.node_ids, g.positions)],
        [
            (int(s), int(d), float(3.7 * l))
            for s, d, l in zip(g.edge_src, g.edge_dst, g.edge_length)
        ],
    )
    o1 = order_nodes(g)
    o2 = order_nodes(scaled)
    assert o1.rank == o2.rank


def test_ordering_rows_and_csv_round_trip(tmp_path):
    rng = np.random.default_rng(31)
    g = random_connected_graph(rng, 25)
    o = order_nodes(g)
    path = tmp_path / "ordering.csv"
    o.to_csv(path)
    o2 = FiedlerOrdering.from_csv(path)
    assert o2.rank == o.rank
    assert o2.values == o.values
    rows = o.rows()
    assert [r[0] for r in rows] == sorted(o.rank)


def test_ordering_csv_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("node,rank\n0,0\n")
    with pytest.raises(ParseError):
        FiedlerOrdering.from_csv(path)


def test_rayleigh_p3_fiedler_direction():
    L = build_laplacian(make_path_graph(3))
    u = np.array([1.0, 0.0, -1.0]) / np.sqrt(2)
    assert rayleigh_quotient(L, u) == pytest.approx(1.0, abs=1e-12)


def test_rayleigh_constant_vector_is_zero():
    L = build_laplacian(make_path_graph(6))
    u = np.ones(6) / np.sqrt(6)
    assert rayleigh_quotient(L, u) == pytest.approx(0.0, abs=1e-12)


def test_rayleigh_third_eigenpair_of_p3():
    L = build_laplacian(make_path_graph(3))
    u = np.array([1.0, -2.0, 1.0]) / np.sqrt(6)
    assert rayleigh_quotient(L, u) == pytest.approx(3.0, abs=1e-12)


def test_rayleigh_rejects_non_unit():
    L = build_laplacian(make_path_graph(3))
    with pytest.raises(NormalizationError):
        rayleigh_quotient(L, np.array([1.0, 0.0, -1.0]))


def test_rayleigh_equals_quadratic_form():
    rng = np.random.default_rng(37)
    g = random_connected_graph(rng, 30)
    L = build_laplacian(g)
    for _ in range(10):
        u = rng.normal(size=30)
        u /= np.linalg.norm(u)
        direct = float(u @ (L.matrix @ u))
        assert rayleigh_quotient(L, u) == pytest.approx(direct, abs=1e-10)
