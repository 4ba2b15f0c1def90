"""Graph ingestion, Laplacian assembly, and component partitioning."""

import io

import numpy as np
import pytest

from conftest import make_path_graph, random_connected_graph
from odflow.errors import EmptyInputError, IntegrityError, ParseError
from odflow.graph import (
    build_laplacian,
    connected_components,
    load_graph,
    make_graph,
)


def test_minimal_path_graph():
    g = make_graph(
        [(0, 0.0, 0.0), (1, 1.0, 0.0), (2, 2.0, 0.0)],
        [(0, 1, 1.0), (1, 2, 1.0)],
    )
    assert list(g.node_ids) == [0, 1, 2]
    assert len(g.edge_src) == 2
    assert g.position_of(2) == (2.0, 0.0)


def test_duplicate_edges_keep_minimum_length():
    g = make_graph(
        [(0, 0.0, 0.0), (1, 1.0, 0.0)],
        [(0, 1, 1.0), (1, 0, 2.0)],
    )
    assert len(g.edge_length) == 1
    assert g.edge_length[0] == 1.0


def test_self_loop_dropped():
    g = make_graph(
        [(0, 0.0, 0.0), (1, 1.0, 0.0)],
        [(0, 0, 1.0), (0, 1, 1.0)],
    )
    assert len(g.edge_src) == 1
    assert (g.edge_src[0], g.edge_dst[0]) == (0, 1)


def test_short_lengths_clamped():
    g = make_graph([(0, 0.0, 0.0), (1, 1.0, 0.0)], [(0, 1, 0.0)])
    assert g.edge_length[0] == 1e-9
    g2 = make_graph([(0, 0.0, 0.0), (1, 1.0, 0.0)], [(0, 1, -5.0)])
    assert g2.edge_length[0] == 1e-9


def test_empty_node_set_rejected():
    with pytest.raises(EmptyInputError):
        make_graph([], [])


def test_duplicate_node_ids_rejected():
    with pytest.raises(IntegrityError):
        make_graph([(0, 0.0, 0.0), (0, 1.0, 0.0)], [])


def test_edge_to_unknown_node_rejected():
    with pytest.raises(IntegrityError):
        make_graph([(0, 0.0, 0.0), (1, 1.0, 0.0)], [(0, 7, 1.0)])


def test_load_graph_parses_csv():
    nodes = io.StringIO("node_id,x,y\n0,0.0,0.0\n1,1.5,0.0\n")
    edges = io.StringIO("src,dst,length\n0,1,2.5\n")
    g = load_graph(nodes, edges)
    assert g.position_of(1) == (1.5, 0.0)
    assert g.edge_length[0] == 2.5


def test_load_graph_reports_line_numbers():
    nodes = io.StringIO("node_id,x,y\n0,0.0,0.0\n1,oops,0.0\n")
    edges = io.StringIO("src,dst,length\n")
    with pytest.raises(ParseError, match="line 3"):
        load_graph(nodes, edges)


def test_load_graph_rejects_bad_header():
    nodes = io.StringIO("id,x,y\n0,0.0,0.0\n")
    edges = io.StringIO("src,dst,length\n")
    with pytest.raises(ParseError, match="header"):
        load_graph(nodes, edges)


def test_load_graph_rejects_short_row():
    nodes = io.StringIO("node_id,x,y\n0,0.0\n")
    edges = io.StringIO("src,dst,length\n")
    with pytest.raises(ParseError, match="line 2"):
        load_graph(nodes, edges)


def test_round_trip_through_csv(tmp_path):
    rng = np.random.default_rng(3)
    g = random_connected_graph(rng, 40)
    g.to_csv(tmp_path / "nodes.csv", tmp_path / "edges.csv")
    g2 = load_graph(tmp_path / "nodes.csv", tmp_path / "edges.csv")
    assert (g2.node_ids == g.node_ids).all()
    assert (g2.positions == g.positions).all()
    assert (g2.edge_src == g.edge_src).all()
    assert (g2.edge_dst == g.edge_dst).all()
    assert (g2.edge_length == g.edge_length).all()


# Laplacian entries follow w_ij = 1/l_ij with diagonal row sums.

def test_laplacian_two_nodes_length_two():
    g = make_graph([(0, 0.0, 0.0), (1, 1.0, 0.0)], [(0, 1, 2.0)])
    L = build_laplacian(g).matrix.toarray()
    assert np.allclose(L, [[0.5, -0.5], [-0.5, 0.5]])


def test_laplacian_p3_unit_lengths():
    L = build_laplacian(make_path_graph(3)).matrix.toarray()
    assert np.allclose(L, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])


def test_laplacian_invariants_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(10):
        n = int(rng.integers(5, 60))
        g = random_connected_graph(rng, n)
        L = build_laplacian(g).matrix
        dense = L.toarray()
        assert np.allclose(dense, dense.T)
        off = dense - np.diag(np.diag(dense))
        assert (off <= 0).all()
        assert (np.diag(dense) >= 0).all()
        row_sums = dense.sum(axis=1)
        scale = np.abs(dense).max(axis=1)
        assert (np.abs(row_sums) <= 1e-12 * np.maximum(scale, 1.0)).all()
        for _ in range(20):
            x = rng.normal(size=n)
            x /= np.linalg.norm(x)
            assert x @ (dense @ x) >= -1e-9


def test_connected_components_single():
    assert connected_components(make_path_graph(3)) == [(0, 1, 2)]


def test_connected_components_isolated_node():
    g = make_graph(
        [(i, float(i), 0.0) for i in range(4)],
        [(0, 1, 1.0), (1, 2, 1.0)],
    )
    assert connected_components(g) == [(0, 1, 2), (3,)]


def test_connected_components_tie_by_smallest_node():
    g = make_graph(
        [(i, float(i), 0.0) for i in range(4)],
        [(0, 1, 1.0), (2, 3, 1.0)],
    )
    assert connected_components(g) == [(0, 1), (2, 3)]
