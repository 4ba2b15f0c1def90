"""Shared builders and fixtures for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from odflow.graph import SpatialGraph, make_graph
from odflow.odplot import TripTable
from odflow.synth import SyntheticSpec, generate


def make_path_graph(n: int, length: float = 1.0) -> SpatialGraph:
    """Unit-length path 0-1-...-(n-1) laid out on the x axis."""
    nodes = [(i, float(i), 0.0) for i in range(n)]
    edges = [(i, i + 1, length) for i in range(n - 1)]
    return make_graph(nodes, edges)


def random_connected_graph(rng: np.random.Generator, n: int) -> SpatialGraph:
    """Random spanning tree plus extra edges, random lengths in [0.1, 10]."""
    nodes = [(i, float(rng.uniform(0, 100)), float(rng.uniform(0, 100))) for i in range(n)]
    edges = []
    for i in range(1, n):
        j = int(rng.integers(0, i))
        edges.append((j, i, float(rng.uniform(0.1, 10.0))))
    extra = int(rng.integers(0, n))
    for _ in range(extra):
        a, b = rng.integers(0, n, size=2)
        if a != b:
            edges.append((int(a), int(b), float(rng.uniform(0.1, 10.0))))
    return make_graph(nodes, edges)


def small_trip_table(
    origins, dests, labels, predicted, trip_ids=None, features=None, kinds=None
) -> TripTable:
    """Build a TripTable from plain lists; features default to one constant column."""
    t = len(origins)
    if trip_ids is None:
        trip_ids = list(range(t))
    if features is None:
        features = {"f0": np.zeros(t)}
        kinds = ("continuous",)
    names = tuple(features)
    return TripTable(
        trip_ids=np.asarray(trip_ids, dtype=np.int64),
        origins=np.asarray(origins, dtype=np.int64),
        dests=np.asarray(dests, dtype=np.int64),
        labels=np.asarray(labels, dtype=np.int8),
        predicted=np.asarray(predicted, dtype=np.int8),
        feature_names=names,
        feature_kinds=tuple(kinds),
        features={
            k: (np.asarray(v, dtype=np.float64) if kind == "continuous" else np.asarray(v))
            for (k, v), kind in zip(features.items(), kinds)
        },
    )


@pytest.fixture(scope="session")
def demo_bundle():
    spec = SyntheticSpec(
        graph="grid:15x15",
        trips=1200,
        weights=(0.4, 0.25, 0.2, 0.15),
        class_ratio=0.3,
        seed=7,
    )
    return generate(spec, dataset_id="demo")


@pytest.fixture(scope="session")
def demo_dir(demo_bundle, tmp_path_factory):
    from odflow.bundle import write_bundle

    path = tmp_path_factory.mktemp("bundles") / "demo"
    write_bundle(demo_bundle, path)
    return path


@pytest.fixture(scope="session")
def client(demo_bundle):
    from fastapi.testclient import TestClient

    from odflow.service.app import create_app

    return TestClient(create_app({"demo": demo_bundle}))
