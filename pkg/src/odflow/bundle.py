"""Dataset bundles: one directory per dataset, cross-validated on load.

Layout::

    <dir>/
      nodes.csv         node_id,x,y
      edges.csv         src,dst,length
      trips.csv         trip_id,origin,dest,label,predicted
      features.csv      trip_id,<feature columns>
      feature_meta.json [{"name": ..., "kind": ...}]
      attributions.csv  trip_id,<feature columns>
      ordering.csv      optional; recomputed from the graph when absent
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from . import dataio
from .errors import IntegrityError, UnknownDatasetError
from .explain import AttributionTable
from .graph import SpatialGraph, load_graph
from .odplot import OdPoint, TripTable, project_trips
from .spectral import FiedlerOrdering, order_nodes

REQUIRED_FILES = (
    "nodes.csv",
    "edges.csv",
    "trips.csv",
    "features.csv",
    "feature_meta.json",
    "attributions.csv",
)


@dataclass(frozen=True)
class DatasetBundle:
    dataset_id: str
    graph: SpatialGraph
    ordering: FiedlerOrdering
    trips: TripTable
    attributions: AttributionTable

    @cached_property
    def points(self) -> tuple[OdPoint, ...]:
        return tuple(project_trips(self.trips, self.ordering))

    @property
    def n_nodes(self) -> int:
        return len(self.graph.node_ids)


def _check_trip_endpoints(trips: TripTable, graph: SpatialGraph) -> None:
    known = np.isin(trips.origins, graph.node_ids) & np.isin(trips.dests, graph.node_ids)
    if not known.all():
        bad = [int(i) for i in trips.trip_ids[~known][:10]]
        raise IntegrityError(f"trips reference unknown nodes (trip_ids {bad})")


def _check_attribution_cover(trips: TripTable, attrs: AttributionTable) -> None:
    if attrs.feature_names != trips.feature_names:
        raise IntegrityError(
            "attribution columns do not match feature metadata "
            f"({list(attrs.feature_names)} vs {list(trips.feature_names)})"
        )
    t_ids, a_ids = set(trips.trip_ids.tolist()), set(attrs.trip_ids.tolist())
    if t_ids != a_ids:
        bad = sorted(t_ids ^ a_ids)[:10]
        raise IntegrityError(f"attribution rows do not match trips (trip_ids {bad})")


def _check_ordering(ordering: FiedlerOrdering, graph: SpatialGraph) -> None:
    nodes = set(int(i) for i in graph.node_ids)
    if set(ordering.rank) != nodes:
        raise IntegrityError("ordering file does not cover the node set")
    ranks = sorted(ordering.rank.values())
    if ranks != list(range(len(nodes))):
        raise IntegrityError("ordering ranks are not a bijection onto 0..n-1")


def load_bundle(directory: str | Path, dataset_id: str | None = None) -> DatasetBundle:
    directory = Path(directory)
    if not directory.is_dir():
        raise UnknownDatasetError(f"no such dataset directory: {directory}")
    missing = [f for f in REQUIRED_FILES if not (directory / f).is_file()]
    if missing:
        raise IntegrityError(f"dataset {directory.name}: missing files {missing}")

    graph = load_graph(directory / "nodes.csv", directory / "edges.csv")
    trips = dataio.load_trip_table(
        directory / "trips.csv",
        directory / "features.csv",
        directory / "feature_meta.json",
    )
    attrs = dataio.load_attributions(directory / "attributions.csv", trips.feature_names)

    ordering_path = directory / "ordering.csv"
    if ordering_path.is_file():
        ordering = FiedlerOrdering.from_csv(ordering_path)
        _check_ordering(ordering, graph)
    else:
        ordering = order_nodes(graph)

    _check_trip_endpoints(trips, graph)
    _check_attribution_cover(trips, attrs)

    return DatasetBundle(
        dataset_id=dataset_id or directory.name,
        graph=graph,
        ordering=ordering,
        trips=trips,
        attributions=attrs,
    )


def write_bundle(bundle: DatasetBundle, directory: str | Path) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    bundle.graph.to_csv(directory / "nodes.csv", directory / "edges.csv")
    dataio.write_trip_table(
        bundle.trips,
        directory / "trips.csv",
        directory / "features.csv",
        directory / "feature_meta.json",
    )
    dataio.write_attributions(bundle.attributions, directory / "attributions.csv")
    bundle.ordering.to_csv(directory / "ordering.csv")
    return directory


def discover_datasets(data_dir: str | Path) -> dict[str, Path]:
    """Map dataset id -> directory for every complete bundle under data_dir."""
    data_dir = Path(data_dir)
    found = {}
    if not data_dir.is_dir():
        return found
    for child in sorted(data_dir.iterdir()):
        if child.is_dir() and all((child / f).is_file() for f in REQUIRED_FILES):
            found[child.name] = child
    return found
