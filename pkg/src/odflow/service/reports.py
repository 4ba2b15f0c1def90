"""Selection analytics shared by the HTTP API and the batch CLI.

Both channels call build_selection_report, so their outputs are the same
dict by construction.  An empty selection is not an error here: the report
comes back with no trips and null analytics sections, which lets a client
clear its linked views instead of handling a failure.
"""

from __future__ import annotations

from typing import Optional

from ..bundle import DatasetBundle
from ..errors import EmptySelectionError
from ..explain import evaluate, feature_detail, importance
from ..odplot import OdPoint, Selection, select, trip_geometry

EMPTY_REPORT_SECTIONS = {
    "importance": None,
    "evaluation": None,
    "feature_detail": None,
}


def points_for(bundle: DatasetBundle, class_filter: str = "all") -> list[OdPoint]:
    """OD points, optionally restricted to one true-label class."""
    if class_filter == "all":
        return list(bundle.points)
    want = int(class_filter)
    labels = bundle.trips.labels
    lut = bundle.trips.index
    return [p for p in bundle.points if labels[lut[p.trip_id]] == want]


def build_selection_report(
    bundle: DatasetBundle,
    selection: Selection,
    detail_feature: Optional[str] = None,
    detail_bins: int = 20,
    group_by: str = "label",
) -> dict:
    trips = bundle.trips
    if detail_feature is not None:
        trips.kind_of(detail_feature)  # unknown feature fails before selection

    ids = select(bundle.points, trips, selection)
    if not ids:
        return {"trip_ids": [], "geometry": [], **EMPTY_REPORT_SECTIONS}

    geometry = [
        {
            "trip_id": g.trip_id,
            "origin": list(g.origin),
            "dest": list(g.dest),
            "label": g.label,
        }
        for g in trip_geometry(ids, trips, bundle.graph)
    ]
    imp = importance(ids, trips, bundle.attributions, group_by=group_by)
    ev = evaluate(ids, trips)

    detail = None
    if detail_feature is not None:
        d = feature_detail(ids, trips, detail_feature, bins=detail_bins)
        detail = {
            "name": d.name,
            "kind": d.kind,
            "categories": list(d.categories) if d.categories is not None else None,
            "bin_edges": list(d.bin_edges) if d.bin_edges is not None else None,
            "class0_counts": list(d.class0_counts),
            "class1_counts": list(d.class1_counts),
        }

    return {
        "trip_ids": sorted(ids),
        "geometry": geometry,
        "importance": {
            "group_by": group_by,
            "features": [
                {
                    "name": f.name,
                    "mean_abs_class0": f.mean_abs_class0,
                    "mean_abs_class1": f.mean_abs_class1,
                }
                for f in imp.features
            ],
        },
        "evaluation": {
            "class0": {
                "support": ev.class0.support,
                "hit_pct": ev.class0.hit_pct,
                "miss_pct": ev.class0.miss_pct,
            },
            "class1": {
                "support": ev.class1.support,
                "hit_pct": ev.class1.hit_pct,
                "miss_pct": ev.class1.miss_pct,
            },
        },
        "feature_detail": detail,
    }


__all__ = ["build_selection_report", "points_for", "EmptySelectionError"]
