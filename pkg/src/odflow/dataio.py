"""Readers and writers for the bundle file formats.

All files are UTF-8 CSV with LF line endings and ``.`` decimal separators,
plus one JSON sidecar for feature metadata.  Floats are written with
``repr`` so a write/read round trip is exact and reruns are byte-identical.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import IntegrityError, ParseError
from .odplot import OdPoint, OdMatrix, TripTable

TRIPS_HEADER = ["trip_id", "origin", "dest", "label", "predicted"]
POINTS_HEADER = ["trip_id", "x", "y", "label", "predicted"]


def _fmt(value: float) -> str:
    return repr(float(value))


def load_feature_meta(path: str | Path) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """JSON array of {name, kind} -> (names, kinds)."""
    with open(path, "r", encoding="utf-8") as f:
        try:
            meta = json.load(f)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid feature metadata JSON: {exc}") from None
    names, kinds = [], []
    for i, entry in enumerate(meta):
        if not isinstance(entry, dict) or "name" not in entry or "kind" not in entry:
            raise ParseError(f"feature_meta entry {i} must have 'name' and 'kind'")
        if entry["kind"] not in ("discrete", "continuous"):
            raise ParseError(f"feature_meta entry {i}: unknown kind {entry['kind']!r}")
        names.append(str(entry["name"]))
        kinds.append(str(entry["kind"]))
    if len(set(names)) != len(names):
        raise ParseError("duplicate feature names in feature_meta")
    return tuple(names), tuple(kinds)


def write_feature_meta(path: str | Path, names: Sequence[str], kinds: Sequence[str]) -> None:
    meta = [{"name": n, "kind": k} for n, k in zip(names, kinds)]
    with open(path, "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")


def _read_csv(path: str | Path, expected_header: list[str] | None = None):
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise ParseError(f"{Path(path).name}: empty file", line=1)
        if expected_header is not None and header != expected_header:
            raise ParseError(
                f"{Path(path).name}: bad header {','.join(header)!r}", line=1
            )
        rows = [(lineno, row) for lineno, row in enumerate(reader, start=2) if row]
    return header, rows


def load_trip_table(
    trips_path: str | Path,
    features_path: str | Path,
    feature_meta_path: str | Path,
) -> TripTable:
    names, kinds = load_feature_meta(feature_meta_path)
    _, trip_rows = _read_csv(trips_path, TRIPS_HEADER)
    trip_ids, origins, dests, labels, predicted = [], [], [], [], []
    for lineno, row in trip_rows:
        if len(row) != 5:
            raise ParseError(f"expected 5 fields, got {len(row)}", line=lineno)
        try:
            trip_ids.append(int(row[0]))
            origins.append(int(row[1]))
            dests.append(int(row[2]))
            label, pred = int(row[3]), int(row[4])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        if label not in (0, 1) or pred not in (0, 1):
            raise ParseError(f"label/predicted must be 0 or 1", line=lineno)
        labels.append(label)
        predicted.append(pred)

    feat_header, feat_rows = _read_csv(features_path, ["trip_id"] + list(names))
    columns: dict[str, list] = {n: [] for n in names}
    feat_ids = []
    for lineno, row in feat_rows:
        if len(row) != 1 + len(names):
            raise ParseError(f"expected {1 + len(names)} fields, got {len(row)}", line=lineno)
        try:
            feat_ids.append(int(row[0]))
            for name, kind, cell in zip(names, kinds, row[1:]):
                columns[name].append(float(cell) if kind == "continuous" else cell)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if feat_ids != trip_ids:
        extra = sorted(set(feat_ids) ^ set(trip_ids))
        raise IntegrityError(
            f"feature rows do not match trips (mismatched trip_ids {extra[:10]})"
        )
    features = {
        n: np.array(columns[n], dtype=np.float64 if k == "continuous" else np.str_)
        for n, k in zip(names, kinds)
    }
    return TripTable(
        trip_ids=np.array(trip_ids, dtype=np.int64),
        origins=np.array(origins, dtype=np.int64),
        dests=np.array(dests, dtype=np.int64),
        labels=np.array(labels, dtype=np.int8),
        predicted=np.array(predicted, dtype=np.int8),
        feature_names=names,
        feature_kinds=kinds,
        features=features,
    )


def write_trip_table(
    t: TripTable,
    trips_path: str | Path,
    features_path: str | Path,
    feature_meta_path: str | Path,
) -> None:
    with open(trips_path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(TRIPS_HEADER)
        for i in range(t.n_trips):
            w.writerow(
                [
                    int(t.trip_ids[i]),
                    int(t.origins[i]),
                    int(t.dests[i]),
                    int(t.labels[i]),
                    int(t.predicted[i]),
                ]
            )
    with open(features_path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["trip_id"] + list(t.feature_names))
        for i in range(t.n_trips):
            row: list = [int(t.trip_ids[i])]
            for name, kind in zip(t.feature_names, t.feature_kinds):
                cell = t.features[name][i]
                row.append(_fmt(cell) if kind == "continuous" else str(cell))
            w.writerow(row)
    write_feature_meta(feature_meta_path, t.feature_names, t.feature_kinds)


def load_attributions(path: str | Path, feature_names: Sequence[str]):
    from .explain import AttributionTable

    _, rows = _read_csv(path, ["trip_id"] + list(feature_names))
    ids, values = [], []
    for lineno, row in rows:
        if len(row) != 1 + len(feature_names):
            raise ParseError(
                f"expected {1 + len(feature_names)} fields, got {len(row)}", line=lineno
            )
        try:
            ids.append(int(row[0]))
            values.append([float(c) for c in row[1:]])
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return AttributionTable(
        trip_ids=np.array(ids, dtype=np.int64),
        values=np.array(values, dtype=np.float64).reshape(len(ids), len(feature_names)),
        feature_names=tuple(feature_names),
    )


def write_attributions(a, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["trip_id"] + list(a.feature_names))
        for i in range(len(a.trip_ids)):
            w.writerow([int(a.trip_ids[i])] + [_fmt(v) for v in a.values[i]])


def write_points(points: Sequence[OdPoint], t: TripTable, path: str | Path) -> None:
    """Plot export: trip_id,x,y,label,predicted in point order."""
    lut = t.index
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(POINTS_HEADER)
        for p in points:
            row = lut[p.trip_id]
            w.writerow([p.trip_id, p.x, p.y, int(t.labels[row]), int(t.predicted[row])])


def write_matrix(m: OdMatrix, path: str | Path) -> None:
    """R rows x R columns of counts, destinations on rows, no header."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        for row in m.cells:
            w.writerow([int(c) for c in row])
