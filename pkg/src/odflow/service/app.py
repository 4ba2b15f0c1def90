"""FastAPI application over a set of immutable dataset bundles.

All state is loaded before the server starts; request handlers only read,
so concurrent requests are safe and identical requests return identical
bodies.  Errors are JSON {code, message}.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..bundle import DatasetBundle, discover_datasets, load_bundle
from ..errors import (
    InvalidSelectionError,
    OdflowError,
    UnknownDatasetError,
    UnknownFeatureError,
    UnknownTripError,
)
from ..odplot import CLASS_FILTERS, od_matrix, density_grid
from . import schemas
from .reports import build_selection_report, points_for

_NOT_FOUND = (UnknownDatasetError, UnknownFeatureError, UnknownTripError)


def load_data_dir(data_dir: str | Path) -> dict[str, DatasetBundle]:
    return {
        dataset_id: load_bundle(path, dataset_id)
        for dataset_id, path in discover_datasets(data_dir).items()
    }


def create_app(bundles: dict[str, DatasetBundle]) -> FastAPI:
    app = FastAPI(title="odflow")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def get_bundle(dataset_id: str) -> DatasetBundle:
        try:
            return bundles[dataset_id]
        except KeyError:
            raise UnknownDatasetError(f"unknown dataset {dataset_id!r}") from None

    def check_class(value: str) -> str:
        if value not in CLASS_FILTERS:
            raise InvalidSelectionError(f"class must be one of {CLASS_FILTERS}")
        return value

    @app.exception_handler(OdflowError)
    async def odflow_error(request: Request, exc: OdflowError):
        status = 404 if isinstance(exc, _NOT_FOUND) else 400
        return JSONResponse(
            status_code=status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(p) for p in first.get("loc", ()))
        msg = first.get("msg", "invalid request")
        return JSONResponse(
            status_code=400,
            content={"code": "validation_error", "message": f"{loc}: {msg}".strip(": ")},
        )

    @app.get("/datasets", response_model=list[schemas.DatasetSummary])
    def list_datasets():
        return [
            schemas.DatasetSummary(
                id=b.dataset_id,
                n_nodes=b.n_nodes,
                n_trips=b.trips.n_trips,
                n_features=len(b.trips.feature_names),
            )
            for _, b in sorted(bundles.items())
        ]

    @app.get("/datasets/{dataset_id}/ordering", response_model=list[schemas.OrderingRow])
    def get_ordering(dataset_id: str):
        b = get_bundle(dataset_id)
        return [
            schemas.OrderingRow(
                node_id=node_id, rank=rank, component=comp, fiedler_value=value
            )
            for node_id, rank, comp, value in b.ordering.rows()
        ]

    @app.get("/datasets/{dataset_id}/points", response_model=list[schemas.PointRow])
    def get_points(dataset_id: str, class_filter: str = Query("all", alias="class")):
        b = get_bundle(dataset_id)
        check_class(class_filter)
        labels, predicted = b.trips.labels, b.trips.predicted
        lut = b.trips.index
        return [
            schemas.PointRow(
                trip_id=p.trip_id,
                x=p.x,
                y=p.y,
                label=int(labels[lut[p.trip_id]]),
                predicted=int(predicted[lut[p.trip_id]]),
            )
            for p in points_for(b, class_filter)
        ]

    @app.get("/datasets/{dataset_id}/density", response_model=schemas.GridResponse)
    def get_density(
        dataset_id: str,
        bins: int,
        class_filter: str = Query("all", alias="class"),
    ):
        b = get_bundle(dataset_id)
        check_class(class_filter)
        grid = density_grid(points_for(b, class_filter), bins, n=b.ordering.n)
        return schemas.GridResponse(
            bins=bins,
            class_filter=class_filter,
            total=int(grid.sum()),
            cells=grid.tolist(),
        )

    @app.get("/datasets/{dataset_id}/matrix", response_model=schemas.MatrixResponse)
    def get_matrix(
        dataset_id: str,
        resolution: int,
        class_filter: str = Query("all", alias="class"),
    ):
        b = get_bundle(dataset_id)
        check_class(class_filter)
        m = od_matrix(
            b.points, b.trips, resolution, class_filter=class_filter, n=b.ordering.n
        )
        return schemas.MatrixResponse(
            resolution=m.resolution,
            class_filter=m.class_filter,
            total=m.total,
            cells=m.cells.tolist(),
        )

    @app.get("/datasets/{dataset_id}/features", response_model=list[schemas.FeatureMetaRow])
    def get_features(dataset_id: str):
        b = get_bundle(dataset_id)
        return [
            schemas.FeatureMetaRow(name=name, kind=kind)
            for name, kind in zip(b.trips.feature_names, b.trips.feature_kinds)
        ]

    @app.post("/datasets/{dataset_id}/selection", response_model=schemas.SelectionResponse)
    def post_selection(dataset_id: str, req: schemas.SelectionRequest):
        b = get_bundle(dataset_id)
        report = build_selection_report(
            b,
            req.to_selection(),
            detail_feature=req.detail_feature,
            detail_bins=req.detail_bins,
            group_by=req.group_by,
        )
        return schemas.SelectionResponse(**report)

    return app


def serve(bundles: dict[str, DatasetBundle], port: int, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(bundles), host=host, port=port, log_level="warning")


def default_port() -> int:
    return int(os.environ.get("ODFLOW_PORT", "8000"))
