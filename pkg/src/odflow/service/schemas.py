"""Request and response bodies for the HTTP API."""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field

from ..odplot import AxisBand, Polygon, Rectangle, Selection


class RectangleShape(BaseModel):
    kind: Literal["rectangle"]
    x0: float
    x1: float
    y0: float
    y1: float

    def to_shape(self) -> Rectangle:
        return Rectangle(self.x0, self.x1, self.y0, self.y1)


class BandShape(BaseModel):
    kind: Literal["band"]
    axis: Literal["x", "y"]
    lo: float
    hi: float

    def to_shape(self) -> AxisBand:
        return AxisBand(self.axis, self.lo, self.hi)


class PolygonShape(BaseModel):
    kind: Literal["polygon"]
    vertices: list[tuple[float, float]] = Field(min_length=3)

    def to_shape(self) -> Polygon:
        return Polygon(tuple((float(x), float(y)) for x, y in self.vertices))


ShapeModel = Annotated[
    Union[RectangleShape, BandShape, PolygonShape], Field(discriminator="kind")
]


class SelectionRequest(BaseModel):
    shape: ShapeModel
    class_filter: Literal["all", "0", "1"] = "all"
    detail_feature: Optional[str] = None
    detail_bins: int = Field(default=20, ge=1)
    group_by: Literal["label", "predicted"] = "label"

    def to_selection(self) -> Selection:
        return Selection(self.shape.to_shape(), class_filter=self.class_filter)


class DatasetSummary(BaseModel):
    id: str
    n_nodes: int
    n_trips: int
    n_features: int


class OrderingRow(BaseModel):
    node_id: int
    rank: int
    component: int
    fiedler_value: float


class PointRow(BaseModel):
    trip_id: int
    x: int
    y: int
    label: int
    predicted: int


class GridResponse(BaseModel):
    bins: int
    class_filter: str
    total: int
    cells: list[list[int]]


class MatrixResponse(BaseModel):
    resolution: int
    class_filter: str
    total: int
    cells: list[list[int]]


class FeatureMetaRow(BaseModel):
    name: str
    kind: Literal["discrete", "continuous"]


class GeometryRow(BaseModel):
    trip_id: int
    origin: tuple[float, float]
    dest: tuple[float, float]
    label: int


class ImportanceEntry(BaseModel):
    name: str
    mean_abs_class0: Optional[float]
    mean_abs_class1: Optional[float]


class ImportanceOut(BaseModel):
    group_by: Literal["label", "predicted"]
    features: list[ImportanceEntry]


class ClassEvaluationOut(BaseModel):
    support: int
    hit_pct: Optional[float]
    miss_pct: Optional[float]


class EvaluationOut(BaseModel):
    class0: ClassEvaluationOut
    class1: ClassEvaluationOut


class FeatureDetailOut(BaseModel):
    name: str
    kind: Literal["discrete", "continuous"]
    categories: Optional[list[str]]
    bin_edges: Optional[list[float]]
    class0_counts: list[int]
    class1_counts: list[int]


class SelectionResponse(BaseModel):
    trip_ids: list[int]
    geometry: list[GeometryRow]
    importance: Optional[ImportanceOut]
    evaluation: Optional[EvaluationOut]
    feature_detail: Optional[FeatureDetailOut]


class ErrorBody(BaseModel):
    code: str
    message: str
