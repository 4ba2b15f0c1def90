"""Origin-destination flow exploration: spectral node ordering, OD plots,
selection analytics, and a small HTTP service around them."""

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    DisconnectedGraphError,
    EmptyInputError,
    EmptySelectionError,
    IntegrityError,
    InvalidSelectionError,
    NormalizationError,
    OdflowError,
    ParseError,
    SingletonGraphError,
    UnknownDatasetError,
    UnknownFeatureError,
    UnknownTripError,
)
from .graph import LaplacianMatrix, SpatialGraph, build_laplacian, connected_components, load_graph, make_graph
from .spectral import FiedlerOrdering, FiedlerResult, fiedler_vector, order_nodes, rayleigh_quotient
from .odplot import (
    AxisBand,
    OdMatrix,
    OdPoint,
    Polygon,
    Rectangle,
    Selection,
    TripTable,
    density_grid,
    od_matrix,
    project_trips,
    select,
    trip_geometry,
)
from .explain import (
    AttributionTable,
    EvaluationReport,
    FeatureDetail,
    ImportanceReport,
    evaluate,
    feature_detail,
    importance,
    linear_shapley,
)
from .bundle import DatasetBundle, load_bundle, write_bundle
from .synth import SyntheticSpec, generate

__version__ = "0.1.0"
