"""Exception hierarchy shared by the engine, the CLI, and the HTTP service.

Every error carries a stable machine-readable ``code`` so the service can
emit ``{code, message}`` JSON bodies and the CLI can map failures to exit
codes without string matching.
"""

from __future__ import annotations


class OdflowError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class ParseError(OdflowError):
    """A tabular input file could not be parsed."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class IntegrityError(OdflowError):
    """Cross-references between inputs do not line up."""

    code = "integrity_error"


class EmptyInputError(OdflowError):
    """An input that must be non-empty (e.g. the node set) was empty."""

    code = "empty_input"


class DisconnectedGraphError(OdflowError):
    """The Laplacian belongs to a disconnected graph, so the smallest
    non-zero eigenvalue is not defined without per-component processing."""

    code = "disconnected_graph"


class SingletonGraphError(OdflowError):
    """A one-node graph has no second eigenpair."""

    code = "singleton_graph"


class ConvergenceError(OdflowError):
    """The iterative eigensolver hit its iteration cap before meeting the
    residual tolerance."""

    code = "solver_convergence"


class NormalizationError(OdflowError):
    """A vector that must be unit-norm was not."""

    code = "not_normalized"


class InvalidSelectionError(OdflowError):
    """A selection shape violates its structural rules."""

    code = "invalid_selection"


class EmptySelectionError(OdflowError):
    """An aggregation was asked for over zero trips."""

    code = "empty_selection"


class UnknownTripError(OdflowError):
    code = "unknown_trip"


class UnknownFeatureError(OdflowError):
    code = "unknown_feature"


class UnknownDatasetError(OdflowError):
    code = "unknown_dataset"


class DimensionMismatchError(OdflowError):
    code = "dimension_mismatch"
