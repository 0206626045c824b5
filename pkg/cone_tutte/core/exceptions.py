"""
Custom exceptions for cone-tutte.
Provides a centralized way to report invalid inputs and failed computations.
"""

from typing import Any, Dict, Optional


class BaseAppException(Exception):
    """Base exception class for library errors."""

    def __init__(
        self,
        detail: str,
        error_code: Optional[str] = None,
        exit_code: int = 1,
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail)
        self.detail = detail
        self.error_code = error_code or "ERROR"
        self.exit_code = exit_code
        self.context = context or {}

    def to_dict(self) -> Dict[str, Any]:
        """Error payload used by the CLI and log records."""
        return {"code": self.error_code, "message": self.detail, **self.context}


class MeshValidationException(BaseAppException):
    """Exception raised when a triangle mesh is not a valid disk."""

    def __init__(
        self,
        detail: str = "Invalid mesh",
        error_code: str = "MESH_INVALID",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail=detail, error_code=error_code, context=context)


class GeometryException(BaseAppException):
    """Exception raised for degenerate or inconsistent geometry."""

    def __init__(
        self,
        detail: str = "Invalid geometry",
        error_code: str = "GEOMETRY_ERROR",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail=detail, error_code=error_code, context=context)


class SolverException(BaseAppException):
    """Exception raised when a numerical solve fails."""

    def __init__(
        self,
        detail: str = "Solver failure",
        error_code: str = "SOLVER_ERROR",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail=detail, error_code=error_code, context=context)


class CertificationException(BaseAppException):
    """Exception raised when a certified construction cannot proceed."""

    def __init__(
        self,
        detail: str = "Certification failure",
        error_code: str = "CERTIFICATION_ERROR",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail=detail, error_code=error_code, context=context)


class ConfigurationException(BaseAppException):
    """Exception raised for invalid run configuration or artifacts."""

    def __init__(
        self,
        detail: str = "Invalid configuration",
        error_code: str = "CONFIGURATION_ERROR",
        context: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(detail=detail, error_code=error_code, context=context)


# Mesh errors
class InvalidFace(MeshValidationException):
    """Exception raised for a face with repeated or out-of-range indices."""

    def __init__(self, face: Any, n: int):
        super().__init__(
            detail=f"Face {tuple(face)} is not three distinct indices in [0, {n})",
            error_code="INVALID_FACE",
            context={"face": [int(v) for v in face]},
        )


class NonManifoldEdge(MeshValidationException):
    """Exception raised when an edge belongs to three or more faces."""

    def __init__(self, edge: tuple, count: int):
        super().__init__(
            detail=f"Edge {edge} is shared by {count} faces",
            error_code="NON_MANIFOLD_EDGE",
            context={"edge": list(edge), "faces": count},
        )


class MultipleBoundaryLoops(MeshValidationException):
    """Exception raised when the boundary is not a single simple cycle."""

    def __init__(self, detail: str = "Boundary edges do not form a single cycle"):
        super().__init__(detail=detail, error_code="MULTIPLE_BOUNDARY_LOOPS")


class NotThreeConnected(MeshValidationException):
    """Exception raised when removing two vertices disconnects the graph."""

    def __init__(self, separator: tuple):
        super().__init__(
            detail=f"Removing vertices {separator} disconnects the mesh graph",
            error_code="NOT_THREE_CONNECTED",
            context={"separator": list(separator)},
        )


class NotDisk(MeshValidationException):
    """Exception raised when the mesh is not a topological disk."""

    def __init__(self, detail: str = "Mesh is not a topological disk"):
        super().__init__(detail=detail, error_code="NOT_DISK")


class UnreferencedVertices(MeshValidationException):
    """Exception raised when some vertex belongs to no face."""

    def __init__(self, vertices: list):
        super().__init__(
            detail=f"{len(vertices)} vertices belong to no face (first: {vertices[:5]})",
            error_code="UNREFERENCED_VERTICES",
            context={"vertices": vertices[:50]},
        )


class MeshMismatch(MeshValidationException):
    """Exception raised when two drawings do not share a triangulation."""

    def __init__(self, detail: str = "Drawings are over different triangulations"):
        super().__init__(detail=detail, error_code="MESH_MISMATCH")


# Geometry errors
class InvalidCoordinates(GeometryException):
    """Exception raised for non-finite, coincident or mis-shaped coordinates."""

    def __init__(self, detail: str):
        super().__init__(detail=detail, error_code="INVALID_COORDINATES")


class DegenerateBoundary(GeometryException):
    """Exception raised for a boundary that folds back on itself."""

    def __init__(self, detail: str = "Boundary polygon is degenerate"):
        super().__init__(detail=detail, error_code="DEGENERATE_BOUNDARY")


class PolygonNotSimple(GeometryException):
    """Exception raised when a polygon self-intersects or is clockwise."""

    def __init__(self, detail: str = "Polygon is not simple"):
        super().__init__(detail=detail, error_code="NOT_SIMPLE")


class CoincidentPoints(GeometryException):
    """Exception raised when a cone apex coincides with a neighbor."""

    def __init__(self, point: Any):
        super().__init__(
            detail=f"Cone apex {tuple(point)} coincides with a neighboring vertex",
            error_code="COINCIDENT_POINTS",
        )


class ZeroVector(GeometryException):
    """Exception raised when a direction vector vanishes."""

    def __init__(self, detail: str = "Zero vector among cone generators"):
        super().__init__(detail=detail, error_code="ZERO_VECTOR")


class AllCollinear(GeometryException):
    """Exception raised when a point set has no two-dimensional hull."""

    def __init__(self, count: int):
        super().__init__(
            detail=f"All {count} points are collinear",
            error_code="ALL_COLLINEAR",
        )


class BoundaryPoint(GeometryException):
    """Exception raised when a disk point lies outside 0 < nu <= 1."""

    def __init__(self, nu: float):
        super().__init__(
            detail=f"Point with nu={nu} is not in the open disk",
            error_code="BOUNDARY_POINT",
        )


class InvalidBoundaryMap(GeometryException):
    """Exception raised for a discontinuous or stalled disk boundary map."""

    def __init__(self, detail: str):
        super().__init__(detail=detail, error_code="INVALID_BOUNDARY_MAP")


class NoReflexChord(GeometryException):
    """Exception raised when every chord between boundary points is interior."""

    def __init__(self, detail: str = "Polygon has no exterior chord"):
        super().__init__(detail=detail, error_code="NO_REFLEX_CHORD")


# Weights and solves
class NonPositiveRange(BaseAppException):
    """Exception raised for a weight range that admits non-positive weights."""

    def __init__(self, lo: float, hi: float):
        super().__init__(
            detail=f"Weight range [{lo}, {hi}] must satisfy 0 < lo <= hi",
            error_code="NON_POSITIVE_RANGE",
        )


class MissingWeight(BaseAppException):
    """Exception raised when a directed edge has no weight."""

    def __init__(self, edge: tuple):
        super().__init__(
            detail=f"No weight given for directed edge {edge}",
            error_code="MISSING_WEIGHT",
            context={"edge": list(edge)},
        )


class NonPositiveWeight(BaseAppException):
    """Exception raised for a zero, negative or non-finite weight."""

    def __init__(self, edge: tuple, value: float):
        super().__init__(
            detail=f"Weight {value} on directed edge {edge} is not a positive number",
            error_code="NON_POSITIVE_WEIGHT",
            context={"edge": list(edge)},
        )


class BoundaryMismatch(BaseAppException):
    """Exception raised when a boundary assignment is not an oriented bijection."""

    def __init__(self, detail: str):
        super().__init__(detail=detail, error_code="BOUNDARY_MISMATCH")


class SingularSystem(SolverException):
    """Exception raised when the interior Laplace system cannot be solved."""

    def __init__(self, detail: str = "Interior Laplace system is singular"):
        super().__init__(detail=detail, error_code="SINGULAR_SYSTEM")


class ResidualTooLarge(SolverException):
    """Exception raised when a solution misses its residual contract."""

    def __init__(self, residual: float, bound: float):
        super().__init__(
            detail=f"Interior residual {residual:.3e} exceeds bound {bound:.3e}",
            error_code="RESIDUAL_TOO_LARGE",
        )


class CombinationFailed(SolverException):
    """Exception raised when an exact positive combination does not recombine to its target."""

    def __init__(self, detail: str = "Positive combination does not reproduce the target"):
        super().__init__(detail=detail, error_code="COMBINATION_FAILED")


class QuadratureTooCoarse(SolverException):
    """Exception raised when a Poisson quadrature is asked for too few nodes."""

    def __init__(self, nodes: int, minimum: int):
        super().__init__(
            detail=f"Poisson quadrature needs at least {minimum} nodes, got {nodes}",
            error_code="QUADRATURE_TOO_COARSE",
            context={"nodes": nodes},
        )


# Certification errors
class SourceNotEmbedded(CertificationException):
    """Exception raised when a source drawing is not an embedding."""

    def __init__(self, detail: str = "Source drawing is not a certified embedding"):
        super().__init__(detail=detail, error_code="SOURCE_NOT_EMBEDDED")


class RecoveryFailed(CertificationException):
    """Exception raised when no positive weights reproduce a drawing."""

    def __init__(self, vertex: int, reason: str):
        super().__init__(
            detail=f"No positive weights at vertex {vertex}: {reason}",
            error_code="RECOVERY_FAILED",
            context={"vertex": vertex},
        )


class DegenerateSourceTriangle(CertificationException):
    """Exception raised when a source triangle has zero area."""

    def __init__(self, face: tuple):
        super().__init__(
            detail=f"Source triangle {face} has zero area",
            error_code="DEGENERATE_SOURCE_TRIANGLE",
            context={"face": list(face)},
        )


class ConeConditionViolated(CertificationException):
    """Exception raised when reflex vertices fail the cone condition."""

    def __init__(self, vertices: list):
        super().__init__(
            detail=f"Cone condition fails at reflex vertices {vertices}",
            error_code="CONE_CONDITION_VIOLATED",
            context={"vertices": vertices},
        )


class NotDiscreteHarmonic(CertificationException):
    """Exception raised when a drawing is not harmonic for the given weights."""

    def __init__(self, vertex: int, residual: float):
        super().__init__(
            detail=f"Interior vertex {vertex} has Laplace residual {residual:.3e}",
            error_code="NOT_DISCRETE_HARMONIC",
            context={"vertex": vertex},
        )


class ExtensionInfeasible(CertificationException):
    """Exception raised when a pocket vertex admits no positive weights."""

    def __init__(self, vertex: int):
        super().__init__(
            detail=f"No positive pocket weights balance the force at vertex {vertex}",
            error_code="EXTENSION_INFEASIBLE",
            context={"vertex": vertex},
        )


class HypothesisViolated(CertificationException):
    """Exception raised when boundary data is not monotone on the window."""

    def __init__(self, s: float, t: float, gap: float):
        super().__init__(
            detail=f"Monotonicity hypothesis fails between {s:.6g} and {t:.6g} (gap {gap:.3e})",
            error_code="HYPOTHESIS_VIOLATED",
        )


# Artifacts
class ArtifactError(ConfigurationException):
    """Exception raised when an input file cannot be parsed."""

    def __init__(self, path: str, reason: str):
        super().__init__(
            detail=f"Cannot read {path}: {reason}",
            error_code="ARTIFACT_ERROR",
            context={"path": path},
        )


class TargetNotEmbedded(CertificationException):
    """Exception raised when a target drawing is not an oriented embedding."""

    def __init__(self, detail: str = "Target drawing is not a certified embedding"):
        super().__init__(detail=detail, error_code="TARGET_NOT_EMBEDDED")
