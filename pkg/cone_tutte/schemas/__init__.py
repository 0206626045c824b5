from cone_tutte.schemas.config import RunConfig
from cone_tutte.schemas.disk import (
    BoundaryMapFile,
    ChoquetFile,
    ConeScanFile,
    DeterminantAgreementFile,
    InjectivityFile,
    MonotonicityFile,
    ProfileAuditFile,
)
from cone_tutte.schemas.mesh import DrawingFile, MeshFile, PolygonFile, WeightsFile
from cone_tutte.schemas.reports import (
    CertificateFile,
    ConeReportFile,
    DetReportFile,
    ExtensionFile,
)

__all__ = [
    "BoundaryMapFile",
    "CertificateFile",
    "ChoquetFile",
    "ConeReportFile",
    "ConeScanFile",
    "DetReportFile",
    "DeterminantAgreementFile",
    "DrawingFile",
    "ExtensionFile",
    "InjectivityFile",
    "MeshFile",
    "MonotonicityFile",
    "PolygonFile",
    "ProfileAuditFile",
    "RunConfig",
    "WeightsFile",
]
