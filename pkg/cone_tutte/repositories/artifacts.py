"""
Artifact repositories: OFF meshes, JSON documents and CSV grids.
"""

import io
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from cone_tutte.core.exceptions import ArtifactError
from cone_tutte.domain.disk.entities import DiskSample
from cone_tutte.domain.mesh.entities import PlanarDrawing, Triangulation
from cone_tutte.domain.mesh.services import build_triangulation
from cone_tutte.repositories.base import JsonRepository, PathLike, atomic_write_bytes, read_bytes
from cone_tutte.schemas.config import RunConfig
from cone_tutte.schemas.disk import BoundaryMapFile
from cone_tutte.schemas.mesh import DrawingFile, MeshFile, PolygonFile, WeightsFile
from cone_tutte.schemas.reports import ConeReportFile, ExtensionFile

GRID_HEADER = "nu,theta,x,y,dx_dnu,dy_dnu,dx_dtheta,dy_dtheta"


def parse_off(text: str, source: str = "<memory>") -> Tuple[np.ndarray, List[Tuple[int, int, int]]]:
    """
    Parse an OFF triangle mesh.

    A third coordinate column is accepted when it is identically zero.

    Returns:
        (n, 2) coordinates and the face triples

    Raises:
        ArtifactError: Malformed file, non-triangular faces, NaN/Inf or nonzero z
    """
    tokens: List[str] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens or tokens[0] != "OFF":
        raise ArtifactError(source, "missing OFF header")
    try:
        n, f = int(tokens[1]), int(tokens[2])
        pos = 4
        coords = np.array(tokens[pos : pos + 3 * n], dtype=np.float64).reshape(n, 3)
        pos += 3 * n
        faces: List[Tuple[int, int, int]] = []
        for _ in range(f):
            k = int(tokens[pos])
            if k != 3:
                raise ArtifactError(source, f"face {len(faces)} has {k} vertices, expected 3")
            faces.append((int(tokens[pos + 1]), int(tokens[pos + 2]), int(tokens[pos + 3])))
            pos += 4
    except (IndexError, ValueError) as exc:
        raise ArtifactError(source, f"truncated or malformed OFF body: {exc}") from exc
    if not np.all(np.isfinite(coords)):
        raise ArtifactError(source, "coordinates contain NaN or Inf")
    if np.any(coords[:, 2] != 0):
        raise ArtifactError(source, "mesh is not planar (nonzero z)")
    return coords[:, :2], faces


def format_off(drawing: PlanarDrawing) -> str:
    tri = drawing.tri
    out = io.StringIO()
    out.write("OFF\n")
    out.write(f"{tri.vertex_count} {len(tri.faces)} {len(tri.undirected_edges)}\n")
    for x, y in drawing.coords:
        out.write(f"{float(x)!r} {float(y)!r} 0\n")
    for a, b, c in tri.faces:
        out.write(f"3 {a} {b} {c}\n")
    return out.getvalue()


class MeshRepository:
    """Mesh files: OFF (faces and positions) or JSON (faces only)."""

    def __init__(self) -> None:
        self.json = JsonRepository(MeshFile)

    def read(self, path: PathLike, **kwargs: bool) -> Tuple[Triangulation, Optional[np.ndarray]]:
        """
        Returns:
            The triangulation and the file's vertex positions (None for JSON)
        """
        if Path(path).suffix.lower() == ".off":
            coords, faces = parse_off(read_bytes(path).decode("utf-8", errors="replace"), str(path))
            return build_triangulation(faces, coords.shape[0], **kwargs), coords
        return self.json.read(path).to_domain(**kwargs), None

    def write_off(self, path: PathLike, drawing: PlanarDrawing) -> None:
        atomic_write_bytes(path, format_off(drawing).encode("utf-8"))


def write_grid_csv(path: PathLike, sample: DiskSample) -> None:
    """Grid samples as CSV, one row per (nu, theta)."""
    buffer = io.StringIO()
    np.savetxt(buffer, sample.rows(), delimiter=",", header=GRID_HEADER, comments="", fmt="%.17g")
    atomic_write_bytes(path, buffer.getvalue().encode("utf-8"))


polygons = JsonRepository(PolygonFile)
weights = JsonRepository(WeightsFile)
drawings = JsonRepository(DrawingFile)
cone_reports = JsonRepository(ConeReportFile)
extensions = JsonRepository(ExtensionFile)
boundary_maps = JsonRepository(BoundaryMapFile)
run_configs = JsonRepository(RunConfig)
meshes = MeshRepository()
