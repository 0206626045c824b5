"""
Input validators for meshes, coordinates and polygons.
"""

from typing import Iterable, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from numpy.typing import NDArray

from cone_tutte.core.exceptions import (
    DegenerateBoundary,
    InvalidCoordinates,
    InvalidFace,
    NotThreeConnected,
    PolygonNotSimple,
)
from cone_tutte.utils.predicates import first_self_intersection, signed_area_exact


def validate_faces(faces: Sequence[Sequence[int]], n: int) -> NDArray[np.int64]:
    """
    Check that every face is three distinct in-range vertex indices.

    Args:
        faces: Face index triples
        n: Number of vertices

    Returns:
        Faces as an (F, 3) integer array

    Raises:
        InvalidFace: On a malformed triple
    """
    rows = []
    for face in faces:
        if len(face) != 3:
            raise InvalidFace(face, n)
        a, b, c = (int(v) for v in face)
        if len({a, b, c}) != 3 or min(a, b, c) < 0 or max(a, b, c) >= n:
            raise InvalidFace(face, n)
        rows.append((a, b, c))
    return np.asarray(rows, dtype=np.int64).reshape(-1, 3)


def validate_coordinates(
    coords: Sequence[Sequence[float]] | NDArray[np.float64],
    n: Optional[int] = None,
    vertices: Optional[Iterable[int]] = None,
    distinct: bool = True,
) -> NDArray[np.float64]:
    """
    Check a coordinate array for shape, finiteness and distinct points.

    Args:
        coords: (n, 2) array-like
        n: Expected number of rows, if known
        vertices: Rows that must be pairwise distinct (default all)
        distinct: Reject coincident vertices

    Returns:
        A read-only float64 copy

    Raises:
        InvalidCoordinates: On bad shape, NaN/Inf or coincident vertices
    """
    arr = np.array(coords, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidCoordinates(f"Expected an (n, 2) coordinate array, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise InvalidCoordinates(f"Expected {n} coordinates, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise InvalidCoordinates("Coordinates contain NaN or Inf")
    rows = arr if vertices is None else arr[sorted(set(vertices))]
    if distinct and rows.shape[0] and np.unique(rows, axis=0).shape[0] != rows.shape[0]:
        raise InvalidCoordinates("Two vertices share the same position")
    arr.setflags(write=False)
    return arr


def find_two_separator(edges: Iterable[Tuple[int, int]]) -> Optional[Tuple[int, ...]]:
    """
    Find a set of at most two vertices whose removal disconnects the graph.

    Removing v and then looking for an articulation point of G - v checks
    every pair, so the search is linear in the number of vertices times a
    depth-first pass.

    Returns:
        The separating vertices, or None if the graph is 3-connected
    """
    graph = nx.Graph()
    graph.add_edges_from(edges)
    if not nx.is_connected(graph):
        return ()
    nodes = sorted(graph.nodes)
    for v in nodes:
        rest = graph.subgraph(u for u in nodes if u != v)
        if rest.number_of_nodes() <= 2:
            continue
        if not nx.is_connected(rest):
            return (v,)
        cut = next(iter(sorted(nx.articulation_points(rest))), None)
        if cut is not None:
            return (v, int(cut))
    return None


def check_three_connected(edges: Iterable[Tuple[int, int]]) -> None:
    """Raise NotThreeConnected if some pair of vertices separates the graph."""
    separator = find_two_separator(edges)
    if separator is not None:
        raise NotThreeConnected(separator)


def validate_polygon(points: NDArray[np.float64]) -> None:
    """
    Check that a closed vertex sequence is a simple counter-clockwise polygon.

    Raises:
        DegenerateBoundary: Fewer than three vertices or repeated consecutive vertices
        PolygonNotSimple: Self-intersection or clockwise orientation
    """
    m = points.shape[0]
    if m < 3:
        raise DegenerateBoundary(f"Polygon needs at least 3 vertices, got {m}")
    nxt = np.roll(points, -1, axis=0)
    repeated = np.flatnonzero(np.all(points == nxt, axis=1))
    if repeated.size:
        raise DegenerateBoundary(f"Consecutive polygon vertices {int(repeated[0])} coincide")
    crossing = first_self_intersection(points)
    if crossing is not None:
        raise PolygonNotSimple(f"Polygon edges {crossing[0]} and {crossing[1]} intersect")
    if signed_area_exact(points) <= 0:
        raise PolygonNotSimple("Polygon is not counter-clockwise")
