"""
Unit tests for triangulation building, drawings and polygons.
"""

import numpy as np
import pytest

from cone_tutte.core.exceptions import (
    BoundaryMismatch,
    DegenerateBoundary,
    InvalidCoordinates,
    InvalidFace,
    MultipleBoundaryLoops,
    NonManifoldEdge,
    NotDisk,
    NotThreeConnected,
    PolygonNotSimple,
    UnreferencedVertices,
)
from cone_tutte.domain.mesh import (
    VertexClass,
    assign_boundary,
    build_triangulation,
    classify_boundary_vertices,
    make_drawing,
    make_polygon,
)
from cone_tutte.domain.mesh.services import classify_points
from cone_tutte.domain.mesh.validators import find_two_separator
from tests.factories.meshes import L_SHAPE, SQUARE, square_fan

pytestmark = [pytest.mark.unit, pytest.mark.mesh]

FAN_FACES = [(0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4)]


class TestBuildTriangulation:
    """Test disk validation and orientation."""

    def test_fan_boundary_and_interior(self, fan):
        """Test that the square fan has boundary 0..3 and interior vertex 4."""
        assert fan.boundary == (0, 1, 2, 3)
        assert fan.interior == (4,)
        assert fan.neighbors[4] == (0, 1, 2, 3)
        assert len(fan.directed_edges) == 16

    def test_inconsistent_input_orientation_is_repaired(self):
        """Test that flipped input faces are re-oriented to match face 0."""
        faces = [(0, 1, 4), (2, 1, 4), (2, 3, 4), (0, 3, 4)]
        tri = build_triangulation(faces, 5)
        assert tri.boundary == (0, 1, 2, 3)
        assert tri.same_mesh(square_fan())

    def test_build_is_deterministic(self, u_grid):
        """Test that the same faces always give the same derived structures."""
        faces = [list(face) for face in u_grid.tri.faces]
        n = u_grid.tri.vertex_count
        first = build_triangulation(faces, n)
        second = build_triangulation(faces, n)
        assert first.faces == second.faces
        assert first.boundary == second.boundary
        assert first.neighbors == second.neighbors
        assert first.directed_edges == second.directed_edges
        assert first.edge_index == second.edge_index

    def test_interior_edges_appear_in_both_directions(self, l_grid):
        """Test the consistent orientation of a larger mesh."""
        directed = [e for face in l_grid.tri.faces for e in zip(face, face[1:] + face[:1])]
        boundary = set(zip(l_grid.tri.boundary, l_grid.tri.boundary[1:] + l_grid.tri.boundary[:1]))
        for u, v in directed:
            if (u, v) not in boundary:
                assert (v, u) in directed

    def test_l_grid_size(self, l_grid):
        """Test the L-shaped lattice mesh has 33 vertices and a 16-vertex boundary."""
        assert l_grid.tri.vertex_count == 33
        assert len(l_grid.tri.boundary) == 16
        assert len(l_grid.tri.faces) == 48

    @pytest.mark.parametrize("face", [(0, 0, 1), (0, 1, 5), (-1, 1, 2), (0, 1)])
    def test_invalid_face(self, face):
        """Test that malformed faces are rejected."""
        with pytest.raises(InvalidFace) as exc_info:
            build_triangulation([face, (1, 2, 3)], 5)
        assert exc_info.value.error_code == "INVALID_FACE"

    def test_non_manifold_edge(self):
        """Test an edge shared by three faces."""
        with pytest.raises(NonManifoldEdge):
            build_triangulation([(0, 1, 2), (0, 1, 3), (0, 1, 4)], 5)

    def test_pinched_vertex_has_two_boundary_loops(self):
        """Test a strip of triangles whose two ends meet at one vertex."""
        faces = [(0, 1, 2), (1, 3, 2), (2, 3, 4), (3, 5, 4), (4, 5, 0)]
        with pytest.raises(MultipleBoundaryLoops):
            build_triangulation(faces, 6)

    def test_face_disconnected_mesh_is_not_a_disk(self):
        """Test two triangles touching at a single vertex."""
        with pytest.raises(NotDisk):
            build_triangulation([(0, 1, 2), (0, 3, 4)], 5)

    def test_annulus_has_two_boundary_loops(self):
        """Test a ring of triangles between two squares."""
        faces = []
        for k in range(4):
            a, b = k, (k + 1) % 4
            faces.append((a, b, 4 + b))
            faces.append((a, 4 + b, 4 + a))
        with pytest.raises(MultipleBoundaryLoops):
            build_triangulation(faces, 8)

    def test_closed_surface_is_not_a_disk(self):
        """Test that a tetrahedron surface has no boundary."""
        with pytest.raises(NotDisk):
            build_triangulation([(0, 1, 2), (0, 3, 1), (1, 3, 2), (0, 2, 3)], 4)

    def test_no_faces(self):
        """Test that an empty face list is rejected."""
        with pytest.raises(NotDisk):
            build_triangulation([], 3)

    def test_unreferenced_vertices(self):
        """Test a vertex that belongs to no face."""
        with pytest.raises(UnreferencedVertices) as exc_info:
            build_triangulation(FAN_FACES, 6)
        assert exc_info.value.context["vertices"] == [5]

        tri = build_triangulation(FAN_FACES, 6, allow_unreferenced=True)
        assert tri.interior == (4,)

    def test_chord_breaks_three_connectivity(self):
        """Test a square split by a diagonal."""
        faces = [(0, 1, 2), (0, 2, 3)]
        with pytest.raises(NotThreeConnected) as exc_info:
            build_triangulation(faces, 4)
        assert sorted(exc_info.value.context["separator"]) == [0, 2]

        tri = build_triangulation(faces, 4, check_connectivity=False)
        assert tri.interior == ()

    def test_separator_search(self):
        """Test the two-separator search on small graphs."""
        wheel = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)]
        assert find_two_separator(wheel) is None
        assert find_two_separator([(0, 1), (2, 3)]) == ()
        assert find_two_separator([(0, 1), (1, 2), (2, 3), (3, 0)]) is not None


class TestTriangulationEntity:
    """Test Triangulation helpers."""

    def test_reversed_keeps_first_boundary_vertex(self, fan):
        """Test that reversing flips faces and the boundary cycle."""
        rev = fan.reversed()
        assert rev.boundary == (0, 3, 2, 1)
        assert rev.faces[0] == (0, 4, 1)
        assert rev.same_mesh(fan)

    def test_boundary_position(self, fan):
        """Test the boundary position lookup."""
        assert fan.boundary_position() == {0: 0, 1: 1, 2: 2, 3: 3}
        assert fan.is_boundary(2)
        assert not fan.is_boundary(4)


class TestDrawings:
    """Test attaching coordinates to triangulations."""

    def test_counter_clockwise_drawing_keeps_orientation(self, fan_drawing):
        """Test a drawing whose boundary already runs counter-clockwise."""
        assert fan_drawing.tri.boundary == (0, 1, 2, 3)
        assert np.all(fan_drawing.face_signed_areas() > 0)
        assert fan_drawing.diameter() == pytest.approx(np.sqrt(2.0))

    def test_clockwise_drawing_is_reoriented(self, fan):
        """Test that a clockwise boundary reverses the triangulation."""
        coords = np.array([(0, 0), (0, 1), (1, 1), (1, 0), (0.5, 0.5)], dtype=float)
        drawing = make_drawing(fan, coords)
        assert drawing.tri.boundary == (0, 3, 2, 1)
        assert np.all(drawing.face_signed_areas() > 0)

    def test_drawing_is_read_only(self, fan_drawing):
        """Test that coordinates cannot be mutated in place."""
        with pytest.raises(ValueError):
            fan_drawing.coords[0, 0] = 5.0

    @pytest.mark.parametrize(
        "coords",
        [
            [(0, 0), (1, 0), (1, 1), (0, 1)],
            [(0, 0), (1, 0), (1, 1), (0, 1), (np.nan, 0.5)],
            [(0, 0), (1, 0), (1, 1), (0, 1), (1, 1)],
            [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0), (0.5, 0.5, 0)],
        ],
    )
    def test_invalid_coordinates(self, fan, coords):
        """Test wrong counts, NaN, coincident vertices and wrong shape."""
        with pytest.raises(InvalidCoordinates):
            make_drawing(fan, coords)


class TestPolygons:
    """Test polygon validation and boundary classification."""

    def test_make_polygon(self):
        """Test a valid counter-clockwise polygon."""
        polygon = make_polygon(L_SHAPE)
        assert len(polygon) == 6
        assert polygon.perimeter() == pytest.approx(8.0)

    def test_clockwise_polygon_rejected(self):
        """Test that a clockwise polygon is rejected."""
        with pytest.raises(PolygonNotSimple):
            make_polygon(SQUARE[::-1])

    def test_self_intersecting_polygon_rejected(self):
        """Test that a bowtie is rejected."""
        with pytest.raises(PolygonNotSimple):
            make_polygon([(0, 0), (1, 1), (1, 0), (0, 1)])

    def test_degenerate_polygon_rejected(self):
        """Test a polygon with two vertices."""
        with pytest.raises(DegenerateBoundary):
            make_polygon([(0, 0), (1, 0)])

    def test_repeated_polygon_vertex_rejected(self):
        """Test a polygon visiting the same point twice."""
        with pytest.raises(InvalidCoordinates):
            make_polygon([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_classify_l_shape(self, l_polygon):
        """Test that only the notch corner of the L is reflex."""
        labels = classify_boundary_vertices(l_polygon)
        assert labels[3] is VertexClass.STRICTLY_REFLEX
        assert all(labels[k] is VertexClass.STRICTLY_CONVEX for k in (0, 1, 2, 4, 5))

    def test_classify_straight_vertices(self, l_boundary32):
        """Test that sampled points in the middle of an edge are straight."""
        labels = classify_boundary_vertices(l_boundary32)
        straight = [k for k, label in labels.items() if label is VertexClass.STRAIGHT]
        assert len(straight) == 26
        assert sum(label.is_reflex for label in labels.values()) == 27

    def test_classify_drawing_uses_vertex_keys(self, l_grid):
        """Test that drawings are classified by vertex index."""
        labels = classify_boundary_vertices(l_grid)
        assert set(labels) == set(l_grid.tri.boundary)
        reflex = [v for v, label in labels.items() if label is VertexClass.STRICTLY_REFLEX]
        assert len(reflex) == 1
        assert tuple(l_grid.coords[reflex[0]]) == (1.0, 1.0)

    def test_fold_back_is_degenerate(self):
        """Test a boundary that reverses direction along a line."""
        with pytest.raises(DegenerateBoundary):
            classify_points(np.array([(0.0, 0.0), (2.0, 0.0), (1.0, 0.0)]))

    def test_assign_boundary(self, fan, square):
        """Test mapping the boundary cycle onto polygon vertices with an offset."""
        assignment = assign_boundary(fan, square, start=1)
        assert tuple(assignment[0]) == (1.0, 0.0)
        assert tuple(assignment[3]) == (0.0, 0.0)

    def test_assign_boundary_length_mismatch(self, fan, l_polygon):
        """Test that lengths must agree."""
        with pytest.raises(BoundaryMismatch):
            assign_boundary(fan, l_polygon)
