"""
Unit tests for the injectivity certificate, determinant checks and weight
recovery.
"""

import numpy as np
import pytest

from cone_tutte.core.exceptions import MeshMismatch, SourceNotEmbedded, TargetNotEmbedded
from cone_tutte.domain.certifier import (
    boundary_det_check,
    certify_homeomorphism,
    intersection_free,
    recover_weights,
    reweight_reflex_vertices,
)
from cone_tutte.domain.cones import cone_condition_report
from cone_tutte.domain.harmonic import EdgeWeights, harmonic_embed
from cone_tutte.domain.mesh import PlanarDrawing, VertexClass, assign_boundary
from tests.factories.meshes import jitter_interior, square_fan_drawing
from tests.utils.assertions import assert_certified, assert_points_close, assert_rejected

pytestmark = [pytest.mark.unit, pytest.mark.certifier]


@pytest.fixture
def folded_fan() -> PlanarDrawing:
    """Square fan with its center pulled outside the square, past edge 1-2."""
    return square_fan_drawing(center=(2.0, 0.5))


@pytest.fixture
def jittered_l(l_grid, rng) -> PlanarDrawing:
    """L lattice with interior vertices moved by at most 0.05 per axis."""
    return jitter_interior(l_grid, rng, 0.05)


def _vertex_at(drawing: PlanarDrawing, point) -> int:
    matches = np.flatnonzero(np.all(drawing.coords == np.asarray(point, dtype=float), axis=1))
    return int(matches[0])


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


class TestIntersectionFree:
    """Test the exact embedding certificate."""

    def test_lattice_is_certified(self, l_grid):
        """Test that the lattice drawing passes both certificates."""
        cert = intersection_free(l_grid)
        assert_certified(cert)
        assert cert.methods == ("orientation", "pairwise")
        assert set(cert.det_signs) == {1}
        assert cert.evidence["faces"] == 48

    def test_folded_fan_is_rejected(self, folded_fan):
        """Test that a flipped triangle and an edge crossing are both reported."""
        cert = intersection_free(folded_fan)
        assert_rejected(cert, ["flipped_triangle", "crossing"])
        assert cert.det_signs.count(-1) == 1

    def test_single_method(self, folded_fan):
        """Test the orientation certificate on its own."""
        cert = intersection_free(folded_fan, method="orientation")
        assert cert.methods == ("orientation",)
        assert_rejected(cert, ["flipped_triangle"])
        assert cert.count("crossing") == 0

    def test_coincident_vertices(self, fan):
        """Test a drawing with the center on a corner."""
        coords = np.array([(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)], dtype=float)
        cert = intersection_free(PlanarDrawing(tri=fan, coords=coords))
        assert_rejected(cert, ["coincident_vertices", "degenerate_triangle"])

    def test_tutte_drawing_into_u_is_rejected(self, wheel32, u_boundary32):
        """Test that the wheel drawn into the U with uniform weights is not an embedding."""
        tri = wheel32.tri
        drawing = harmonic_embed(tri, EdgeWeights.uniform(tri), assign_boundary(tri, u_boundary32))
        cert = intersection_free(drawing)
        assert_rejected(cert)
        assert cert.count("flipped_triangle") + cert.count("degenerate_triangle") > 0


class TestCertifyHomeomorphism:
    """Test certification of a map between two drawings."""

    def test_jittered_target(self, l_grid, jittered_l):
        """Test that a small interior perturbation stays a homeomorphism."""
        cert = certify_homeomorphism(l_grid, jittered_l)
        assert_certified(cert)
        assert cert.evidence["recovery_feasible"] is True

    def test_folded_target(self, fan_drawing, folded_fan):
        """Test that a folded target is rejected."""
        cert = certify_homeomorphism(fan_drawing, folded_fan)
        assert_rejected(cert, ["flipped_triangle"])

    def test_source_must_be_embedded(self, fan_drawing, folded_fan):
        """Test that the source drawing is certified first."""
        with pytest.raises(SourceNotEmbedded):
            certify_homeomorphism(folded_fan, fan_drawing)

    def test_different_meshes(self, fan_drawing, l_grid):
        """Test drawings over different triangulations."""
        with pytest.raises(MeshMismatch):
            certify_homeomorphism(fan_drawing, l_grid)


class TestBoundaryDetCheck:
    """Test Jacobian signs near the boundary."""

    def test_positive_for_jittered_target(self, l_grid, jittered_l):
        """Test that every boundary triangle keeps a positive determinant."""
        report = boundary_det_check(l_grid, jittered_l)
        assert report.positive
        assert report.orientation_preserving
        touching = [f for f in l_grid.tri.faces if set(f) & l_grid.tri.boundary_set]
        assert len(report.entries) == len(touching)

    def test_flipped_face_reported(self, fan_drawing, folded_fan):
        """Test that only the face across the pulled edge flips."""
        report = boundary_det_check(fan_drawing, folded_fan)
        assert not report.positive
        assert report.non_positive_faces == ((1, 2, 4),)

    def test_identity_ratios(self, l_grid):
        """Test that the identity map has unit area ratios."""
        report = boundary_det_check(l_grid, l_grid)
        assert all(e.ratio == 1.0 for e in report.entries)


class TestRecoverWeights:
    """Test positive weight recovery."""

    def test_recovered_weights_reproduce_target(self, l_grid, jittered_l):
        """Test that re-embedding with recovered weights gives the target back."""
        weights, report = recover_weights(l_grid, jittered_l)
        assert report.passes
        assert np.all(weights.values > 0)
        tri = weights.tri
        assignment = {v: jittered_l.coords[v] for v in tri.boundary}
        drawing = harmonic_embed(tri, weights, assignment)
        assert_points_close(drawing.coords, jittered_l.coords, 1e-9)

    def test_lattice_recovery_is_uniform_inside(self, l_grid):
        """Test that symmetric interior stars recover equal weights."""
        weights, _ = recover_weights(l_grid, l_grid)
        centers = [v for v in l_grid.tri.interior if len(l_grid.tri.neighbors[v]) == 4]
        for v in centers:
            values = list(weights.outgoing(v).values())
            assert max(values) == pytest.approx(min(values))

    def test_straight_vertices_aim_at_the_normal(self, l_grid, jittered_l):
        """Test that recovered forces at straight vertices point along the inward normal."""
        _, report = recover_weights(l_grid, jittered_l)
        uniform = cone_condition_report(jittered_l, EdgeWeights.uniform(jittered_l.tri))
        straight = [e for e in report.entries if e.vertex_class is VertexClass.STRAIGHT]
        assert straight
        for entry in straight:
            force = np.asarray(entry.force)
            normal = entry.cone.bisector()
            assert abs(_cross(force, normal)) <= 1e-12 * np.hypot(*force)
            assert force @ normal > 0
        skews = [
            abs(_cross(np.asarray(e.force), e.cone.bisector())) / np.hypot(*e.force)
            for e in uniform.entries
            if e.vertex_class is VertexClass.STRAIGHT
        ]
        assert max(skews) > 1e-6

    def test_straight_vertex_weights_are_not_uniform(self, l_grid):
        """Test the weights recovered at a straight vertex of the untouched lattice."""
        weights, _ = recover_weights(l_grid, l_grid)
        v = _vertex_at(l_grid, (0.5, 0.0))
        up = _vertex_at(l_grid, (0.5, 0.5))
        corner = _vertex_at(l_grid, (0.0, 0.0))
        assert weights[(v, up)] == pytest.approx(3.0 * weights[(v, corner)])

    def test_target_must_be_embedded(self, fan_drawing, folded_fan):
        """Test recovery on a folded target."""
        with pytest.raises(TargetNotEmbedded) as exc_info:
            recover_weights(fan_drawing, folded_fan)
        assert exc_info.value.error_code == "TARGET_NOT_EMBEDDED"


class TestReweightReflexVertices:
    """Test the cone-condition repair."""

    def test_repairs_skewed_reflex_vertex(self, l_grid):
        """Test that a reflex vertex pulled along its boundary edge is repaired."""
        reflex = _vertex_at(l_grid, (1.0, 1.0))
        pull = _vertex_at(l_grid, (1.5, 1.0))
        w = EdgeWeights.uniform(l_grid.tri).updated({(reflex, pull): 100.0})

        repair = reweight_reflex_vertices(l_grid, w)
        assert repair.repaired == (reflex,)
        assert repair.unrepaired == ()
        assert repair.certificate.passes
        assert repair.weights[(reflex, pull)] != 100.0

    def test_passing_drawing_is_unchanged(self, l_grid):
        """Test that nothing is reweighted when the condition already holds."""
        w = EdgeWeights.uniform(l_grid.tri)
        repair = reweight_reflex_vertices(l_grid, w, source=l_grid)
        assert repair.repaired == ()
        assert np.array_equal(repair.weights.values, w.values)
