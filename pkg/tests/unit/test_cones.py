"""
Unit tests for boundary cones and positive combinations.
"""

from fractions import Fraction

import numpy as np
import pytest

from cone_tutte.config import settings
from cone_tutte.core.exceptions import CoincidentPoints, ZeroVector
from cone_tutte.domain.cones import (
    cone_at_vertex,
    cone_condition_report,
    neighbor_cone_vectors,
    positively_spans,
    solve_positive_combination,
)
from cone_tutte.domain.harmonic import EdgeWeights, harmonic_embed
from cone_tutte.domain.mesh import VertexClass, assign_boundary

pytestmark = [pytest.mark.unit, pytest.mark.cones]


class TestBoundaryCone:
    """Test exact cone membership."""

    def test_convex_corner(self):
        """Test the cone at the origin corner of the unit square."""
        cone = cone_at_vertex((0, 1), (0, 0), (1, 0))
        assert cone.contains((1, 1))
        assert not cone.contains((-1, 1))
        assert not cone.contains((1, 0))
        assert cone.margin((2, 3)) == 2.0
        np.testing.assert_allclose(cone.bisector(), np.array([1.0, 1.0]) / np.sqrt(2.0))

    def test_reflex_corner(self):
        """Test the notch corner of an L: the cone points into the L."""
        cone = cone_at_vertex((2, 1), (1, 1), (1, 2))
        assert cone.contains((-1, -1))
        assert not cone.contains((0, -1))
        assert not cone.contains((1, 1))

    def test_straight_vertex_is_a_half_plane(self):
        """Test that a straight vertex admits every inward force."""
        cone = cone_at_vertex((0, 0), (1, 0), (2, 0))
        assert not cone.degenerate
        assert cone.contains((-5, 0.001))
        assert not cone.contains((5, 0))

    def test_fold_back_cone_is_empty(self):
        """Test that opposite inward normals give a degenerate cone."""
        cone = cone_at_vertex((0, 0), (1, 0), (0, 0))
        assert cone.degenerate
        assert cone.bisector() is None
        assert not cone.contains((0, 1))
        assert not cone.contains((0, -1))

    def test_membership_is_exact(self):
        """Test a force off the cone boundary by less than float rounding of the sum."""
        cone = cone_at_vertex((0, 1), (0, 0), (1, 0))
        tiny = 2.0**-1074
        assert cone.contains((1.0, tiny))
        assert not cone.contains((1.0, -tiny))

    def test_coincident_apex(self):
        """Test an apex equal to a neighbor."""
        with pytest.raises(CoincidentPoints) as exc_info:
            cone_at_vertex((0, 0), (0, 0), (1, 0))
        assert exc_info.value.error_code == "COINCIDENT_POINTS"


class TestConeConditionReport:
    """Test the cone condition over a drawing."""

    def test_lattice_passes(self, l_grid):
        """Test that the uniform-weight L lattice satisfies the cone condition."""
        report = cone_condition_report(l_grid, EdgeWeights.uniform(l_grid.tri))
        assert report.passes
        assert report.failing == ()
        reflex = [e for e in report.entries if e.vertex_class is VertexClass.STRICTLY_REFLEX]
        assert len(reflex) == 1
        assert reflex[0].force == (-0.25, -0.25)
        assert report.min_reflex_margin == pytest.approx(0.25 * 0.5)

    def test_convex_only_boundary_has_no_requirement(self, fan_drawing, fan_weights):
        """Test that strictly convex vertices never enter the verdict."""
        report = cone_condition_report(fan_drawing, fan_weights)
        assert report.passes
        assert report.min_reflex_margin is None
        assert not any(e.required for e in report.entries)

    def test_non_embedding_fails(self, wheel32, u_boundary32):
        """Test that a Tutte drawing with a vertex outside the U fails somewhere."""
        tri = wheel32.tri
        w = EdgeWeights.uniform(tri)
        drawing = harmonic_embed(tri, w, assign_boundary(tri, u_boundary32))
        report = cone_condition_report(drawing, w)
        assert not report.passes
        assert report.failing
        assert all(not e.passes for e in report.entries if e.vertex in report.failing)

    def test_neighbor_vectors(self, fan_drawing):
        """Test the generators of the neighbor cone at the fan center."""
        vectors = neighbor_cone_vectors(fan_drawing, 4)
        np.testing.assert_array_equal(
            vectors, [(-0.5, -0.5), (0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)]
        )
        assert positively_spans(vectors)


class TestPositiveCombination:
    """Test exact positive combinations."""

    def test_feasible_interior_target(self):
        """Test a target strictly inside a quadrant."""
        result = solve_positive_combination([(1, 0), (0, 1)], (1, 1))
        assert result.feasible
        assert result.exact_alphas == (Fraction(1), Fraction(1))
        assert result.residual == (0.0, 0.0)

    def test_zero_target_with_spanning_generators(self):
        """Test the balanced case sum alpha_j Y_j = 0."""
        vectors = [(1, 0), (0, 1), (-1, -1)]
        result = solve_positive_combination(vectors, (0, 0))
        assert result.feasible
        alphas = result.exact_alphas
        assert all(a > 0 for a in alphas)
        assert sum(a * Fraction(v[0]) for a, v in zip(alphas, vectors)) == 0
        assert sum(a * Fraction(v[1]) for a, v in zip(alphas, vectors)) == 0

    def test_infeasible_has_separating_certificate(self):
        """Test that an infeasible target comes with c, <c, Y> >= 0 > <c, target>."""
        vectors = [(1, 0), (0, 1)]
        target = (-1, 0.5)
        result = solve_positive_combination(vectors, target)
        assert result.status == "infeasible"
        c = np.array(result.certificate)
        assert all(c @ np.array(v) >= 0 for v in vectors)
        assert c @ np.array(target) < 0

    def test_target_on_cone_boundary_is_degenerate(self):
        """Test a target on an extreme ray."""
        result = solve_positive_combination([(1, 0), (0, 1)], (1, 0))
        assert result.status == "degenerate"
        assert not result.feasible
        assert np.dot(result.certificate, (1, 0)) == 0

    def test_random_targets_in_cone(self, rng):
        """Test exactness of the recombination for random generators."""
        for _ in range(20):
            vectors = rng.normal(size=(5, 2))
            weights = rng.uniform(0.5, 2.0, size=5)
            target = weights @ vectors
            result = solve_positive_combination(vectors, target)
            assert result.feasible
            assert all(a > 0 for a in result.exact_alphas)
            np.testing.assert_allclose(np.array(result.alphas) @ vectors, target, rtol=1e-12, atol=1e-9)

    def test_balanced_triple_reproduces_known_solution(self):
        """Test the (1,0), (0,1), (-1,-1) star against target (1,1)."""
        result = solve_positive_combination([(1, 0), (0, 1), (-1, -1)], (1, 1))
        assert result.feasible
        assert result.exact_alphas == (Fraction(2), Fraction(2), Fraction(1))

    def test_large_target_keeps_relative_floor(self):
        """Test that a target far longer than the generators still meets the floor."""
        vectors = [(1, 0), (0, 1), (-1, -1)]
        result = solve_positive_combination(vectors, (1e7, 0))
        assert result.feasible
        alphas = result.exact_alphas
        assert min(alphas) >= Fraction(settings.ALPHA_MIN) * max(alphas)
        assert sum(a * Fraction(v[0]) for a, v in zip(alphas, vectors)) == Fraction(10**7)
        assert sum(a * Fraction(v[1]) for a, v in zip(alphas, vectors)) == 0

    def test_large_target_in_pointed_cone(self):
        """Test a large target inside a cone that does not span the plane."""
        vectors = [(1, 0), (1, 1), (0, 1)]
        result = solve_positive_combination(vectors, (3e6, 2e6))
        assert result.feasible
        assert min(result.alphas) >= settings.ALPHA_MIN * max(result.alphas)
        assert np.hypot(*result.residual) <= 1e-9 * sum(result.alphas) * np.sqrt(2)

    def test_target_hugging_an_extreme_ray_is_degenerate(self):
        """Test that forced coefficients below the floor are not reported feasible."""
        result = solve_positive_combination([(1, 0), (0, 1)], (1, 1e-9))
        assert result.status == "degenerate"
        assert not result.feasible
        assert result.certificate == (0.0, 1.0)
        assert result.exact_alphas[1] / result.exact_alphas[0] < Fraction(settings.ALPHA_MIN)

    def test_explicit_floor_overrides_settings(self):
        """Test that a lower alpha_min accepts the same skewed combination."""
        result = solve_positive_combination([(1, 0), (0, 1)], (1, 1e-9), alpha_min=1e-12)
        assert result.feasible
        assert result.exact_alphas == (Fraction(1), Fraction(1e-9))

    def test_zero_generator(self):
        """Test that a zero generator is rejected."""
        with pytest.raises(ZeroVector):
            solve_positive_combination([(1, 0), (0, 0)], (1, 0))

    @pytest.mark.parametrize(
        "vectors, expected",
        [
            ([(1, 0), (0, 1), (-1, -1)], True),
            ([(1, 0), (0, 1)], False),
            ([(1, 0), (-1, 0)], False),
            ([], False),
        ],
    )
    def test_positively_spans(self, vectors, expected):
        """Test whether positive combinations cover the plane."""
        assert positively_spans(vectors) is expected
