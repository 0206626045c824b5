"""
Global pytest configuration and fixtures.
"""

import os

# Quiet logging BEFORE any package imports
os.environ.setdefault("CONE_TUTTE_LOG", "WARNING")

import numpy as np
import pytest

from cone_tutte.core.logging import setup_logging
from cone_tutte.domain.harmonic.entities import EdgeWeights
from cone_tutte.domain.mesh.entities import PlanarDrawing, TargetPolygon, Triangulation
from cone_tutte.domain.mesh.services import make_polygon
from tests.factories.meshes import (
    L_CELLS,
    L_SHAPE,
    SQUARE,
    U_CELLS,
    U_SHAPE,
    grid_mesh,
    polar_wheel,
    sample_boundary,
    square_fan,
    square_fan_drawing,
)

setup_logging()


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so every test is reproducible."""
    return np.random.default_rng(20240607)


# Mesh fixtures
@pytest.fixture
def fan() -> Triangulation:
    return square_fan()


@pytest.fixture
def fan_drawing() -> PlanarDrawing:
    return square_fan_drawing()


@pytest.fixture
def fan_weights(fan: Triangulation) -> EdgeWeights:
    """Center weights 1, 1, 1, 3 towards corners 0..3; all others 1."""
    mapping = {edge: 1.0 for edge in fan.directed_edges}
    mapping[(4, 3)] = 3.0
    return EdgeWeights.from_mapping(fan, mapping)


@pytest.fixture
def square() -> TargetPolygon:
    return make_polygon(SQUARE)


@pytest.fixture
def l_polygon() -> TargetPolygon:
    return make_polygon(L_SHAPE)


@pytest.fixture
def u_polygon() -> TargetPolygon:
    return make_polygon(U_SHAPE)


@pytest.fixture
def l_grid() -> PlanarDrawing:
    """L-shaped lattice drawing: 21 lattice points and 12 cell centers."""
    return grid_mesh(L_CELLS)


@pytest.fixture
def u_grid() -> PlanarDrawing:
    return grid_mesh(U_CELLS)


@pytest.fixture
def wheel32() -> PlanarDrawing:
    """Polar wheel with 32 boundary vertices and two rings."""
    return polar_wheel(32, rings=2)


@pytest.fixture
def u_boundary32() -> TargetPolygon:
    """U-shape sampled at 32 points, 0.5 apart; boundary mean is (1.5, 1.5)."""
    return sample_boundary(U_SHAPE, 32)


@pytest.fixture
def l_boundary32() -> TargetPolygon:
    """L-shape sampled at 32 points, 0.25 apart; boundary mean is (0.875, 0.875)."""
    return sample_boundary(L_SHAPE, 32)
