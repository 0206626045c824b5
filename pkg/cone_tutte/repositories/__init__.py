from cone_tutte.repositories.artifacts import (
    MeshRepository,
    boundary_maps,
    cone_reports,
    drawings,
    extensions,
    meshes,
    parse_off,
    polygons,
    run_configs,
    weights,
    write_grid_csv,
)
from cone_tutte.repositories.base import JsonRepository, atomic_write_bytes, dumps

__all__ = [
    "JsonRepository",
    "MeshRepository",
    "atomic_write_bytes",
    "boundary_maps",
    "cone_reports",
    "drawings",
    "dumps",
    "extensions",
    "meshes",
    "parse_off",
    "polygons",
    "run_configs",
    "weights",
    "write_grid_csv",
]
