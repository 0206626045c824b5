from cone_tutte.domain.extension.entities import ExtensionResult
from cone_tutte.domain.extension.services import (
    build_extension,
    convex_hull,
    convex_hull_indices,
    ear_clip,
    reproduce_from_extension,
)

__all__ = [
    "ExtensionResult",
    "build_extension",
    "convex_hull",
    "convex_hull_indices",
    "ear_clip",
    "reproduce_from_extension",
]
