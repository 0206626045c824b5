"""
Deterministic SVG rendering of drawings, cone reports and extensions.
"""

import io
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import numpy as np  # noqa: E402
from matplotlib.collections import PolyCollection  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from cone_tutte.config import settings  # noqa: E402
from cone_tutte.domain.mesh.entities import PlanarDrawing  # noqa: E402
from cone_tutte.schemas.reports import ConeReportFile  # noqa: E402

_RC = {
    "svg.hashsalt": "cone-tutte",
    "svg.fonttype": "none",
    "path.simplify": False,
}
FACE_COLOR = "#dfe8f3"
EDGE_COLOR = "#4a5a6a"
REFLEX_COLOR = "#1f4e9a"
POCKET_COLOR = "#ff7f0e"


def render_svg(
    drawing: PlanarDrawing,
    cones: Optional[ConeReportFile] = None,
    pockets: Sequence[Sequence[int]] = (),
    arrow_scale: Optional[float] = None,
    pass_color: Optional[str] = None,
    fail_color: Optional[str] = None,
) -> bytes:
    """
    Render a drawing as an SVG document.

    Triangles are filled and the boundary cycle is drawn bold. With a cone
    report, reflex vertices are marked and each boundary force is drawn as
    an arrow of length ``arrow_scale * diameter`` in the pass or fail color.
    Pocket polygons of a convex extension are outlined dashed.

    Returns:
        SVG bytes, identical across runs for identical input
    """
    arrow_scale = settings.ARROW_SCALE if arrow_scale is None else arrow_scale
    pass_color = pass_color or settings.PASS_COLOR
    fail_color = fail_color or settings.FAIL_COLOR
    y = drawing.coords
    tri = drawing.tri

    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_subplot(1, 1, 1)
        ax.set_aspect("equal")
        ax.set_axis_off()

        ax.add_collection(
            PolyCollection(
                [y[list(face)] for face in tri.faces],
                facecolors=FACE_COLOR,
                edgecolors=EDGE_COLOR,
                linewidths=0.5,
            )
        )
        loop = y[list(tri.boundary) + [tri.boundary[0]]]
        ax.plot(loop[:, 0], loop[:, 1], color="black", linewidth=2.0)

        for pocket in pockets:
            ring = y[list(pocket) + [pocket[0]]]
            ax.plot(ring[:, 0], ring[:, 1], color=POCKET_COLOR, linewidth=1.2, linestyle="--")

        if cones is not None:
            length = arrow_scale * drawing.diameter()
            reflex = [e.vertex for e in cones.entries if e.required]
            if reflex:
                ax.scatter(y[reflex, 0], y[reflex, 1], s=24, color=REFLEX_COLOR, zorder=3)
            for entry in cones.entries:
                force = np.asarray(entry.force, dtype=np.float64)
                norm = np.hypot(*force)
                if norm == 0:
                    continue
                start = y[entry.vertex]
                delta = force / norm * length
                ax.update_datalim([start + delta])
                ax.annotate(
                    "",
                    xy=(start[0] + delta[0], start[1] + delta[1]),
                    xytext=(start[0], start[1]),
                    annotation_clip=False,
                    arrowprops={
                        "arrowstyle": "->",
                        "color": pass_color if entry.passes or not entry.required else fail_color,
                        "linewidth": 1.5,
                    },
                )
        ax.autoscale_view()
        ax.margins(0.08)

        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()
