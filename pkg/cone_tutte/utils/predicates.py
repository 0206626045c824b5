"""
Exact planar predicates.

Every sign below is exact for float inputs: a static floating-point filter
decides the easy cases and ``fractions.Fraction`` settles the rest.
"""

from fractions import Fraction
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

Point = Sequence[float]

# Error bound of the 2x2 orientation determinant for IEEE doubles
_CCW_ERRBOUND = 3.3306690738754716e-16


def frac(point: Point) -> Tuple[Fraction, Fraction]:
    """Exact rational copy of a float point."""
    return Fraction(float(point[0])), Fraction(float(point[1]))


def orient2d_exact(pa: Point, pb: Point, pc: Point) -> Fraction:
    """Twice the signed area of (pa, pb, pc) in exact arithmetic."""
    ax, ay = frac(pa)
    bx, by = frac(pb)
    cx, cy = frac(pc)
    return (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)


def orient2d(pa: Point, pb: Point, pc: Point) -> int:
    """Orientation of pc relative to the line pa -> pb.

    Returns:
        +1 for a left turn (counter-clockwise), -1 for a right turn,
        0 when the three points are collinear.
    """
    detleft = (pa[0] - pc[0]) * (pb[1] - pc[1])
    detright = (pa[1] - pc[1]) * (pb[0] - pc[0])
    det = detleft - detright
    errbound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    exact = orient2d_exact(pa, pb, pc)
    return (exact > 0) - (exact < 0)


def orient2d_batch(
    pa: NDArray[np.float64], pb: NDArray[np.float64], pc: NDArray[np.float64]
) -> NDArray[np.int8]:
    """Vectorized ``orient2d`` over rows of (m, 2) arrays."""
    detleft = (pa[:, 0] - pc[:, 0]) * (pb[:, 1] - pc[:, 1])
    detright = (pa[:, 1] - pc[:, 1]) * (pb[:, 0] - pc[:, 0])
    det = detleft - detright
    errbound = _CCW_ERRBOUND * (np.abs(detleft) + np.abs(detright))
    signs = np.zeros(det.shape[0], dtype=np.int8)
    signs[det > errbound] = 1
    signs[-det > errbound] = -1
    for k in np.flatnonzero(np.abs(det) <= errbound):
        signs[k] = orient2d(pa[k], pb[k], pc[k])
    return signs


def dot_exact(u: Point, v: Point) -> Fraction:
    ux, uy = frac(u)
    vx, vy = frac(v)
    return ux * vx + uy * vy


def cross_exact(u: Point, v: Point) -> Fraction:
    ux, uy = frac(u)
    vx, vy = frac(v)
    return ux * vy - uy * vx


def sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def on_closed_segment(p: Point, a: Point, b: Point) -> bool:
    """True if p lies on the closed segment [a, b]."""
    if orient2d(a, b, p) != 0:
        return False
    px, py = frac(p)
    ax, ay = frac(a)
    bx, by = frac(b)
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


def segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True if the closed segments [a, b] and [c, d] share any point."""
    o1 = orient2d(a, b, c)
    o2 = orient2d(a, b, d)
    o3 = orient2d(c, d, a)
    o4 = orient2d(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_closed_segment(c, a, b):
        return True
    if o2 == 0 and on_closed_segment(d, a, b):
        return True
    if o3 == 0 and on_closed_segment(a, c, d):
        return True
    if o4 == 0 and on_closed_segment(b, c, d):
        return True
    return False


def adjacent_segments_overlap(shared: Point, b: Point, d: Point) -> bool:
    """For segments [shared, b] and [shared, d], True if they overlap
    beyond the shared endpoint (collinear and pointing the same way)."""
    if orient2d(shared, b, d) != 0:
        return False
    # Float differences are inexact; compare in rationals
    sx, sy = frac(shared)
    bx, by = frac(b)
    dx, dy = frac(d)
    return (bx - sx) * (dx - sx) + (by - sy) * (dy - sy) > 0


def signed_area_exact(points: Sequence[Point]) -> Fraction:
    """Twice the signed area of a closed polygon (shoelace, exact)."""
    total = Fraction(0)
    m = len(points)
    for k in range(m):
        x0, y0 = frac(points[k])
        x1, y1 = frac(points[(k + 1) % m])
        total += x0 * y1 - x1 * y0
    return total


def point_in_polygon(point: Point, polygon: Sequence[Point]) -> int:
    """Exact location of a point relative to a simple polygon.

    Returns:
        +1 strictly inside, 0 on the boundary, -1 strictly outside.
    """
    m = len(polygon)
    for k in range(m):
        if on_closed_segment(point, polygon[k], polygon[(k + 1) % m]):
            return 0
    px, py = frac(point)
    winding = 0
    for k in range(m):
        a = polygon[k]
        b = polygon[(k + 1) % m]
        ay = Fraction(float(a[1]))
        by = Fraction(float(b[1]))
        if ay <= py < by and orient2d(a, b, point) > 0:
            winding += 1
        elif by <= py < ay and orient2d(a, b, point) < 0:
            winding -= 1
    return 1 if winding != 0 else -1


def first_self_intersection(points: Sequence[Point]) -> Optional[Tuple[int, int]]:
    """Indices of the first pair of polygon edges that touch improperly.

    Edge k joins points[k] and points[k + 1]. Consecutive edges may only
    share their common vertex.
    """
    m = len(points)
    pts = np.asarray(points, dtype=np.float64)
    lo = np.minimum(pts, np.roll(pts, -1, axis=0))
    hi = np.maximum(pts, np.roll(pts, -1, axis=0))
    for i in range(m):
        a, b = points[i], points[(i + 1) % m]
        overlap = np.all(lo[i] <= hi, axis=1) & np.all(lo <= hi[i], axis=1)
        for j in np.flatnonzero(overlap):
            j = int(j)
            if j <= i:
                continue
            c, d = points[j], points[(j + 1) % m]
            if j == i + 1:
                if adjacent_segments_overlap(b, a, d):
                    return i, j
            elif i == 0 and j == m - 1:
                if adjacent_segments_overlap(a, b, c):
                    return i, j
            elif segments_intersect(a, b, c, d):
                return i, j
    return None
