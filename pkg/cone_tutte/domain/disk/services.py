"""
Continuous experiments with the Poisson extension of disk boundary maps:
boundary cone scans, sampled injectivity, determinant agreement, the
Choquet slowdown family, monotonicity transfer and the diameter profile.
"""

from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from matplotlib.path import Path

from cone_tutte.config import settings
from cone_tutte.core.exceptions import HypothesisViolated, InvalidBoundaryMap, NoReflexChord
from cone_tutte.core.logging import LogContext, get_logger
from cone_tutte.domain.disk.entities import (
    Array,
    ChoquetResult,
    ConeScanResult,
    DeterminantAgreement,
    DiskBoundaryMap,
    DiskSample,
    EdgeTanhPiece,
    InjectivityReport,
    MonotonicityReport,
    PolyPiece,
    ProfileAudit,
    SlowdownLaw,
    TrigPiece,
    Witness,
    wrap_angle,
)
from cone_tutte.domain.disk.quadrature import (
    PoissonExtender,
    poisson_extend_interval,
    poisson_extend_scalar,
)
from cone_tutte.domain.mesh.entities import TargetPolygon, VertexClass
from cone_tutte.domain.mesh.services import classify_boundary_vertices
from cone_tutte.utils.predicates import orient2d_batch, point_in_polygon

logger = get_logger(__name__)


# Boundary map constructors


def circle_map() -> DiskBoundaryMap:
    """The identity map of the unit circle."""
    return DiskBoundaryMap(pieces=(TrigPiece(cos_x=(0.0, 1.0), sin_x=(), cos_y=(), sin_y=(0.0, 1.0)),))


def trig_map(
    cos_x: Sequence[float], sin_x: Sequence[float], cos_y: Sequence[float], sin_y: Sequence[float]
) -> DiskBoundaryMap:
    """A single smooth periodic piece given by Fourier coefficients."""
    return DiskBoundaryMap(
        pieces=(TrigPiece(tuple(cos_x), tuple(sin_x), tuple(cos_y), tuple(sin_y)),)
    )


def polygon_map(
    polygon: TargetPolygon, breakpoints: Optional[Sequence[float]] = None
) -> DiskBoundaryMap:
    """
    Piecewise-linear homeomorphism of the circle onto a polygon boundary.

    Vertex k is reached at ``breakpoints[k]``; by default the parameter is
    proportional to arc length with vertex 0 at theta = -pi.
    """
    pts = polygon.vertices
    m = pts.shape[0]
    if breakpoints is None:
        edges = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
        cumulative = np.concatenate([[0.0], np.cumsum(edges)])
        angles = -np.pi + 2.0 * np.pi * cumulative[:-1] / cumulative[-1]
    else:
        angles = np.asarray(breakpoints, dtype=np.float64)
        if angles.shape != (m,) or not np.all(np.diff(angles) > 0) or abs(angles[0] + np.pi) > 1e-12:
            raise InvalidBoundaryMap("Breakpoints must increase from -pi, one per vertex")
        if angles[-1] >= np.pi:
            raise InvalidBoundaryMap("Breakpoints must lie in [-pi, pi)")
    ends = np.append(angles[1:], np.pi)
    pieces = []
    for k in range(m):
        p, q = pts[k], pts[(k + 1) % m]
        width = ends[k] - angles[k]
        slope = (q - p) / width
        pieces.append(
            PolyPiece(
                start=float(angles[k]),
                end=float(ends[k]),
                coeffs_x=(float(p[0]), float(slope[0])),
                coeffs_y=(float(p[1]), float(slope[1])),
            )
        )
    return DiskBoundaryMap(pieces=tuple(pieces))


def slowed_polygon_map(polygon: TargetPolygon, a: int, b: int, s: float) -> DiskBoundaryMap:
    """
    Homeomorphism of the circle onto the polygon boundary that sends theta = 0
    to vertex a, theta = pi to vertex b, and lingers near both for small s.
    """
    pts = np.roll(polygon.vertices, -a, axis=0)
    m = pts.shape[0]
    b_local = (b - a) % m
    edges = np.hypot(*(np.roll(pts, -1, axis=0) - pts).T)
    sigma = np.concatenate([[0.0], np.cumsum(edges)])
    length = float(sigma[-1])
    law = SlowdownLaw(sigma_b=float(sigma[b_local]), length=length, s=s)

    junctions = [(law.theta_of(float(sigma[k])), k) for k in range(m)]
    junctions.sort()
    pieces = []
    for idx, (theta, k) in enumerate(junctions):
        end = junctions[idx + 1][0] if idx + 1 < len(junctions) else np.pi
        p, q = pts[k], pts[(k + 1) % m]
        pieces.append(
            EdgeTanhPiece(
                start=float(theta),
                end=float(end),
                p=(float(p[0]), float(p[1])),
                q=(float(q[0]), float(q[1])),
                sigma_p=float(sigma[k]),
                law=law,
            )
        )
    return DiskBoundaryMap(pieces=tuple(pieces))


# Core operations


def poisson_extend(
    gamma: DiskBoundaryMap, point: Tuple[float, float], m: Optional[int] = None
) -> np.ndarray:
    """
    phi at the disk point (nu, theta) by the Poisson integral.

    Raises:
        BoundaryPoint: nu outside (0, 1]
        QuadratureTooCoarse: m is given and below 64
    """
    nu, theta = point
    return PoissonExtender(gamma, m).value(nu, np.array([theta]))[0]


def boundary_derivatives(
    gamma: DiskBoundaryMap, theta: float, h: Optional[float] = None
) -> Dict[str, np.ndarray]:
    """gamma, its one-sided derivatives and d phi / d nu at a boundary angle."""
    thetas = np.array([theta])
    return {
        "value": gamma.value(thetas)[0],
        "d_minus": gamma.derivative_minus(thetas)[0],
        "d_plus": gamma.derivative_plus(thetas)[0],
        "d_nu": PoissonExtender(gamma).normal_derivative(thetas, h)[0],
    }


def _scan_angles(gamma: DiskBoundaryMap, samples: int) -> Array:
    uniform = -np.pi + 2.0 * np.pi * np.arange(samples) / samples
    return np.unique(np.concatenate([uniform, wrap_angle(gamma.singular_set)]))


def _cross(u: Array, v: Array) -> Array:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def cone_condition_scan(
    gamma: DiskBoundaryMap, samples: int = 256, h: Optional[float] = None
) -> ConeScanResult:
    """
    Sample the boundary cone condition <(d phi / d nu)_perp, gamma'_+-> > 0.

    The sample set always contains the singular set, where both one-sided
    derivatives are tested.
    """
    thetas = _scan_angles(gamma, samples)
    with LogContext(logger, operation="cone_condition_scan", samples=thetas.shape[0]) as log:
        z = PoissonExtender(gamma).normal_derivative(thetas, h)
        m_minus = _cross(gamma.derivative_minus(thetas), z)
        m_plus = _cross(gamma.derivative_plus(thetas), z)
        result = ConeScanResult(
            thetas=thetas,
            margins=np.minimum(m_minus, m_plus),
            normal_derivatives=z,
            singular=np.isin(thetas, wrap_angle(gamma.singular_set)),
        )
        theta, margin = result.worst
        log.info("cone_scan_done", passes=result.passes, worst_theta=theta, worst_margin=margin)
        if result.min_normal_norm < 1e-12:
            log.warning("normal_derivative_vanishes", min_norm=result.min_normal_norm)
    return result


def sample_grid(
    gamma: DiskBoundaryMap, angles: Optional[int] = None, radii: Optional[int] = None
) -> DiskSample:
    """phi and its polar derivatives on rings nu = 1/R, 2/R, ..., 1."""
    angles = angles or settings.DISK_GRID_ANGLES
    radii = radii or settings.DISK_GRID_RADII
    thetas = -np.pi + 2.0 * np.pi * np.arange(angles) / angles
    nus = np.arange(1, radii + 1) / radii
    ext = PoissonExtender(gamma)
    values = np.empty((radii, angles, 2))
    d_nu = np.empty_like(values)
    d_theta = np.empty_like(values)
    for i, nu in enumerate(nus):
        values[i] = ext.value(nu, thetas)
        d_theta[i] = ext.d_theta(nu, thetas)
        if nu >= settings.KERNEL_DERIVATIVE_MIN_NU:
            d_nu[i] = ext.d_nu(nu, thetas)
        else:
            step = nu / 4.0
            d_nu[i] = (ext.value(nu + step, thetas) - ext.value(nu - step, thetas)) / (2.0 * step)
    return DiskSample(nus=nus, thetas=thetas, values=values, d_nu=d_nu, d_theta=d_theta)


def _ring_images(ext: PoissonExtender, nus: Array, thetas: Array) -> Array:
    rows = []
    for nu in nus:
        rows.append(ext.gamma.value(thetas) if nu == 0 else ext.value(nu, thetas))
    return np.stack(rows)


def _outside_distance(points: Array, polygon: Array) -> Array:
    """Distance from each point to the polygon boundary."""
    a = polygon
    b = np.roll(polygon, -1, axis=0)
    ab = b - a
    ap = points[:, None, :] - a[None, :, :]
    t = np.clip(np.sum(ap * ab, axis=2) / np.sum(ab * ab, axis=1), 0.0, 1.0)
    closest = a[None, :, :] + t[..., None] * ab[None, :, :]
    return np.hypot(*(points[:, None, :] - closest).transpose(2, 0, 1)).min(axis=1)


def rkc_check(
    gamma: DiskBoundaryMap,
    polygon: Optional[TargetPolygon] = None,
    angles: Optional[int] = None,
    radii: Optional[int] = None,
) -> InjectivityReport:
    """
    Sampled injectivity of the harmonic extension.

    The polar grid is split into triangles; every image triangle must keep
    the orientation of its source triangle. With a polygon, image samples
    must not lie outside it by more than a diameter-scaled tolerance.
    """
    angles = angles or settings.DISK_GRID_ANGLES
    radii = radii or settings.DISK_GRID_RADII
    thetas = -np.pi + 2.0 * np.pi * np.arange(angles) / angles
    nus = np.arange(radii) / radii
    ext = PoissonExtender(gamma)
    images = _ring_images(ext, nus, thetas)
    center_image = ext.value(1.0, np.array([0.0]))[0]

    rho = (1.0 - nus)[:, None]
    source = np.stack([rho * np.cos(thetas), rho * np.sin(thetas)], axis=-1)

    def triangles(grid: Array, center: Array) -> Tuple[Array, Array, Array]:
        nxt = np.roll(grid, -1, axis=1)
        outer, outer_next = grid[:-1], nxt[:-1]
        inner, inner_next = grid[1:], nxt[1:]
        a = np.concatenate([outer.reshape(-1, 2), outer_next.reshape(-1, 2), grid[-1]])
        b = np.concatenate([outer_next.reshape(-1, 2), inner_next.reshape(-1, 2), nxt[-1]])
        c = np.concatenate(
            [inner.reshape(-1, 2), inner.reshape(-1, 2), np.repeat(center[None, :], angles, axis=0)]
        )
        return a, b, c

    sa, sb, sc = triangles(source, np.zeros(2))
    ia, ib, ic = triangles(images, center_image)
    src_sign = orient2d_batch(sa, sb, sc)
    img_sign = orient2d_batch(ia, ib, ic)
    flipped = int(np.count_nonzero(img_sign != src_sign))

    src_area = _cross(sb - sa, sc - sa)
    img_area = _cross(ib - ia, ic - ia)
    ratio = float(np.min(img_area / src_area))

    outside = 0
    if polygon is not None:
        pts = np.concatenate([images[1:].reshape(-1, 2), center_image[None, :]])
        tol = 1e-9 * polygon.diameter()
        far = _outside_distance(pts, polygon.vertices) > tol
        inside = Path(polygon.vertices).contains_points(pts)
        outside = int(np.count_nonzero(far & ~inside))

    report = InjectivityReport(
        triangles=int(src_sign.shape[0]), flipped=flipped, outside=outside, worst_area_ratio=ratio
    )
    logger.info("rkc_check_done", passes=report.passes, flipped=flipped, outside=outside)
    return report


def an_check(
    gamma: DiskBoundaryMap, samples: int = 128, h: Optional[float] = None
) -> DeterminantAgreement:
    """
    Compare the boundary cone verdict with the sign of the Jacobian
    determinant of phi just inside the boundary, at smooth sample angles.

    In polar coordinates (nu, theta) the source frame is negatively
    oriented, so det D phi > 0 iff cross(d phi / d theta, d phi / d nu) > 0.
    """
    h = settings.DERIVATIVE_STEP if h is None else h
    thetas = -np.pi + 2.0 * np.pi * (np.arange(samples) + 0.5) / samples
    singular = wrap_angle(gamma.singular_set)
    if singular.size:
        gap = np.abs(wrap_angle(thetas[:, None] - singular[None, :])).min(axis=1)
        thetas = thetas[gap > 4 * h]
    ext = PoissonExtender(gamma)
    z = ext.normal_derivative(thetas, h)
    cone = _cross(gamma.derivative_plus(thetas), z) > 0
    det = _cross(ext.d_theta(h, thetas), ext.d_nu(h, thetas))
    result = DeterminantAgreement(thetas=thetas, det_signs=np.sign(det), cone_passes=cone)
    logger.info("an_check_done", samples=thetas.shape[0], agree=result.agree)
    return result


# Choquet family


def _exterior_chord(polygon: TargetPolygon) -> Tuple[int, int]:
    """Two vertices whose connecting segment leaves the polygon."""
    pts = polygon.vertices
    m = pts.shape[0]
    labels = classify_boundary_vertices(polygon)
    for k in range(m):
        if labels[k] is VertexClass.STRICTLY_REFLEX:
            a, b = (k - 1) % m, (k + 1) % m
            if point_in_polygon((pts[a] + pts[b]) / 2.0, pts) < 0:
                return a, b
    for a in range(m):
        for b in range(a + 2, m):
            if (b + 1) % m == a:
                continue
            if point_in_polygon((pts[a] + pts[b]) / 2.0, pts) < 0:
                return a, b
    raise NoReflexChord()


def _find_witness(gamma: DiskBoundaryMap, polygon: TargetPolygon, s: float, angles: int) -> Optional[Witness]:
    ext = PoissonExtender(gamma)
    thetas = -np.pi + 2.0 * np.pi * np.arange(angles) / angles
    for nu in (1.0, 0.75, 0.5, 0.25, 0.125):
        sampled = thetas[:1] if nu == 1.0 else thetas
        images = ext.value(nu, sampled)
        for theta, image in zip(sampled, images):
            if point_in_polygon(image, polygon.vertices) < 0:
                return Witness(s=s, nu=nu, theta=float(theta), image=(float(image[0]), float(image[1])))
    return None


def choquet_counterexample(
    polygon: TargetPolygon,
    a: Optional[int] = None,
    b: Optional[int] = None,
    slowdowns: Optional[Sequence[float]] = None,
    samples: int = 256,
    angles: int = 64,
) -> ChoquetResult:
    """
    Search the slowdown family of boundary homeomorphisms onto a non-convex
    polygon for one whose harmonic extension leaves the polygon.

    Slowdowns are tried in order (default 1, 1/2, ..., 2^-20). For the first
    map with a witness, the boundary cone scan is attached.

    Raises:
        NoReflexChord: Every chord between polygon vertices is interior
    """
    if a is None or b is None:
        a, b = _exterior_chord(polygon)
    values = list(slowdowns) if slowdowns is not None else [2.0**-k for k in range(21)]
    tried: List[float] = []
    with LogContext(logger, operation="choquet_counterexample", a=a, b=b) as log:
        for s in values:
            tried.append(s)
            gamma = slowed_polygon_map(polygon, a, b, s)
            witness = _find_witness(gamma, polygon, s, angles)
            if witness is not None:
                scan = cone_condition_scan(gamma, samples=samples)
                log.info("choquet_witness_found", s=s, nu=witness.nu, theta=witness.theta)
                return ChoquetResult(a, b, tuple(tried), witness, gamma, scan)
        log.warning("choquet_no_witness", tried=len(tried))
    return ChoquetResult(a, b, tuple(tried), None, None, None)


# Monotonicity transfer


def _family(name: str) -> Tuple[Callable[[Array], Array], float, float]:
    families: Dict[str, Tuple[Callable[[Array], Array], float, float]] = {
        "linear": (lambda t: wrap_angle(t), 1.0, np.pi / 2),
        "sine": (np.sin, float(np.cos(np.pi / 4)), np.pi / 4),
        "tanh_sine": (lambda t: np.tanh(3.0 * np.sin(t)), 1.0, 0.3),
    }
    if name not in families:
        raise ValueError(f"Unknown monotone family {name!r}; choose from {sorted(families)}")
    return families[name]


def monotonicity_family(name: str) -> Tuple[Callable[[Array], Array], float, float]:
    """Boundary function, slope c and window delta of a named test family."""
    return _family(name)


def monotonicity_check(
    f: Callable[[Array], Array],
    c: float,
    delta: float,
    radii: Optional[Sequence[float]] = None,
    samples: int = 257,
    m: Optional[int] = None,
) -> MonotonicityReport:
    """
    Check that monotone boundary data stay monotone near the boundary.

    Hypothesis: f(t) - f(s) >= c (t - s) for s < t in [-delta, delta].
    Conclusion at radius r: F(r e^{it}) - F(r e^{is}) >= (c / 2)(t - s) for
    s < t in [-delta / 8, delta / 8]. On a sample grid both reduce to
    consecutive differences of f - c t (or F - c t / 2) being non-negative.
    Also reports the Lipschitz constant of f on the circle and of F on
    each ring.

    Raises:
        HypothesisViolated: f breaks the slope bound on the window
    """
    window = np.linspace(-delta, delta, samples)
    g = f(window) - c * window
    steps = np.diff(g)
    bad = np.flatnonzero(steps < -1e-12)
    if bad.size:
        k = int(bad[0])
        raise HypothesisViolated(float(window[k]), float(window[k + 1]), float(steps[k]))

    radii_arr = np.asarray(radii if radii is not None else np.linspace(0.6, 0.99, 14), dtype=np.float64)
    inner = np.linspace(-delta / 8, delta / 8, samples)
    circle = -np.pi + 2.0 * np.pi * np.arange(4096) / 4096
    f_circle = f(circle)
    lip_f = float(np.max(np.abs(np.diff(np.append(f_circle, f_circle[0]))) / (2.0 * np.pi / 4096)))

    holds = []
    lip_F = []
    for r in radii_arr:
        F = poisson_extend_scalar(f, float(r), inner, m)
        holds.append(bool(np.all(np.diff(F - 0.5 * c * inner) >= -1e-12)))
        ring = poisson_extend_scalar(f, float(r), circle, m)
        lip_F.append(float(np.max(np.abs(np.diff(np.append(ring, ring[0]))) / (2.0 * np.pi / 4096))))

    empirical = None
    for k in range(len(radii_arr) - 1, -1, -1):
        if not holds[k]:
            break
        empirical = float(radii_arr[k])
    report = MonotonicityReport(
        c=c,
        delta=delta,
        radii=radii_arr,
        holds=tuple(holds),
        empirical_radius=empirical,
        lipschitz_boundary=lip_f,
        lipschitz_extension=tuple(lip_F),
    )
    logger.info("monotonicity_checked", empirical_radius=empirical, holds=sum(holds))
    return report


# Diameter profile


def diameter_profile_audit(xs: Optional[Sequence[float]] = None) -> ProfileAudit:
    """
    Measure the harmonic extension of the indicator of the right half
    circle along the horizontal diameter and compare it with
    1/2 + kappa * arctan(x) for kappa = 2/pi and kappa = 1/pi.
    """
    xs_arr = np.asarray(xs if xs is not None else np.linspace(-0.9, 0.9, 37), dtype=np.float64)
    measured = np.array(
        [
            poisson_extend_interval(abs(x), 0.0 if x >= 0 else np.pi, -np.pi / 2, np.pi / 2, nodes=4096)
            for x in xs_arr
        ]
    )
    atan = np.arctan(xs_arr)
    mask = atan != 0
    kappa = float(np.sum((measured[mask] - 0.5) * atan[mask]) / np.sum(atan[mask] ** 2))
    errors = {
        "2/pi": float(np.max(np.abs(measured - (0.5 + 2.0 / np.pi * atan)))),
        "1/pi": float(np.max(np.abs(measured - (0.5 + 1.0 / np.pi * atan)))),
    }
    audit = ProfileAudit(xs=xs_arr, measured=measured, kappa_fit=kappa, max_errors=errors)
    logger.info("diameter_profile_audited", kappa=kappa, best=audit.best, errors=errors)
    return audit


__all__ = [
    "an_check",
    "boundary_derivatives",
    "choquet_counterexample",
    "circle_map",
    "cone_condition_scan",
    "diameter_profile_audit",
    "monotonicity_check",
    "monotonicity_family",
    "poisson_extend",
    "polygon_map",
    "rkc_check",
    "sample_grid",
    "slowed_polygon_map",
    "trig_map",
]
