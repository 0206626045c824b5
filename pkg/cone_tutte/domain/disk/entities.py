"""
Continuous boundary maps of the unit disk and results of Poisson-kernel
experiments.

A disk point is addressed as (nu, theta) with position (1 - nu) e^{i theta};
nu = 0 is the boundary circle and theta lives in [-pi, pi).
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from numpy.typing import NDArray

from cone_tutte.core.exceptions import InvalidBoundaryMap

Array = NDArray[np.float64]
TWO_PI = 2.0 * np.pi


def wrap_angle(theta: Union[float, Array]) -> Array:
    """Map angles into [-pi, pi)."""
    return np.mod(np.asarray(theta, dtype=np.float64) + np.pi, TWO_PI) - np.pi


@dataclass(frozen=True)
class TrigPiece:
    """x(t) = sum_k cx_k cos kt + sx_k sin kt, likewise y, over the whole circle."""

    cos_x: Tuple[float, ...]
    sin_x: Tuple[float, ...]
    cos_y: Tuple[float, ...]
    sin_y: Tuple[float, ...]
    start: float = -np.pi
    end: float = np.pi
    kind: str = "trig"

    def _series(self, theta: Array, derivative: bool) -> Array:
        theta = np.asarray(theta, dtype=np.float64)
        out = np.zeros(theta.shape + (2,))
        for axis, (ca, sa) in enumerate(((self.cos_x, self.sin_x), (self.cos_y, self.sin_y))):
            width = max(len(ca), len(sa))
            for k in range(width):
                a = ca[k] if k < len(ca) else 0.0
                b = sa[k] if k < len(sa) else 0.0
                if derivative:
                    out[..., axis] += k * (-a * np.sin(k * theta) + b * np.cos(k * theta))
                else:
                    out[..., axis] += a * np.cos(k * theta) + b * np.sin(k * theta)
        return out

    def value(self, theta: Array) -> Array:
        return self._series(theta, derivative=False)

    def derivative(self, theta: Array) -> Array:
        return self._series(theta, derivative=True)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "start": self.start,
            "end": self.end,
            "cos_x": list(self.cos_x),
            "sin_x": list(self.sin_x),
            "cos_y": list(self.cos_y),
            "sin_y": list(self.sin_y),
        }


@dataclass(frozen=True)
class PolyPiece:
    """Polynomial in s = theta - start on [start, end)."""

    start: float
    end: float
    coeffs_x: Tuple[float, ...]
    coeffs_y: Tuple[float, ...]
    kind: str = "poly"

    def value(self, theta: Array) -> Array:
        s = np.asarray(theta, dtype=np.float64) - self.start
        return np.stack([Polynomial(self.coeffs_x)(s), Polynomial(self.coeffs_y)(s)], axis=-1)

    def derivative(self, theta: Array) -> Array:
        s = np.asarray(theta, dtype=np.float64) - self.start
        return np.stack(
            [Polynomial(self.coeffs_x).deriv()(s), Polynomial(self.coeffs_y).deriv()(s)], axis=-1
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "start": self.start,
            "end": self.end,
            "coeffs_x": list(self.coeffs_x),
            "coeffs_y": list(self.coeffs_y),
        }


@dataclass(frozen=True)
class SlowdownLaw:
    """Monotone arc-length law that lingers near two antipodal parameters.

    theta = 0 maps to arc length 0 and theta = +-pi to ``sigma_b``. With
    u = theta / pi the law is sigma = sigma_b h(u) on [0, 1] and
    sigma = length - (length - sigma_b) h(-u) on [-1, 0), where
    h(u) = (tanh((u - 1/2) / s) + T) / (2T), T = tanh(1 / (2s)).
    Small s keeps sigma near 0 for |theta| < pi/2 and near sigma_b beyond.
    """

    sigma_b: float
    length: float
    s: float

    @property
    def _t(self) -> float:
        return float(np.tanh(0.5 / self.s))

    def _h(self, u: Array) -> Array:
        return (np.tanh((u - 0.5) / self.s) + self._t) / (2.0 * self._t)

    def _dh(self, u: Array) -> Array:
        return 1.0 / (np.cosh((u - 0.5) / self.s) ** 2 * 2.0 * self._t * self.s)

    def sigma(self, theta: Array, lower: bool) -> Array:
        """Arc length; ``lower`` selects the branch for theta in [-pi, 0]."""
        u = np.abs(np.asarray(theta, dtype=np.float64)) / np.pi
        if lower:
            return self.length - (self.length - self.sigma_b) * self._h(u)
        return self.sigma_b * self._h(u)

    def dsigma(self, theta: Array, lower: bool) -> Array:
        u = np.abs(np.asarray(theta, dtype=np.float64)) / np.pi
        scale = self.length - self.sigma_b if lower else self.sigma_b
        return scale * self._dh(u) / np.pi

    def theta_of(self, sigma: float) -> float:
        """Parameter in [-pi, pi) reaching the given arc length."""
        if sigma == 0.0 or sigma == self.length:
            return 0.0
        if sigma == self.sigma_b:
            return -np.pi
        t = self._t
        if sigma < self.sigma_b:
            h = sigma / self.sigma_b
            return float(np.pi * (0.5 + self.s * np.arctanh(t * (2.0 * h - 1.0))))
        h = (self.length - sigma) / (self.length - self.sigma_b)
        return float(-np.pi * (0.5 + self.s * np.arctanh(t * (2.0 * h - 1.0))))


@dataclass(frozen=True)
class EdgeTanhPiece:
    """Point moving along the polygon edge p -> q at the pace of a SlowdownLaw."""

    start: float
    end: float
    p: Tuple[float, float]
    q: Tuple[float, float]
    sigma_p: float
    law: SlowdownLaw
    kind: str = "edge_tanh"

    @property
    def _unit(self) -> Array:
        d = np.asarray(self.q) - np.asarray(self.p)
        return d / np.hypot(*d)

    @property
    def _lower(self) -> bool:
        return self.start < 0

    def _local_sigma(self, theta: Array) -> Array:
        return self.law.sigma(theta, self._lower) - self.sigma_p

    def value(self, theta: Array) -> Array:
        offset = self._local_sigma(theta)
        return np.asarray(self.p) + offset[..., None] * self._unit

    def derivative(self, theta: Array) -> Array:
        return self.law.dsigma(theta, self._lower)[..., None] * self._unit

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "start": self.start,
            "end": self.end,
            "p": list(self.p),
            "q": list(self.q),
            "sigma_p": self.sigma_p,
            "law": {"sigma_b": self.law.sigma_b, "length": self.law.length, "s": self.law.s},
        }


BoundaryPiece = Union[TrigPiece, PolyPiece, EdgeTanhPiece]


@dataclass(frozen=True)
class DiskBoundaryMap:
    """Piecewise-smooth closed curve gamma: [-pi, pi) -> R^2.

    Pieces are contiguous and ordered; their junctions form the singular set
    where one-sided derivatives may differ.
    """

    pieces: Tuple[BoundaryPiece, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise InvalidBoundaryMap("A boundary map needs at least one piece")
        if abs(self.pieces[0].start + np.pi) > 1e-12 or abs(self.pieces[-1].end - np.pi) > 1e-12:
            raise InvalidBoundaryMap("Pieces must cover [-pi, pi)")
        scale = 1.0
        for prev, nxt in zip(self.pieces, self.pieces[1:]):
            if not prev.start < prev.end or abs(prev.end - nxt.start) > 1e-12:
                raise InvalidBoundaryMap(f"Pieces are not contiguous at {prev.end}")
        for k, piece in enumerate(self.pieces):
            nxt = self.pieces[(k + 1) % len(self.pieces)]
            end_value = piece.value(np.array([piece.end]))[0]
            start_value = nxt.value(np.array([nxt.start]))[0]
            scale = max(scale, float(np.abs(end_value).max()))
            if np.hypot(*(end_value - start_value)) > 1e-9 * scale:
                raise InvalidBoundaryMap(f"Boundary map jumps at theta={piece.end:.6g}")

    @property
    def starts(self) -> Array:
        return np.array([p.start for p in self.pieces])

    @property
    def singular_set(self) -> Array:
        """Junction angles (empty for a single periodic piece)."""
        if len(self.pieces) == 1:
            return np.zeros(0)
        return self.starts

    @property
    def is_periodic_smooth(self) -> bool:
        return len(self.pieces) == 1 and isinstance(self.pieces[0], TrigPiece)

    def _dispatch(self, theta: Array, side: str) -> Tuple[Array, Array]:
        theta = wrap_angle(theta)
        idx = np.searchsorted(self.starts, theta, side=side) - 1
        if side == "left":
            # theta exactly at a junction (or at -pi) belongs to the piece before it
            wrapped = idx < 0
            idx = np.where(wrapped, len(self.pieces) - 1, idx)
            theta = np.where(wrapped, np.pi, theta)
        return theta, np.clip(idx, 0, len(self.pieces) - 1)

    def _evaluate(self, theta: Array, side: str, derivative: bool) -> Array:
        flat = np.atleast_1d(np.asarray(theta, dtype=np.float64)).ravel()
        local, idx = self._dispatch(flat, side)
        out = np.zeros((flat.shape[0], 2))
        for k, piece in enumerate(self.pieces):
            mask = idx == k
            if np.any(mask):
                fn = piece.derivative if derivative else piece.value
                out[mask] = fn(local[mask])
        return out.reshape(np.shape(theta) + (2,))

    def value(self, theta: Array) -> Array:
        return self._evaluate(theta, "right", derivative=False)

    def derivative_plus(self, theta: Array) -> Array:
        return self._evaluate(theta, "right", derivative=True)

    def derivative_minus(self, theta: Array) -> Array:
        return self._evaluate(theta, "left", derivative=True)

    def to_dict(self) -> Dict[str, Any]:
        return {"pieces": [p.to_dict() for p in self.pieces]}


@dataclass(frozen=True)
class DiskSample:
    """Harmonic extension sampled on a polar grid (rows: nu, columns: theta)."""

    nus: Array
    thetas: Array
    values: Array
    d_nu: Array
    d_theta: Array

    def rows(self) -> Array:
        """Flat table nu, theta, x, y, dx/dnu, dy/dnu, dx/dtheta, dy/dtheta."""
        nu, theta = np.meshgrid(self.nus, self.thetas, indexing="ij")
        return np.column_stack(
            [
                nu.ravel(),
                theta.ravel(),
                self.values.reshape(-1, 2),
                self.d_nu.reshape(-1, 2),
                self.d_theta.reshape(-1, 2),
            ]
        )


@dataclass(frozen=True)
class ConeScanResult:
    """Boundary cone condition sampled around the circle."""

    thetas: Array
    margins: Array
    normal_derivatives: Array
    singular: Array

    @property
    def passes(self) -> bool:
        return bool(np.all(self.margins > 0))

    @property
    def worst(self) -> Tuple[float, float]:
        k = int(np.argmin(self.margins))
        return float(self.thetas[k]), float(self.margins[k])

    @property
    def min_normal_norm(self) -> float:
        return float(np.hypot(self.normal_derivatives[:, 0], self.normal_derivatives[:, 1]).min())

    @property
    def failing_thetas(self) -> Array:
        return self.thetas[self.margins <= 0]


@dataclass(frozen=True)
class Witness:
    """A disk point whose harmonic image lies strictly outside the target."""

    s: float
    nu: float
    theta: float
    image: Tuple[float, float]


@dataclass(frozen=True)
class ChoquetResult:
    a_index: int
    b_index: int
    tried: Tuple[float, ...]
    witness: Optional[Witness]
    boundary_map: Optional[DiskBoundaryMap]
    scan: Optional[ConeScanResult]


@dataclass(frozen=True)
class MonotonicityReport:
    c: float
    delta: float
    radii: Array
    holds: Tuple[bool, ...]
    empirical_radius: Optional[float]
    lipschitz_boundary: float
    lipschitz_extension: Tuple[float, ...]

    @property
    def lipschitz_holds(self) -> bool:
        return all(v <= self.lipschitz_boundary * (1 + 1e-6) + 1e-9 for v in self.lipschitz_extension)


@dataclass(frozen=True)
class InjectivityReport:
    """Sampled injectivity of the harmonic extension on a polar grid."""

    triangles: int
    flipped: int
    outside: int
    worst_area_ratio: float

    @property
    def passes(self) -> bool:
        return self.flipped == 0 and self.outside == 0


@dataclass(frozen=True)
class DeterminantAgreement:
    thetas: Array
    det_signs: Array
    cone_passes: Array

    @property
    def agree(self) -> bool:
        return bool(np.all((self.det_signs > 0) == self.cone_passes))


@dataclass(frozen=True)
class ProfileAudit:
    """Diameter profile of the harmonic extension of a half-circle indicator."""

    xs: Array
    measured: Array
    kappa_fit: float
    max_errors: Dict[str, float] = field(default_factory=dict)

    @property
    def best(self) -> str:
        return min(self.max_errors, key=self.max_errors.get)  # type: ignore[arg-type]
