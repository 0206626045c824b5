"""
Poisson-kernel quadrature on the unit disk.

Smooth periodic data use the periodic trapezoid rule, which converges
geometrically. Piecewise data use composite Gauss-Legendre panels split at
the junctions. Node counts grow like M0 / nu so the kernel peak of width
about nu stays resolved near the boundary.
"""

import math
from functools import lru_cache
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from cone_tutte.config import settings
from cone_tutte.core.exceptions import BoundaryPoint, QuadratureTooCoarse
from cone_tutte.domain.disk.entities import TWO_PI, Array, DiskBoundaryMap

_PANEL_ORDER = 16
MIN_NODES = 64
_CHUNK_ENTRIES = 4_000_000


@lru_cache(maxsize=8)
def _gauss_legendre(order: int) -> Tuple[Array, Array]:
    return leggauss(order)


def poisson_kernel(r: float, x: Array) -> Array:
    """P_r(x) = (1 - r^2) / (1 - 2 r cos x + r^2)."""
    return (1.0 - r * r) / (1.0 - 2.0 * r * np.cos(x) + r * r)


def poisson_kernel_dr(r: float, x: Array) -> Array:
    denom = 1.0 - 2.0 * r * np.cos(x) + r * r
    return (-2.0 * r * denom - (1.0 - r * r) * (2.0 * r - 2.0 * np.cos(x))) / denom**2


def poisson_kernel_dx(r: float, x: Array) -> Array:
    denom = 1.0 - 2.0 * r * np.cos(x) + r * r
    return -(1.0 - r * r) * 2.0 * r * np.sin(x) / denom**2


def node_count(nu: float, m: Optional[int] = None) -> int:
    """M = clip(ceil(M0 / nu), M0, M_max), or an explicit override of at least 64."""
    if m is not None:
        if int(m) < MIN_NODES:
            raise QuadratureTooCoarse(int(m), MIN_NODES)
        return int(m)
    m0 = settings.QUADRATURE_M0
    return int(min(max(math.ceil(m0 / nu), m0), settings.QUADRATURE_M_MAX))


def trapezoid_nodes(m: int) -> Tuple[Array, Array]:
    nodes = -np.pi + TWO_PI * np.arange(m) / m
    return nodes, np.full(m, TWO_PI / m)


def panel_nodes(a: float, b: float, total: int) -> Tuple[Array, Array]:
    """Composite Gauss-Legendre nodes on [a, b] with about ``total`` nodes."""
    panels = max(1, math.ceil(total / _PANEL_ORDER))
    x, wts = _gauss_legendre(_PANEL_ORDER)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * wts[None, :]).ravel()
    return nodes, weights


class PoissonExtender:
    """Harmonic extension of a DiskBoundaryMap by the Poisson integral.

    Quadrature rules are built once per node count and cached.
    """

    def __init__(self, gamma: DiskBoundaryMap, m: Optional[int] = None) -> None:
        self.gamma = gamma
        self.m = m
        self._rules: Dict[int, Tuple[Array, Array, Array]] = {}

    def rule(self, nu: float) -> Tuple[Array, Array, Array]:
        """Nodes, weights (summing to 2 pi) and gamma at the nodes."""
        m = node_count(nu, self.m)
        if m not in self._rules:
            if self.gamma.is_periodic_smooth:
                nodes, weights = trapezoid_nodes(m)
            else:
                parts = [
                    panel_nodes(p.start, p.end, max(_PANEL_ORDER, math.ceil(m * (p.end - p.start) / TWO_PI)))
                    for p in self.gamma.pieces
                ]
                nodes = np.concatenate([n for n, _ in parts])
                weights = np.concatenate([w for _, w in parts])
            self._rules[m] = (nodes, weights, self.gamma.value(nodes))
        return self._rules[m]

    def _apply(self, nu: float, thetas: Array, kernel: Callable[[float, Array], Array]) -> Array:
        if not 0.0 < nu <= 1.0:
            raise BoundaryPoint(nu)
        r = 1.0 - nu
        nodes, weights, values = self.rule(nu)
        thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
        out = np.empty((thetas.shape[0], 2))
        step = max(1, _CHUNK_ENTRIES // nodes.shape[0])
        for start in range(0, thetas.shape[0], step):
            block = thetas[start : start + step]
            k = kernel(r, block[:, None] - nodes[None, :]) * weights[None, :]
            out[start : start + step] = k @ values / TWO_PI
        return out

    def value(self, nu: float, thetas: Array) -> Array:
        """phi((1 - nu) e^{i theta}) for every theta."""
        return self._apply(nu, thetas, poisson_kernel)

    def d_nu(self, nu: float, thetas: Array) -> Array:
        """d phi / d nu from the differentiated kernel."""
        return -self._apply(nu, thetas, poisson_kernel_dr)

    def d_theta(self, nu: float, thetas: Array) -> Array:
        return self._apply(nu, thetas, poisson_kernel_dx)

    def normal_derivative(self, thetas: Array, h: Optional[float] = None) -> Array:
        """d phi / d nu at nu = 0 by one-sided differences and Richardson
        extrapolation over steps h and h / 2."""
        h = settings.DERIVATIVE_STEP if h is None else h
        thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
        base = self.gamma.value(thetas)
        coarse = (self.value(h, thetas) - base) / h
        fine = (self.value(h / 2, thetas) - base) / (h / 2)
        return 2.0 * fine - coarse


def poisson_extend_scalar(
    f: Callable[[Array], Array], r: float, thetas: Array, m: Optional[int] = None
) -> Array:
    """Trapezoid-rule Poisson integral of a scalar periodic function."""
    nu = 1.0 - r
    if not 0.0 < nu <= 1.0:
        raise BoundaryPoint(nu)
    nodes, weights = trapezoid_nodes(node_count(nu, m))
    values = f(nodes)
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    out = np.empty(thetas.shape[0])
    step = max(1, _CHUNK_ENTRIES // nodes.shape[0])
    for start in range(0, thetas.shape[0], step):
        block = thetas[start : start + step]
        kernel = poisson_kernel(r, block[:, None] - nodes[None, :]) * weights
        out[start : start + step] = kernel @ values / TWO_PI
    return out


def poisson_extend_interval(r: float, theta: float, a: float, b: float, nodes: int = 1024) -> float:
    """(1 / 2 pi) * integral over [a, b] of P_r(theta - t) dt, by Gauss-Legendre panels."""
    t, w = panel_nodes(a, b, nodes)
    return float(np.sum(poisson_kernel(r, theta - t) * w) / TWO_PI)
