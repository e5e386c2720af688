"""Brute-force area and volume of ``i_rho(T_R)`` from the defining integrals.

The inversion about the unit sphere at ``[rho, 0, 0]`` has conformal factor
``1/Q`` with ``Q = rho^2 - 2 rho x_1 + |x|^2``, so

    A = int int (R + sin v) / Q(u, v, 1)^2 du dv
    V = int_0^1 int int r (R + r sin v) / Q(u, v, r)^3 du dv dr

with ``x(u, v, r) = [(R + r sin v) cos u, (R + r sin v) sin u, r cos v]``.
Both angles use the periodic trapezoid rule; ``r`` uses Gauss-Legendre.

When the center approaches the torus the integrand peaks sharply at
``u = 0, v = -pi/2``. Each angle is then reparametrized by the circle
diffeomorphism ``t -> c + 2 arctan(eps tan(t/2))``, which keeps the integrand
smooth and periodic but spreads the peak over more nodes. ``eps`` is picked from
the distance of the nearest complex singularity to the real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence, SingularIntegrand


@dataclass(frozen=True)
class InvertedTorusIntegrand:
    """Inversion of T_R (minor radius 1) about the unit sphere at ``[rho, 0, 0]``."""

    R: float
    rho: float

    def __post_init__(self):
        if not self.R > 1.0:
            raise DomainError(f"R must exceed 1, got {self.R!r}")
        if not 0.0 <= self.rho < self.R - 1.0:
            raise DomainError(f"rho must lie in [0, R-1) = [0, {self.R - 1}), got {self.rho!r}")

    def point(self, u, v, r=1.0):
        w = self.R + r * np.sin(v)
        return np.stack([w * np.cos(u), w * np.sin(u), r * np.cos(v)])

    def Q(self, u, v, r=1.0):
        """Reciprocal conformal factor ``rho^2 - 2 rho x_1 + |x|^2``."""
        R, z = self.R, self.rho
        w = R + r * np.sin(v)
        norm2 = R * R + r * r + 2.0 * R * r * np.sin(v)
        return z * z - 2.0 * z * w * np.cos(u) + norm2

    def singularity_depths(self, r: float = 1.0) -> tuple[float, float]:
        """Imaginary distance of the nearest zero of Q in u (at v = -pi/2) and in v (at u = 0)."""
        R, z = self.R, self.rho
        w = R - z
        depth_v = math.acosh((w * w + r * r) / (2.0 * r * w))
        if z == 0.0:
            return math.inf, depth_v
        depth_u = math.acosh((z * z + (R - r) ** 2) / (2.0 * z * (R - r)))
        return depth_u, depth_v


@dataclass(frozen=True)
class QuadratureSpec:
    n_angular: int = 256
    n_radial: int = 64
    target_tol: float = 1e-10
    cluster: bool = True

    def __post_init__(self):
        if self.n_angular < 8 or self.n_angular % 2:
            raise DomainError(f"n_angular must be an even integer >= 8, got {self.n_angular}")
        if self.n_radial < 4:
            raise DomainError(f"n_radial must be >= 4, got {self.n_radial}")
        if not self.target_tol > 0:
            raise DomainError(f"target_tol must be positive, got {self.target_tol}")

    def refined(self) -> QuadratureSpec:
        return QuadratureSpec(2 * self.n_angular, 2 * self.n_radial, self.target_tol, self.cluster)


def _stretch(depth: float) -> float:
    # balances the pulled-in singularity against the map's own poles at t = pi +- 2i artanh(eps)
    return 1.0 if math.isinf(depth) else min(1.0, math.sqrt(math.tanh(depth / 2.0)))


def periodic_nodes(n: int, center: float = 0.0, eps: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Trapezoid nodes and weights on a full period, clustered at ``center`` when eps < 1."""
    t = -math.pi + 2.0 * math.pi * np.arange(n) / n
    half = t / 2.0
    nodes = center + 2.0 * np.arctan(eps * np.tan(half))
    jac = eps / (np.cos(half) ** 2 + eps * eps * np.sin(half) ** 2)
    return nodes, jac * (2.0 * math.pi / n)


def _angular_sum(spec: InvertedTorusIntegrand, q: QuadratureSpec, r: float, power: int) -> float:
    eps_u = eps_v = 1.0
    if q.cluster:
        depth_u, depth_v = spec.singularity_depths(r)
        eps_u, eps_v = _stretch(depth_u), _stretch(depth_v)
    u, wu = periodic_nodes(q.n_angular, 0.0, eps_u)
    v, wv = periodic_nodes(q.n_angular, -math.pi / 2.0, eps_v)
    Q = spec.Q(u[:, None], v[None, :], r)
    if not np.all(np.isfinite(Q)) or Q.min() <= 0.0:
        raise SingularIntegrand(f"Q vanishes on the grid for R={spec.R}, rho={spec.rho}, r={r}")
    jac = spec.R + r * np.sin(v)
    return float(wu @ (jac[None, :] / Q**power) @ wv)


def area_oracle(spec: InvertedTorusIntegrand, q: QuadratureSpec = QuadratureSpec()) -> float:
    return _angular_sum(spec, q, 1.0, 2)


def volume_oracle(spec: InvertedTorusIntegrand, q: QuadratureSpec = QuadratureSpec()) -> float:
    x, w = np.polynomial.legendre.leggauss(q.n_radial)
    radii = (x + 1.0) / 2.0
    return float(sum(wi / 2.0 * r * _angular_sum(spec, q, r, 3) for r, wi in zip(radii, w)))


def iso_oracle(spec: InvertedTorusIntegrand, q: QuadratureSpec = QuadratureSpec()) -> float:
    return 6.0 * math.sqrt(math.pi) * volume_oracle(spec, q) / area_oracle(spec, q) ** 1.5


@dataclass(frozen=True)
class ConvergenceRow:
    n_angular: int
    n_radial: int
    area: float
    volume: float
    iso: float
    delta: float  # max relative change of area and volume against the previous row


def convergence_report(
    spec: InvertedTorusIntegrand,
    q: QuadratureSpec = QuadratureSpec(n_angular=16, n_radial=8),
    max_n_angular: int = 1024,
) -> list[ConvergenceRow]:
    """Double both resolutions until successive results agree to ``q.target_tol``."""
    rows: list[ConvergenceRow] = []
    while True:
        area, vol = area_oracle(spec, q), volume_oracle(spec, q)
        delta = math.inf
        if rows:
            delta = max(abs(area / rows[-1].area - 1.0), abs(vol / rows[-1].volume - 1.0))
        iso = 6.0 * math.sqrt(math.pi) * vol / area**1.5
        rows.append(ConvergenceRow(q.n_angular, q.n_radial, area, vol, iso, delta))
        if delta < q.target_tol:
            return rows
        if q.n_angular >= max_n_angular:
            raise NoConvergence(
                f"quadrature for R={spec.R}, rho={spec.rho} not within {q.target_tol} "
                f"at n_angular={q.n_angular}; last delta {delta:.3e}"
            )
        q = q.refined()
