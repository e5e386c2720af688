"""Closed-form area, volume and isoperimetric ratio of ``i_z(T_R)``.

With ``x = 4z^2 / (R^2 - 1 - z^2)^2`` the area is a rational prefactor times
2F1(-1/2, -1/2; 1; x) and the volume a rational prefactor times the 3F2 volume
kernel. The isoperimetric ratio ``6 sqrt(pi) V / A^(3/2)`` then rises from
``3/(2 sqrt(pi R))`` at ``z = 0`` to 1 at ``z = R - 1``. This module also holds
the series-level checks of that monotonicity and the search for two distinct
shapes sharing one ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import bisect

from .errors import DomainError, OutOfRange, RejectSquare, ZeroDenominator
from .geometry import dual_params
from .hypergeom import DEFAULT_TOL, HGKernel, KernelKind, eval_2f1, eval_vol3f2
from .series import SeriesPoly

SPHERE_SWITCH = 1e-12
SQUARE_BAND = 1e-9
MONOTONE_END = 1e-6


@dataclass(frozen=True)
class IsoPoint:
    """A parameter pair ``(R, z)`` with its hypergeometric argument."""

    R: float
    z: float

    def __post_init__(self):
        if not self.R > 1.0:
            raise DomainError(f"R must exceed 1, got {self.R!r}")
        if not 0.0 <= self.z <= self.R - 1.0:
            raise DomainError(f"z must lie in [0, R-1] = [0, {self.R - 1}], got {self.z!r}")

    @property
    def x(self) -> float:
        return 4.0 * self.z**2 / (self.R**2 - 1.0 - self.z**2) ** 2

    @property
    def one_minus_x(self) -> float:
        """``1 - x`` without cancellation: ``((R-1)^2 - z^2)((R+1)^2 - z^2) / (R^2-1-z^2)^2``."""
        R, z = self.R, self.z
        return _boundary_product(R, z) / (R * R - 1.0 - z * z) ** 2


def _boundary_product(R, z):
    return (R - 1.0 - z) * (R - 1.0 + z) * (R + 1.0 - z) * (R + 1.0 + z)


def _open_point(R: float, z: float) -> IsoPoint:
    p = IsoPoint(float(R), float(z))
    if p.z >= p.R - 1.0:
        raise DomainError(f"z must lie in [0, R-1), got {z!r}")
    return p


def area_closed(R: float, z: float, tol: float = DEFAULT_TOL) -> float:
    """Area of ``i_z(T_R)`` for ``z`` in ``[0, R-1)``."""
    p = _open_point(R, z)
    R, z = p.R, p.z
    pre = 4.0 * math.pi**2 * R * ((R * R - 1.0) ** 2 - z**4) / _boundary_product(R, z) ** 2
    return pre * eval_2f1(-0.5, -0.5, 1.0, p.x, tol)


def volume_closed(R: float, z: float, tol: float = DEFAULT_TOL) -> float:
    """Enclosed volume of ``i_z(T_R)`` for ``z`` in ``[0, R-1)``."""
    p = _open_point(R, z)
    R, z = p.R, p.z
    pre = 2.0 * R * math.pi**2 * ((R * R - 1.0 - z * z) / _boundary_product(R, z)) ** 3
    return pre * eval_vol3f2(R, p.x, tol)


def iso_closed(R: float, z: float, tol: float = DEFAULT_TOL) -> float:
    """Isoperimetric ratio of ``i_z(T_R)``, ``z`` in ``[0, R-1]``; exactly 1 at the end."""
    p = IsoPoint(float(R), float(z))
    R, z = p.R, p.z
    if z == R - 1.0:
        # the x = 1 values below reduce to exactly 1 with q = 1/R
        return 1.0
    if p.one_minus_x < SPHERE_SWITCH:
        f_area = 4.0 / math.pi
        f_vol = 16.0 * R * R / (3.0 * math.pi)
    else:
        f_area = eval_2f1(-0.5, -0.5, 1.0, p.x, tol)
        f_vol = eval_vol3f2(R, p.x, tol)
    q = (R * R - 1.0 - z * z) / (R * R - 1.0 + z * z)
    return 3.0 / (2.0 * math.sqrt(math.pi * R)) * f_vol / f_area**1.5 * q**1.5


def iso_full_domain(R: float, rho: float, tol: float = DEFAULT_TOL) -> float:
    """Isoperimetric ratio of ``i_rho(T_R)`` for any ``rho`` in ``[0, sqrt(R^2-1)]``.

    Centers inside the solid torus (``rho > R-1``) are handled through the dual
    pair, which describes the same shape from outside.
    """
    R = float(R)
    if not R > 1.0:
        raise DomainError(f"R must exceed 1, got {R!r}")
    s = math.sqrt(R * R - 1.0)
    if not 0.0 <= rho <= s * (1 + 1e-15):
        raise DomainError(f"rho must lie in [0, sqrt(R^2-1)] = [0, {s}], got {rho!r}")
    if abs(rho - (R - 1.0)) <= SPHERE_SWITCH * R:
        return 1.0
    if rho < R - 1.0:
        return iso_closed(R, rho, tol)
    R2, rho2 = dual_params(R, rho)
    return iso_closed(R2, min(rho2, R2 - 1.0), tol)


def endpoint_iso(R: float) -> float:
    """Isoperimetric ratio of the inverted torus with center at the origin."""
    return 3.0 / (2.0 * math.sqrt(math.pi * R))


# --- Taylor coefficients -------------------------------------------------


def _const(one, num, den=1):
    return one * num / den


def _hyp_series(a, b, c, order, one, slope=None) -> SeriesPoly:
    """Coefficients ``(a)_n (b)_n / ((c)_n n!) (1 + n*slope)`` as a SeriesPoly in x."""
    coeffs = []
    t = one
    for n in range(order + 1):
        coeffs.append(t if slope is None else t * (1 + n * slope))
        t = t * (a + n) * (b + n) / ((c + n) * (n + 1))
    return SeriesPoly.from_coeffs(coeffs, order)


def _x_series(R, order):
    z = SeriesPoly.variable(order, R**0)
    s = R * R - 1
    return 4 * z * z / ((s - z * z) ** 2)


def area_series(R, order: int = 8) -> SeriesPoly:
    """Maclaurin series in z of ``A_R(z) / pi^2``, in the arithmetic of ``R``.

    Pass ``Fraction`` R for exact rational coefficients.
    """
    one = R**0
    z = SeriesPoly.variable(order, one)
    s = R * R - 1
    den = (((R - 1) ** 2 - z * z) * ((R + 1) ** 2 - z * z)) ** 2
    pre = 4 * R * (s * s - z**4) / den
    half = _const(one, -1, 2)
    kernel = _hyp_series(half, half, one, order, one)
    return pre * kernel.compose(_x_series(R, order))


def volume_series(R, order: int = 8) -> SeriesPoly:
    """Maclaurin series in z of ``V_R(z) / pi^2``; degenerate-safe at R^2 = 2."""
    one = R**0
    z = SeriesPoly.variable(order, one)
    s = R * R - 1
    den = ((R - 1) ** 2 - z * z) * ((R + 1) ** 2 - z * z)
    pre = 2 * R * ((s - z * z) / den) ** 3
    three_half = _const(one, -3, 2)
    inv_e = (2 * R * R - 4) / 3
    kernel = _hyp_series(three_half, three_half, one, order, one, slope=inv_e)
    return pre * kernel.compose(_x_series(R, order))


def _even_coeffs(series: SeriesPoly, order: int, scale) -> list:
    if order % 2 or order < 0:
        raise DomainError(f"order must be a non-negative even integer, got {order}")
    return [series[k] * scale for k in range(0, order + 1, 2)]


def taylor_coeffs_area(R: float, order: int = 4) -> list[float]:
    """Even Maclaurin coefficients ``[c0, c2, ..., c_order]`` of the area."""
    return _even_coeffs(area_series(float(R), max(order, 2)), order, math.pi**2)


def taylor_coeffs_volume(R: float, order: int = 4) -> list[float]:
    return _even_coeffs(volume_series(float(R), max(order, 2)), order, math.pi**2)


# --- monotonicity ingredients --------------------------------------------


def f_eval(x: float, tol: float = DEFAULT_TOL) -> float:
    """``sqrt(1 + x) / 2F1(-1/2, -1/2; 1; x)``."""
    _check_unit(x)
    return math.sqrt(1.0 + x) / eval_2f1(-0.5, -0.5, 1.0, x, tol)


def g_eval(R: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """Volume kernel over ``(1 + x)^(3/4) (1 + (R^2 - 1) x)^(3/4)``."""
    _check_unit(x)
    return eval_vol3f2(R, x, tol) / ((1.0 + x) * (1.0 + (R * R - 1.0) * x)) ** 0.75


def h_eval(R: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """``Iso_R^2 * 4 pi R / 9`` as a function of x; equals ``f^3 g^2``."""
    _check_unit(x)
    area_k = eval_2f1(-0.5, -0.5, 1.0, x, tol)
    vol_k = eval_vol3f2(R, x, tol)
    return vol_k**2 / area_k**3 * (1.0 + (R * R - 1.0) * x) ** -1.5


def _check_unit(x):
    if not 0.0 <= x < 1.0:
        raise DomainError(f"x must lie in [0, 1), got {x!r}")


def p_poly(n, R):
    """Cubic in n whose positivity for n >= 1 gives positivity of u_n(R)."""
    R2 = R * R
    R4 = R2 * R2
    return (
        4 * (R4 + 4 * R2 - 4) * n**3
        + 6 * (R4 + R2 - 2) * n**2
        + (2 * R4 - 13 * R2 + 10) * n
        - 3 * R2
        + 3
    )


def u_seq(R: float, N: int) -> np.ndarray:
    """``u_0, ..., u_N`` from ``u_0 = 1`` and the hypergeometric term ratio."""
    n = np.arange(N, dtype=float)
    p = p_poly(np.arange(N + 1, dtype=float), float(R))
    if np.any(p[:N] == 0):
        bad = int(np.flatnonzero(p[:N] == 0)[0])
        raise ZeroDenominator(f"p_{bad}({R}) = 0 in the u_n recurrence")
    ratios = (2 * n - 1) * (2 * n + 1) * p[1:] / (4 * (n + 2) * (n + 1) * p[:N])
    return np.concatenate(([1.0], np.cumprod(ratios)))


def u_coeffs_from_series(R, N: int) -> list:
    """``u_n`` straight from the series of ``4 g_R' (1+x)^(7/4) (1+cx)^(7/4) / (3 (1-x)^2 c)``.

    With ``c = R^2 - 1`` the fractional powers cancel:
    ``g_R' (1+x)^(7/4) (1+cx)^(7/4) = G'(1+x)(1+cx) - (3/4) G (1 + c + 2cx)``
    for the volume kernel G. Exact for ``Fraction`` R.
    """
    one = R**0
    c = R * R - 1
    three_half = _const(one, -3, 2)
    G = _hyp_series(three_half, three_half, one, N + 1, one, slope=(2 * R * R - 4) / 3)
    x = SeriesPoly.variable(N, one)
    dG = G.derivative()
    body = dG * ((1 + x) * (1 + c * x)) - _const(one, 3, 4) * G * (1 + c + 2 * c * x)
    inv_sq = SeriesPoly.from_coeffs([one * (k + 1) for k in range(N + 1)], N)
    total = body * inv_sq * (4 / (3 * c))
    return list(total.coeffs)


@dataclass
class MonotonicityReport:
    R: float
    grid: np.ndarray
    values: np.ndarray
    min_forward_difference: float
    p_positive_through: int
    u_positive_through: int
    p_horizon: int
    u_horizon: int
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = (
            self.min_forward_difference > 0
            and self.p_positive_through == self.p_horizon
            and self.u_positive_through == self.u_horizon
        )


def _positive_through(values: np.ndarray, start: int) -> int:
    bad = np.flatnonzero(~(values > 0))
    return start + len(values) - 1 if len(bad) == 0 else start + int(bad[0]) - 1


def monotonicity_check(
    R: float, grid_size: int = 1000, p_horizon: int = 10_000, u_horizon: int = 1_000
) -> MonotonicityReport:
    """Forward differences of ``iso_closed`` on ``[0, (R-1)(1 - 1e-6)]`` plus p_n, u_n signs."""
    R = float(R)
    grid = np.linspace(0.0, (R - 1.0) * (1.0 - MONOTONE_END), grid_size)
    values = np.array([iso_closed(R, z) for z in grid])
    p = p_poly(np.arange(1, p_horizon + 1, dtype=float), R)
    u = u_seq(R, u_horizon)
    return MonotonicityReport(
        R=R,
        grid=grid,
        values=values,
        min_forward_difference=float(np.min(np.diff(values))),
        p_positive_through=_positive_through(p, 1),
        u_positive_through=_positive_through(u, 0),
        p_horizon=p_horizon,
        u_horizon=u_horizon,
    )


# --- non-uniqueness --------------------------------------------------------


def overlap_interval(R: float) -> tuple[float, float]:
    """``[max(3/(2 sqrt(pi R)), 3/(2 sqrt(pi R'))), 1)`` with ``R' = R/sqrt(R^2-1)``."""
    R = float(R)
    R2, _ = dual_params(R, 0.0)
    return max(endpoint_iso(R), endpoint_iso(R2)), 1.0


def find_iso_matches(
    R: float, v: float, xtol: float = 1e-12, maxiter: int = 200
) -> tuple[float, float]:
    """Two inversion centers on the x-axis whose cyclides share isoperimetric ratio ``v``.

    Returns ``(rho1, rho2)`` with ``rho1`` in ``[0, R-1)`` and ``rho2`` in
    ``(R-1, sqrt(R^2-1)]``; each branch is strictly monotone, so bisection
    brackets the unique root.
    """
    R = float(R)
    if not R > 1.0:
        raise DomainError(f"R must exceed 1, got {R!r}")
    if abs(R - math.sqrt(2.0)) <= SQUARE_BAND:
        raise RejectSquare("R = sqrt 2: the isoperimetric ratio determines the shape")
    s = math.sqrt(R * R - 1.0)
    lo = max(iso_closed(R, 0.0), iso_full_domain(R, s))
    if not lo <= v < 1.0:
        raise OutOfRange(f"v = {v} outside the two-witness interval [{lo}, 1) for R = {R}")
    rising = lambda r: iso_closed(R, r) - v
    falling = lambda r: iso_full_domain(R, r) - v
    rho1 = bisect(rising, 0.0, R - 1.0, xtol=xtol, maxiter=maxiter)
    rho2 = bisect(falling, R - 1.0, s, xtol=xtol, maxiter=maxiter)
    return float(rho1), float(rho2)
