"""Shape space of toroidal Dupin cyclides.

Every cyclide ``i_x(T_R)`` is similar to ``i_rho(T_R)`` with the inversion
center ``[rho, 0, 0]`` on the x-axis, and the canonical pairs
``R > 1, 0 <= rho < R - 1`` label distinct shapes. Shapes are compared through
their symmetry-plane circle pairs (``r1 : r2 : d``) and the equivalent Maxwell
ratio ``a : f : (L - a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfiguration, DomainError, OnTorus

SPHERE_BAND = 1e-12


@dataclass(frozen=True)
class RatioTriple:
    """Projective triple ``r1 : r2 : d`` of a circle pair, stored with r1 = 1."""

    r1: float
    r2: float
    d: float

    @classmethod
    def normalized(cls, r1: float, r2: float, d: float) -> RatioTriple:
        # the pair is unordered; label the larger circle r1
        r1, r2 = max(r1, r2), min(r1, r2)
        if not (r2 > 0 and d >= 0):
            raise DegenerateConfiguration(f"need positive radii and d >= 0; got {(r1, r2, d)}")
        return cls(1.0, r2 / r1, d / r1)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.r1, self.r2, self.d)

    def isclose(self, other: RatioTriple, tol: float = 1e-12) -> bool:
        return all(abs(p - q) <= tol * max(1.0, abs(q)) for p, q in zip(self.as_tuple(), other.as_tuple()))


@dataclass(frozen=True)
class MaxwellRatio:
    """``a : f : (L - a)`` with ``a = d/2``, ``f = (r1-r2)/2``, ``L = (r1+r2+d)/2``.

    Normalized so that ``a = 1``; concentric pairs (``a = 0``) are scaled to unit
    max-norm instead.
    """

    a: float
    f: float
    l_minus_a: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.a, self.f, self.l_minus_a)

    def max_difference(self, other: MaxwellRatio) -> float:
        return max(abs(p - q) for p, q in zip(self.as_tuple(), other.as_tuple()))


@dataclass(frozen=True)
class PlanePoint:
    """A point ``(rho, z)`` of the half-plane ``rho >= 0``."""

    rho_coord: float
    z_coord: float

    def __post_init__(self):
        if self.rho_coord < 0:
            raise DomainError(f"rho coordinate must be non-negative, got {self.rho_coord}")

    @classmethod
    def from_cartesian(cls, point) -> PlanePoint:
        x, y, z = (float(c) for c in point)
        return cls(math.hypot(x, y), z)


@dataclass(frozen=True, eq=False)
class ShapeClass:
    """Canonical label ``(R, rho)`` of a cyclide shape, or the round sphere."""

    R: float
    rho: float
    is_round_sphere: bool = False

    @classmethod
    def round_sphere(cls, R: float = math.nan) -> ShapeClass:
        return cls(R, R - 1.0, True)

    @property
    def maxwell(self) -> MaxwellRatio | None:
        if self.is_round_sphere:
            return None
        return maxwell_from_p1(p1_ratio_outside(self.R, self.rho))

    def __eq__(self, other):
        if not isinstance(other, ShapeClass):
            return NotImplemented
        return shapes_equal(self, other)

    __hash__ = None

    def __repr__(self):
        if self.is_round_sphere:
            return "ShapeClass(round sphere)"
        return f"ShapeClass(R={self.R!r}, rho={self.rho!r})"


def _check_R(R: float) -> float:
    R = float(R)
    if not R > 1.0:
        raise DomainError(f"R must exceed 1, got {R!r}")
    return R


def p1_ratio_outside(R: float, rho: float) -> RatioTriple:
    """P1-ratio of ``i_rho(T_R)`` for a center outside the solid torus, rho in [0, R-1)."""
    R = _check_R(R)
    if not 0.0 <= rho < R - 1.0:
        raise DomainError(f"rho must lie in [0, R-1) = [0, {R - 1}), got {rho!r}")
    return RatioTriple.normalized(
        (R + rho) ** 2 - 1.0, (R - rho) ** 2 - 1.0, 2.0 * R * (R * R - rho * rho - 1.0)
    )


def p1_ratio_inside(R: float, rho: float) -> RatioTriple:
    """P1-ratio for a center inside the solid torus, rho in (R-1, sqrt(R^2-1)]."""
    R = _check_R(R)
    if not R - 1.0 < rho <= math.sqrt(R * R - 1.0):
        raise DomainError(f"rho must lie in (R-1, sqrt(R^2-1)], got {rho!r}")
    return RatioTriple.normalized(
        (R - 1.0) * ((R + 1.0) ** 2 - rho * rho),
        (R + 1.0) * (rho * rho - (R - 1.0) ** 2),
        4.0 * R * rho,
    )


def invert_1d(x: float, rho: float) -> float:
    """Inversion of the real line in the unit circle centered at ``rho``."""
    return rho + 1.0 / (x - rho)


def ratios_from_1d_inversions(R: float, rho: float, branch: str) -> RatioTriple:
    """P1-ratio assembled from inverted circle endpoints on the symmetry line.

    The cross-section circles of T_R meet the line at ``+-(R-1)`` and
    ``+-(R+1)``; inverting those four abscissae gives the image circles' radii
    and centers directly.
    """
    R = _check_R(R)
    i = lambda x: invert_1d(x, rho)
    if branch == "outside":
        if not 0.0 <= rho < R - 1.0:
            raise DomainError(f"outside branch needs rho in [0, R-1), got {rho!r}")
        r1 = (i(R - 1) - i(R + 1)) / 2
        r2 = (i(-(R + 1)) - i(-(R - 1))) / 2
        d = (i(R - 1) + i(R + 1)) / 2 - (i(-(R + 1)) + i(-(R - 1))) / 2
    elif branch == "inside":
        if not R - 1.0 < rho <= math.sqrt(R * R - 1.0):
            raise DomainError(f"inside branch needs rho in (R-1, sqrt(R^2-1)], got {rho!r}")
        r1 = (i(-(R - 1)) - i(R - 1)) / 2
        r2 = (i(R + 1) - i(-(R + 1))) / 2
        d = (i(R + 1) + i(-(R + 1))) / 2 - (i(-(R - 1)) + i(R - 1)) / 2
    else:
        raise DomainError(f"branch must be 'outside' or 'inside', got {branch!r}")
    return RatioTriple.normalized(r1, r2, abs(d))


def p2_from_p1(t: RatioTriple) -> RatioTriple:
    """P2-ratio (one circle inside the other) from a P1-ratio."""
    if not t.d > t.r1 + t.r2:
        raise DegenerateConfiguration(
            f"P1 circles must be mutually exterior (d > r1 + r2), got {t.as_tuple()}"
        )
    s = t.r1 + t.r2
    return RatioTriple.normalized((t.d + s) / 2, (t.d - s) / 2, t.r1 - t.r2)


def maxwell_from_p1(t: RatioTriple) -> MaxwellRatio:
    a, f, l_minus_a = t.d / 2, (t.r1 - t.r2) / 2, (t.r1 + t.r2) / 2
    if a > 0:
        return MaxwellRatio(1.0, f / a, l_minus_a / a)
    scale = max(abs(f), abs(l_minus_a))
    return MaxwellRatio(0.0, f / scale, l_minus_a / scale)


def dual_params(R: float, rho: float) -> tuple[float, float]:
    """The pair ``(R', rho')`` with ``i_rho(T_R)`` similar to ``i_rho'(T_R')``."""
    R = _check_R(R)
    s = math.sqrt(R * R - 1.0)
    if not 0.0 <= rho <= s * (1 + 1e-15):
        raise DomainError(f"rho must lie in [0, sqrt(R^2-1)] = [0, {s}], got {rho!r}")
    R2 = R / s
    # clamp into [0, sqrt(R'^2-1)] as downstream range checks compute it
    return R2, min(max(0.0, (s - rho) / ((s + rho) * s)), math.sqrt(R2 * R2 - 1.0))


def family_circle(rho: float, R: float) -> tuple[float, float]:
    """Center abscissa and radius of C(rho; R): diameter from (rho,0) to ((R^2-1)/rho, 0)."""
    far = (R * R - 1.0) / rho
    return (rho + far) / 2, (far - rho) / 2


def family_point(rho: float, R: float, t: float, theta: float) -> np.ndarray:
    """Point of the torus T(rho; R) at circle angle ``t`` and revolution angle ``theta``."""
    center, radius = family_circle(rho, R)
    rr = center + radius * math.cos(t)
    return np.array([rr * math.cos(theta), rr * math.sin(theta), radius * math.sin(t)])


def classify_center(point, R: float, strict: bool = False) -> float:
    """Family parameter rho in [0, sqrt(R^2-1)] of the torus T(rho; R) through ``point``.

    Points on T_R itself (within ``SPHERE_BAND * R``) give ``R - 1``, the round
    sphere label; with ``strict=True`` they raise :class:`OnTorus` instead.
    """
    R = _check_R(R)
    p = PlanePoint.from_cartesian(point)
    if abs(math.hypot(p.rho_coord - R, p.z_coord) - 1.0) <= SPHERE_BAND * R:
        if strict:
            raise OnTorus(f"point {tuple(point)} lies on T_R for R = {R}")
        return R - 1.0
    if p.rho_coord == 0.0:
        return 0.0
    k = R * R - 1.0
    c = (p.rho_coord**2 + p.z_coord**2 + k) / (2.0 * p.rho_coord)
    # smaller root of rho^2 - 2 c rho + k = 0, written without cancellation
    return k / (c + math.sqrt(max(c * c - k, 0.0)))


def canonicalize(R: float, rho: float) -> ShapeClass:
    R = _check_R(R)
    s = math.sqrt(R * R - 1.0)
    if not 0.0 <= rho <= s * (1 + 1e-15):
        raise DomainError(f"rho must lie in [0, sqrt(R^2-1)] = [0, {s}], got {rho!r}")
    if abs(rho - (R - 1.0)) <= SPHERE_BAND * R:
        return ShapeClass.round_sphere(R)
    if rho < R - 1.0:
        return ShapeClass(R, float(rho))
    R2, rho2 = dual_params(R, rho)
    return ShapeClass(R2, min(rho2, math.nextafter(R2 - 1.0, 0.0)))


def phi(R: float, rho: float) -> tuple[float, float]:
    """Injective coordinates of the Maxwell ratio: ``1 : phi_1 : phi_2``."""
    R = _check_R(R)
    if not 0.0 <= rho < R - 1.0:
        raise DomainError(f"rho must lie in [0, R-1), got {rho!r}")
    den = R * R - rho * rho - 1.0
    return 2.0 * rho / den, (R * R + rho * rho - 1.0) / (R * den)


def phi_inv(a: float, b: float) -> tuple[float, float]:
    """Inverse of :func:`phi` on ``{0 <= a < 1, a < b < 1}``.

    Uses ``R^2 = (1-a^2)/(b^2-a^2)`` and the positive root of
    ``a rho^2 + 2 rho - a (R^2 - 1) = 0`` in rationalized form, which is
    regular at ``a = 0`` (giving ``(1/b, 0)``).
    """
    if not (0.0 <= a < 1.0 and a < b < 1.0):
        raise DomainError(f"(a, b) must satisfy 0 <= a < 1, a < b < 1; got {(a, b)}")
    gap = (b - a) * (b + a)
    R = math.sqrt((1.0 - a) * (1.0 + a) / gap)
    k = (1.0 - b) * (1.0 + b) / gap
    rho = a * k / (1.0 + math.sqrt(1.0 + a * a * k))
    return R, rho


def alpha_to_R(alpha: float) -> float:
    """Major radius of the torus whose inversions match the Clifford torus C_alpha."""
    if not 0.0 < alpha < math.pi / 2:
        raise DomainError(f"alpha must lie in (0, pi/2), got {alpha!r}")
    return 1.0 / math.sin(alpha)


def R_to_alpha(R: float) -> float:
    return math.asin(1.0 / _check_R(R))


def shapes_equal(s1: ShapeClass, s2: ShapeClass, tol: float = 1e-12) -> bool:
    """Equality of canonical shapes, cross-checked through Maxwell ratios."""
    if s1.is_round_sphere or s2.is_round_sphere:
        return s1.is_round_sphere and s2.is_round_sphere
    same = abs(s1.R - s2.R) <= tol * s1.R and abs(s1.rho - s2.rho) <= tol * max(s1.rho, 1.0)
    if not same:
        return False
    # phi is well conditioned away from rho -> R-1; the slack only absorbs that
    m1, m2 = s1.maxwell, s2.maxwell
    return m1.max_difference(m2) <= 1e3 * tol * max(1.0, *map(abs, m1.as_tuple()))
