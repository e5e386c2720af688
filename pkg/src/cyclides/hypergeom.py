"""Hypergeometric kernels behind the closed-form area and volume.

Only four kernels are needed, all with argument ``x`` in ``[0, 1]``:

* ``2F1(-1/2, -1/2; 1; x)``   area kernel
* ``3F2(-3/2, -3/2, e+1; 1, e; x)`` with ``e = 3/(2R^2 - 4)``   volume kernel
* ``2F1(-3/2, -3/2; 1; x)`` and ``2F1(-1/2, -1/2; 2; x)``   auxiliary kernels

Series are summed directly in extended precision with compensated block
accumulation and an integral-comparison tail bound. Near ``x = 1`` the terms
decay only algebraically, so inside a band of width ``BOUNDARY_BAND`` the
Gauss value at ``x = 1`` plus a first-order correction is returned instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DivergentParameters, DomainError, NoConvergence

DEFAULT_TOL = 1e-15
TERM_CAP = 10_000_000
BOUNDARY_BAND = 1e-6
SQRT2 = math.sqrt(2.0)

_LD = np.longdouble
_MAX_BLOCK = 1 << 16


@dataclass(frozen=True)
class SeriesAccumulator:
    """State of a finished series summation.

    ``term`` is the last term added (index ``n``) and ``tail_bound`` bounds the
    absolute value of everything not summed.
    """

    partial_sum: float
    term: float
    n: int
    tail_bound: float


class KernelKind(Enum):
    AREA_2F1 = "area_2f1"
    VOL_3F2 = "vol_3f2"
    AUX_2F1_32 = "aux_2f1_32"
    AUX_2F1_12_2 = "aux_2f1_12_2"


_KERNEL_PARAMS = {
    KernelKind.AREA_2F1: (-0.5, -0.5, 1.0),
    KernelKind.AUX_2F1_32: (-1.5, -1.5, 1.0),
    KernelKind.AUX_2F1_12_2: (-0.5, -0.5, 2.0),
}


def is_square_radius(R: float) -> bool:
    """True when ``R`` is sqrt(2) up to rounding, i.e. ``2R^2 - 4`` is noise."""
    return abs(R * R - 2.0) <= 8.0 * np.finfo(float).eps


@dataclass(frozen=True)
class HGKernel:
    """One of the four fixed kernels, parametrized by ``R`` for the 3F2.

    The volume kernel keeps only ``R``; ``e = 3/(2R^2 - 4)`` is derived and is
    ``None`` at ``R = sqrt 2`` where it is undefined.
    """

    kind: KernelKind
    R: float | None = None

    def __post_init__(self):
        if self.kind is KernelKind.VOL_3F2:
            if self.R is None or not self.R > 1.0:
                raise DomainError(f"volume kernel needs R > 1, got {self.R!r}")
        elif self.R is not None:
            raise DomainError(f"{self.kind.value} does not depend on R")

    @property
    def degenerate(self) -> bool:
        return self.kind is KernelKind.VOL_3F2 and is_square_radius(self.R)

    @property
    def inv_e(self) -> float:
        """``1/e = (2R^2 - 4)/3``; finite for every R, zero at R = sqrt 2."""
        if self.kind is not KernelKind.VOL_3F2:
            raise DomainError("only the volume kernel has an e parameter")
        return 0.0 if self.degenerate else (2.0 * self.R * self.R - 4.0) / 3.0

    @property
    def e(self) -> float | None:
        if self.kind is not KernelKind.VOL_3F2:
            raise DomainError("only the volume kernel has an e parameter")
        return None if self.degenerate else 3.0 / (2.0 * self.R * self.R - 4.0)

    def __call__(self, x: float, tol: float = DEFAULT_TOL) -> float:
        if self.kind is KernelKind.VOL_3F2:
            return eval_vol3f2(self.R, x, tol)
        return eval_2f1(*_KERNEL_PARAMS[self.kind], x, tol)

    def value_at_one(self) -> float:
        if self.kind is KernelKind.VOL_3F2:
            return _vol3f2_boundary(self.inv_e)[0]
        return _gauss_sum(*_KERNEL_PARAMS[self.kind])


def _is_nonpositive_integer(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


def _rgamma(v: float) -> float:
    return 0.0 if _is_nonpositive_integer(v) else 1.0 / math.gamma(v)


def _gauss_sum(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b)), needs c - a - b > 0."""
    return math.gamma(c) * math.gamma(c - a - b) * _rgamma(c - a) * _rgamma(c - b)


def _derivative_at_one(a: float, b: float, c: float, k: int) -> float:
    """k-th x-derivative of 2F1(a, b; c; x) at x = 1, needs c - a - b > k."""
    scale = 1.0
    for j in range(k):
        scale *= (a + j) * (b + j) / (c + j)
    return scale * _gauss_sum(a + k, b + k, c + k)


def _validate_x(x: float) -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"argument must lie in [0, 1], got {x!r}")
    return x


def sum_series(
    a: float,
    b: float,
    c: float,
    x: float,
    tol: float = DEFAULT_TOL,
    slope: float = 0.0,
    cap: int = TERM_CAP,
) -> SeriesAccumulator:
    """Sum ``sum_n T_n (1 + n*slope)`` with ``T_n = (a)_n (b)_n / ((c)_n n!) x^n``.

    ``slope = 0`` gives 2F1(a, b; c; x). ``slope = 1/e`` gives the reduced form
    of 3F2(a, b, e+1; c, e; x), since ``(e+1)_n / (e)_n = (e+n)/e = 1 + n/e``.

    Terms are generated in blocks by cumulative products of the term ratio in
    extended precision; each block is summed pairwise and the running total
    carries a Neumaier compensation. Once ``n`` is past the pre-asymptotic
    range, ``|T_m| <= |T_n| (n/m)^p x^(m-n)`` for ``m >= n`` with
    ``p = c + 1 - a - b - 1/2``, which gives the tail bound
    ``|T_n| min(n/(p-1), x/(1-x))``, and similarly for the ``n T_n`` part.
    """
    if _is_nonpositive_integer(c):
        raise DivergentParameters(f"c = {c} is a non-positive integer")
    p = c + 1.0 - a - b - 0.5
    n_min = int(2 * (abs(a) + abs(b) + abs(c) + 1) ** 2)
    geo = x / (1.0 - x) if x < 1.0 else math.inf
    integral_t = (lambda n: n / (p - 1.0)) if p > 1.0 else (lambda n: math.inf)
    integral_nt = (lambda n: n / (p - 2.0)) if p > 2.0 else (lambda n: math.inf)

    xl, al, bl, cl, sl = (_LD(v) for v in (x, a, b, c, slope))
    total = _LD(0)
    comp = _LD(0)
    carry = _LD(1)
    n0 = 0
    block = 64
    while n0 < cap:
        k = np.arange(n0, n0 + block, dtype=_LD)
        ratios = (k + al) * (k + bl) / ((k + cl) * (k + 1)) * xl
        t = np.empty(block, dtype=_LD)
        t[0] = carry
        np.multiply(carry, np.cumprod(ratios[:-1]), out=t[1:])
        terms = t * (1 + k * sl) if slope else t
        s = terms.sum()
        acc = total + s
        if abs(total) >= abs(s):
            comp += (total - acc) + s
        else:
            comp += (s - acc) + total
        total = acc
        carry = t[-1] * ratios[-1]
        n_last = n0 + block - 1
        t_last = abs(float(t[-1]))
        if carry == 0:
            tail = 0.0
        elif n_last >= n_min:
            tail = t_last * min(integral_t(n_last), geo)
            if slope:
                tail += abs(slope) * n_last * t_last * min(integral_nt(n_last), geo)
        else:
            tail = math.inf
        if tail <= tol:
            return SeriesAccumulator(float(total + comp), float(terms[-1]), n_last, tail)
        n0 += block
        block = min(2 * block, _MAX_BLOCK)
    raise NoConvergence(f"series at x={x} not within tol={tol} after {cap} terms")


def eval_2f1(a: float, b: float, c: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """Gauss hypergeometric series 2F1(a, b; c; x) for x in [0, 1].

    Within ``BOUNDARY_BAND`` of x = 1 (and when ``c - a - b > 1``) this returns
    ``F(1) - (1 - x) F'(1)`` from Gauss's theorem; the neglected remainder is
    ``O((1-x)^2 log(1/(1-x)))``, below 1e-11 for the fixed kernels.
    """
    x = _validate_x(x)
    if _is_nonpositive_integer(c):
        raise DivergentParameters(f"c = {c} is a non-positive integer")
    if x == 0.0:
        return 1.0
    if 1.0 - x < BOUNDARY_BAND:
        if c - a - b <= 0:
            raise DivergentParameters("2F1 at x = 1 needs c - a - b > 0")
        value = _gauss_sum(a, b, c)
        if x == 1.0:
            return value
        if c - a - b > 1:
            return value - (1.0 - x) * _derivative_at_one(a, b, c, 1)
    return sum_series(a, b, c, x, tol).partial_sum


def _vol3f2_boundary(inv_e: float) -> tuple[float, float]:
    # G(x) = F(x) + inv_e * x F'(x) with F = 2F1(-3/2, -3/2; 1; x)
    f1 = _derivative_at_one(-1.5, -1.5, 1.0, 1)
    f2 = _derivative_at_one(-1.5, -1.5, 1.0, 2)
    value = _gauss_sum(-1.5, -1.5, 1.0) + inv_e * f1
    slope = f1 * (1.0 + inv_e) + inv_e * f2
    return value, slope


def eval_vol3f2(R: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """3F2(-3/2, -3/2, e+1; 1, e; x) with e = 3/(2R^2 - 4).

    Summed with the cancelled Pochhammer pair, term ``T_n (1 + n/e)``, so negative
    integer ``e`` (e.g. ``R = sqrt(13/8)``) is harmless. At R = sqrt 2 the weight
    is identically one and the kernel is 2F1(-3/2, -3/2; 1; x).
    """
    if not R > 1.0:
        raise DomainError(f"R must exceed 1, got {R!r}")
    x = _validate_x(x)
    if is_square_radius(R):
        return eval_2f1(-1.5, -1.5, 1.0, x, tol)
    if x == 0.0:
        return 1.0
    inv_e = (2.0 * R * R - 4.0) / 3.0
    if 1.0 - x < BOUNDARY_BAND:
        value, slope = _vol3f2_boundary(inv_e)
        return value - (1.0 - x) * slope
    return sum_series(-1.5, -1.5, 1.0, x, tol, slope=inv_e).partial_sum


def check_3f2_identity(R: float, x: float, tol: float = DEFAULT_TOL) -> float:
    """Residual of 3F2(...; x) = 2F1(-3/2,-3/2;1;x) + (3/2)(R^2-2) x 2F1(-1/2,-1/2;2;x)."""
    if not R > 1.0 or is_square_radius(R):
        raise DomainError(f"identity check needs R > 1, R != sqrt 2, got {R!r}")
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise DomainError(f"identity check needs x in [0, 1), got {x!r}")
    lhs = eval_vol3f2(R, x, tol)
    rhs = eval_2f1(-1.5, -1.5, 1.0, x, tol) + 1.5 * (R * R - 2.0) * x * eval_2f1(
        -0.5, -0.5, 2.0, x, tol
    )
    return abs(lhs - rhs)
