"""Invariant suites run by ``cyclides verify``.

Each suite reports its worst residual against a threshold. Thresholds are the
suites' own tolerances at the default run tolerance (1e-10); a larger run
tolerance loosens every threshold by the same factor, a smaller one leaves
them unchanged.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .geometry import (
    canonicalize,
    dual_params,
    p1_ratio_inside,
    p1_ratio_outside,
    phi,
    phi_inv,
    shapes_equal,
)
from .hypergeom import check_3f2_identity
from .iso import (
    endpoint_iso,
    find_iso_matches,
    iso_closed,
    iso_full_domain,
    monotonicity_check,
    overlap_interval,
    p_poly,
    taylor_coeffs_area,
    taylor_coeffs_volume,
    u_seq,
    area_closed,
    volume_closed,
)
from .quadrature import InvertedTorusIntegrand, QuadratureSpec, area_oracle, volume_oracle

SQ2 = math.sqrt(2.0)
BASE_TOLERANCE = 1e-10
ORACLE_RADII = (1.2, SQ2, 2.0, 3.0)
ORACLE_FRACTIONS = (0.0, 0.3, 0.6, 0.9)
MONOTONE_RADII = (1.05, 1.1, 1.5, SQ2, 2.0, 5.0, 20.0)
IDENTITY_RADII = (1.2, 1.5, math.sqrt(13 / 8), 2.0, 3.0)
POSITIVITY_RADII = (1.01, 1.2, SQ2, 2.0, 10.0)


@dataclass
class SuiteResult:
    name: str
    worst: float
    threshold: float
    passed: bool
    seconds: float = 0.0
    detail: str = ""

    def to_dict(self):
        d = asdict(self)
        d["worst"], d["threshold"], d["passed"] = float(self.worst), float(self.threshold), bool(self.passed)
        return d


def printed_area_coeffs(R: float) -> tuple[float, float, float]:
    s = R * R - 1.0
    pi2 = math.pi**2
    return (
        4 * pi2 * R / s**2,
        4 * pi2 * R * (4 * R * R + 5) / s**4,
        9 * pi2 * R * (4 * R**4 + 16 * R * R + 5) / s**6,
    )


def printed_volume_coeffs(R: float) -> tuple[float, float, float]:
    s = R * R - 1.0
    pi2 = math.pi**2
    return (
        2 * R * pi2 / s**3,
        6 * R * pi2 * (3 * R * R + 2) / s**5,
        3 * R * pi2 * (48 * R**4 + 104 * R * R + 23) / (2 * s**7),
    )


def _threshold(stated: float, tolerance: float) -> float:
    return stated * max(1.0, tolerance / BASE_TOLERANCE)


def _rel(a: float, b: float) -> float:
    return abs(a / b - 1.0)


def suite_oracle_agreement(tolerance: float, n_angular: int, n_radial: int) -> SuiteResult:
    q = QuadratureSpec(n_angular, n_radial, tolerance)
    worst = 0.0
    for R in ORACLE_RADII:
        for frac in ORACLE_FRACTIONS:
            rho = frac * (R - 1.0)
            spec = InvertedTorusIntegrand(R, rho)
            a, v = area_oracle(spec, q), volume_oracle(spec, q)
            iso = 6.0 * math.sqrt(math.pi) * v / a**1.5
            worst = max(
                worst,
                _rel(area_closed(R, rho), a),
                _rel(volume_closed(R, rho), v),
                _rel(iso_closed(R, rho), iso),
            )
    threshold = _threshold(1e-8, tolerance)
    return SuiteResult("oracle_agreement", worst, threshold, worst <= threshold)


def suite_endpoints(tolerance: float) -> SuiteResult:
    worst = 0.0
    for R in (1.1, SQ2, 2.0, 10.0):
        worst = max(worst, abs(iso_closed(R, 0.0) - endpoint_iso(R)), abs(iso_closed(R, R - 1.0) - 1.0))
    threshold = _threshold(1e-12, tolerance)
    return SuiteResult("endpoints", worst, threshold, worst <= threshold)


def suite_taylor(tolerance: float) -> SuiteResult:
    worst = 0.0
    for R in (1.5, 2.0, 3.0):
        for got, want in zip(taylor_coeffs_area(R), printed_area_coeffs(R)):
            worst = max(worst, _rel(got, want))
        for got, want in zip(taylor_coeffs_volume(R), printed_volume_coeffs(R)):
            worst = max(worst, _rel(got, want))
    threshold = _threshold(1e-10, tolerance)
    return SuiteResult("taylor_coefficients", worst, threshold, worst <= threshold)


def suite_monotonicity(tolerance: float) -> SuiteResult:
    reports = [monotonicity_check(R, 1000, p_horizon=1, u_horizon=1) for R in MONOTONE_RADII]
    worst = min(r.min_forward_difference for r in reports)
    return SuiteResult(
        "monotonicity", worst, 0.0, worst > 0.0, detail="worst = smallest forward difference"
    )


def suite_identity(tolerance: float) -> SuiteResult:
    worst = max(
        check_3f2_identity(R, k / 10) for R in IDENTITY_RADII for k in range(1, 10)
    )
    threshold = _threshold(1e-12, tolerance)
    return SuiteResult("hypergeometric_identity", worst, threshold, worst <= threshold)


def positivity_bound_at_one(R: float) -> float:
    """Lower-bound cubic ``4R^4 n^3 + (10 - 11R^2) n + 3 - 3R^2`` at n = 1."""
    return 4 * R**4 + (10 - 11 * R * R) + 3 - 3 * R * R


def suite_positivity(tolerance: float) -> SuiteResult:
    worst_min = math.inf
    bound_err = 0.0
    bound_ok = True
    n_p = np.arange(1, 10_001, dtype=float)
    for R in POSITIVITY_RADII:
        p = p_poly(n_p, R)
        u = u_seq(R, 1000)
        worst_min = min(worst_min, float(p.min()), float(u.min()))
        q1 = positivity_bound_at_one(R)
        bound_err = max(bound_err, abs(q1 - ((2 * R * R - 3.5) ** 2 + 0.75)))
        bound_ok &= bool(np.all(p > q1))
    ok = worst_min > 0 and bound_ok and bound_err <= _threshold(1e-12, tolerance)
    return SuiteResult(
        "un_pn_positivity", worst_min, 0.0, ok, detail=f"bound-at-one residual {bound_err:.3e}"
    )


def _random_pairs(rng: np.random.Generator, count: int):
    Rs = 1.0 + 10.0 ** rng.uniform(-2.0, 1.0, count)
    return Rs, rng.uniform(0.0, 1.0, count)


def suite_duality(tolerance: float, seed: int = 0, count: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    Rs, fracs = _random_pairs(rng, count)
    worst = 0.0
    for R, t in zip(Rs, fracs):
        s = math.sqrt(R * R - 1.0)
        rho_any = t * s
        R2, rho2 = dual_params(*dual_params(R, rho_any))
        worst = max(worst, abs(R2 / R - 1.0), abs(rho2 - rho_any) / max(1.0, rho_any))

        rho = t * (R - 1.0)
        inside = p1_ratio_inside(*dual_params(R, rho))
        outside = p1_ratio_outside(R, rho)
        worst = max(worst, max(abs(p - q) / max(1.0, abs(q)) for p, q in zip(inside.as_tuple(), outside.as_tuple())))

        Rd, rhod = dual_params(R, rho_any)
        worst = max(worst, abs(iso_full_domain(R, rho_any) - iso_full_domain(Rd, min(rhod, math.sqrt(Rd * Rd - 1.0)))))

        Rb, rhob = phi_inv(*phi(R, rho))
        worst = max(worst, abs(Rb / R - 1.0), abs(rhob - rho) / max(1.0, rho))
    for _ in range(count):
        a = rng.uniform(1e-6, 0.99)
        b = rng.uniform(a + 1e-3 * (1 - a), 1.0 - 1e-3 * (1 - a))
        a2, b2 = phi(*phi_inv(a, b))
        worst = max(worst, abs(a2 - a), abs(b2 - b))
    threshold = _threshold(1e-12, tolerance)
    return SuiteResult("duality", float(worst), threshold, worst <= threshold)


def suite_nonunique(tolerance: float) -> SuiteResult:
    worst = 0.0
    min_gap = math.inf
    for R in (1.2, 2.0, 3.0):
        lo, hi = overlap_interval(R)
        v = (lo + hi) / 2
        rho1, rho2 = find_iso_matches(R, v)
        worst = max(worst, abs(iso_full_domain(R, rho1) - v), abs(iso_full_domain(R, rho2) - v))
        s1, s2 = canonicalize(R, rho1), canonicalize(R, rho2)
        if shapes_equal(s1, s2):
            min_gap = 0.0
        else:
            min_gap = min(min_gap, s1.maxwell.max_difference(s2.maxwell))
    threshold = _threshold(1e-10, tolerance)
    ok = worst <= threshold and min_gap > 1e-6
    return SuiteResult("non_uniqueness", worst, threshold, ok, detail=f"min Maxwell gap {min_gap:.3e}")


def sweep_values(R: float, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    rhos = np.linspace(0.0, math.sqrt(R * R - 1.0), n_points)
    return rhos, np.array([iso_full_domain(R, r) for r in rhos])


def suite_sweep(tolerance: float, n_points: int = 201) -> SuiteResult:
    worst_sym = 0.0
    ok = True
    for R in (1.2, SQ2, 2.0):
        rhos, vals = sweep_values(R, n_points)
        rise = rhos < R - 1.0
        ok &= bool(np.all(np.diff(vals[rise]) > 0) and np.all(np.diff(vals[~rise]) < 0))
        ok &= bool(vals.max() <= 1.0)
        R2, _ = dual_params(R, 0.0)
        ok &= abs(vals[-1] - endpoint_iso(R2)) <= 1e-12
    for rho in np.linspace(0.0, 1.0, n_points):
        worst_sym = max(worst_sym, abs(iso_full_domain(SQ2, rho) - iso_full_domain(SQ2, (1 - rho) / (1 + rho))))
    threshold = _threshold(1e-12, tolerance)
    return SuiteResult("sweep_shape", worst_sym, threshold, ok and worst_sym <= threshold)


def run_all(tolerance: float = 1e-10, n_angular: int = 256, n_radial: int = 64, workers: int = 1):
    """Run every suite; results come back in a fixed order regardless of ``workers``."""
    jobs = [
        lambda: suite_oracle_agreement(tolerance, n_angular, n_radial),
        lambda: suite_endpoints(tolerance),
        lambda: suite_taylor(tolerance),
        lambda: suite_monotonicity(tolerance),
        lambda: suite_identity(tolerance),
        lambda: suite_positivity(tolerance),
        lambda: suite_duality(tolerance),
        lambda: suite_nonunique(tolerance),
        lambda: suite_sweep(tolerance),
    ]

    def timed(job):
        start = time.perf_counter()
        result = job()
        result.seconds = time.perf_counter() - start
        return result

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        return list(pool.map(timed, jobs))
