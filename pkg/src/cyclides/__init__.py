"""Areas, volumes and isoperimetric ratios of toroidal Dupin cyclides.

A toroidal Dupin cyclide is a sphere inversion of the torus of revolution
T_R (major radius R, minor radius 1). Up to similarity every such cyclide is
``i_rho(T_R)`` for a canonical pair ``R > 1``, ``0 <= rho < R - 1``.
"""

from .errors import (
    CyclideError,
    DegenerateConfiguration,
    DivergentParameters,
    DomainError,
    NoConvergence,
    OnTorus,
    OutOfRange,
    RejectSquare,
    SingularIntegrand,
    ZeroDenominator,
)
from .hypergeom import HGKernel, KernelKind, check_3f2_identity, eval_2f1, eval_vol3f2
from .geometry import (
    MaxwellRatio,
    RatioTriple,
    ShapeClass,
    alpha_to_R,
    canonicalize,
    classify_center,
    dual_params,
    maxwell_from_p1,
    p1_ratio_inside,
    p1_ratio_outside,
    p2_from_p1,
    phi,
    phi_inv,
    R_to_alpha,
    ratios_from_1d_inversions,
    shapes_equal,
)
from .iso import (
    area_closed,
    find_iso_matches,
    iso_closed,
    iso_full_domain,
    monotonicity_check,
    overlap_interval,
    taylor_coeffs_area,
    taylor_coeffs_volume,
    volume_closed,
)
from .quadrature import (
    InvertedTorusIntegrand,
    QuadratureSpec,
    area_oracle,
    convergence_report,
    iso_oracle,
    volume_oracle,
)

__version__ = "0.1.0"
