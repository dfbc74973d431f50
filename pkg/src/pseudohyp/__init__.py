"""Uniform sinh/cosh curves on signature (s, r) quadrics.

The library models the real quadric -sum(t_i^2) + sum(x_j^2) = R^2 and the
curve family whose s time-like coordinates share one sinh and whose r
space-like coordinates share one cosh, all at the single frequency sqrt(s*r).
It provides:

- the signature inner product and the closed-form curve (`geometry`)
- the coupled linear flow the curve solves, integrated with a fixed-step
  fourth-order scheme and cross-checked against the closed form (`ode`)
- tangent-bundle dimension accounting and derivative-tower lifts (`bundle`)
- product-preserving linear maps built from boosts and rotations (`transform`)
- a CLI for trajectory export and a verification sweep (`cli`, `verify`)
"""

from .geometry import (
    DEFAULT_TOL,
    CurveSpec,
    PseudoPoint,
    Signature,
    TangentVector,
    effective_radius,
    inner_product,
    is_h_orthogonal,
    is_on_hyperboloid,
    point_at,
    velocity_at,
)
from .ode import (
    IntegratorConfig,
    Provenance,
    SystemState,
    Trajectory,
    closed_form_trajectory,
    convergence_order,
    integrate,
    max_deviation,
    second_order_residual,
    system_rhs,
)
from .bundle import (
    MAX_LIFT_ORDER,
    BundleElement,
    bundle_dim,
    curve_derivative,
    curve_lift,
    project,
    trivialize,
    untrivialize,
)
from .transform import (
    PseudoOrthogonalMap,
    apply,
    block_rotation,
    boost,
    is_isometry,
    isometry_defect,
    metric_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "MAX_LIFT_ORDER",
    "BundleElement",
    "CurveSpec",
    "IntegratorConfig",
    "Provenance",
    "PseudoOrthogonalMap",
    "PseudoPoint",
    "Signature",
    "SystemState",
    "TangentVector",
    "Trajectory",
    "apply",
    "block_rotation",
    "boost",
    "bundle_dim",
    "closed_form_trajectory",
    "convergence_order",
    "curve_derivative",
    "curve_lift",
    "effective_radius",
    "inner_product",
    "integrate",
    "is_h_orthogonal",
    "is_isometry",
    "is_on_hyperboloid",
    "isometry_defect",
    "max_deviation",
    "metric_matrix",
    "point_at",
    "project",
    "second_order_residual",
    "system_rhs",
    "trivialize",
    "untrivialize",
    "velocity_at",
]
