"""Per-signature verification battery behind the `verify` command.

For every grid cell (s, r, R) this runs the closed-form invariants, the
integrator cross-checks, the bundle bookkeeping, and the isometry sweeps,
and reports the worst residual of each check against its bound. All checks
are deterministic: random draws come from a generator seeded per cell.

`fault_r_eff=True` deliberately evaluates the curve with amplitude R instead
of R/sqrt(r) while still checking against the quadric of R. Cells with r >= 2
must then fail with a form residual of (r-1) * R^2, which proves the sweep is
able to reject a wrong implementation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bundle import bundle_dim, curve_derivative, curve_lift, project
from .geometry import CurveSpec, Signature, inner_product, point_at, velocity_at
from .ode import IntegratorConfig, closed_form_trajectory, convergence_order, integrate, max_deviation
from .transform import PseudoOrthogonalMap, apply, block_rotation, boost, isometry_defect

__all__ = ["DEFAULT_SEED", "Check", "CellReport", "run_cell_checks", "run_sweep"]

DEFAULT_SEED = 20260810

_FD_PSI = np.linspace(-0.9, 0.9, 19)
_LIFT_PSI = (-0.8, 0.3, 0.9)
_CONVERGENCE_STEPS = (60, 120, 240)
_TRANSFORM_TRIALS = 24
_MAX_GENERATORS = 5
_MAX_RAPIDITY = 0.6


@dataclass(frozen=True)
class Check:
    """One named residual check: passes when worst <= bound."""

    name: str
    worst: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.bound

    @property
    def ratio(self) -> float:
        if self.bound > 0:
            return self.worst / self.bound
        return 0.0 if self.worst == 0.0 else math.inf


@dataclass(frozen=True)
class CellReport:
    """All check results for one (signature, radius) cell."""

    sig: Signature
    radius: float
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst_check(self) -> Check:
        return max(self.checks, key=lambda c: c.ratio)

    @property
    def failures(self) -> tuple:
        return tuple(c for c in self.checks if not c.passed)


def _block_spread(arr: np.ndarray, s: int) -> float:
    # 0.0 exactly when each block is bitwise uniform
    spread_t = float(np.max(np.abs(arr[..., :s] - arr[..., :1])))
    spread_x = float(np.max(np.abs(arr[..., s:] - arr[..., s : s + 1])))
    return max(spread_t, spread_x)


def _random_isometry(sig: Signature, rng) -> PseudoOrthogonalMap:
    m = PseudoOrthogonalMap.identity(sig)
    blocks = []
    if sig.s >= 2:
        blocks.append((0, sig.s))
    if sig.r >= 2:
        blocks.append((sig.s, sig.n))
    for _ in range(int(rng.integers(1, _MAX_GENERATORS + 1))):
        if blocks and rng.random() < 0.5:
            lo, hi = blocks[int(rng.integers(0, len(blocks)))]
            a1, a2 = rng.choice(np.arange(lo, hi), size=2, replace=False)
            g = block_rotation(sig, int(a1), int(a2), float(rng.uniform(-math.pi, math.pi)))
        else:
            ti = int(rng.integers(0, sig.s))
            xj = int(rng.integers(sig.s, sig.n))
            g = boost(sig, ti, xj, float(rng.uniform(-_MAX_RAPIDITY, _MAX_RAPIDITY)))
        m = g @ m
    return m


def run_cell_checks(
    sig: Signature,
    radius: float,
    psi_start: float = -2.0,
    psi_end: float = 2.0,
    samples: int = 100,
    steps: int = 2000,
    tol: float = 1e-9,
    seed: int = DEFAULT_SEED,
    fault_r_eff: bool = False,
) -> CellReport:
    """Run the full battery for one cell and report worst residuals."""
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if samples < 2:
        raise ValueError(f"need at least 2 psi samples, got {samples}")
    rng = np.random.default_rng([seed, sig.s, sig.r, int(round(radius * 1e6))])
    spec = CurveSpec(sig, radius * math.sqrt(sig.r)) if fault_r_eff else CurveSpec(sig, radius)
    s, r, n = sig.s, sig.r, sig.n
    r2 = radius * radius
    w = spec.frequency
    checks = []

    # closed-form invariants on the psi grid
    worst_quad = worst_orth = worst_vnorm = worst_unif = 0.0
    for psi in np.linspace(psi_start, psi_end, samples):
        p = point_at(psi, spec)
        v = velocity_at(psi, spec)
        worst_quad = max(worst_quad, abs(inner_product(p, p, sig) - r2))
        worst_orth = max(worst_orth, abs(inner_product(p, v, sig)))
        worst_vnorm = max(worst_vnorm, abs(inner_product(v, v, sig) + s * r * r2))
        worst_unif = max(worst_unif, _block_spread(p.coords, s), _block_spread(v.coords, s))
    checks.append(Check("quadric", worst_quad, tol * r2))
    checks.append(Check("orthogonality", worst_orth, tol * r2))
    checks.append(Check("velocity_norm", worst_vnorm, tol * s * r * r2))
    checks.append(Check("uniformity", worst_unif, 0.0))

    # velocity against a central finite difference of the points
    h = 1e-5
    worst_fd = 0.0
    for psi in _FD_PSI:
        fd = (point_at(psi + h, spec).coords - point_at(psi - h, spec).coords) / (2 * h)
        worst_fd = max(worst_fd, float(np.max(np.abs(fd - velocity_at(psi, spec).coords))))
    checks.append(Check("velocity_fd", worst_fd, 1e-8 * max(1.0, r * spec.r_eff)))

    # integrated flow against the closed form, plus conservation along it
    cfg = IntegratorConfig(psi_start, psi_end, steps, spec)
    num = integrate(cfg, point_at(psi_start, spec))
    ref = closed_form_trajectory(cfg)
    psi_max = max(abs(psi_start), abs(psi_end))
    dev_bound = 1e-7 * (1.0 + r * spec.r_eff * math.cosh(psi_max * w))
    checks.append(Check("flow_deviation", max_deviation(num, ref), dev_bound))
    worst_fquad = worst_forth = 0.0
    for k in range(len(num)):
        pk = num.points[k]
        vk = num.velocities[k]
        worst_fquad = max(worst_fquad, abs(inner_product(pk, pk, sig) - r2))
        worst_forth = max(worst_forth, abs(inner_product(pk, vk, sig)))
    checks.append(Check("flow_quadric", worst_fquad, 1e-7 * r2))
    checks.append(Check("flow_orthogonality", worst_forth, 1e-7 * r2))
    checks.append(
        Check(
            "flow_uniformity",
            max(_block_spread(num.points, s), _block_spread(num.velocities, s)),
            0.0,
        )
    )
    slope = convergence_order(spec, psi_start, psi_end, _CONVERGENCE_STEPS)
    checks.append(Check("convergence_order", abs(slope - 4.0), 0.3))

    # bundle bookkeeping on the lift tower
    worst_dim = worst_proj = worst_second = worst_lift_fd = 0.0
    for psi in _LIFT_PSI:
        lifts = [curve_lift(spec, psi, p) for p in range(5)]
        for p, e in enumerate(lifts):
            worst_dim = max(worst_dim, abs(e.coords.shape[0] - bundle_dim(n, p)))
            if p >= 1:
                worst_proj = max(
                    worst_proj,
                    float(np.max(np.abs(project(e).coords - lifts[p - 1].coords))),
                )
        d0 = curve_derivative(spec, psi, 0)
        d2 = curve_derivative(spec, psi, 2)
        worst_second = max(
            worst_second,
            float(np.max(np.abs(d2 - (s * r) * d0)) / np.max(np.abs((s * r) * d0))),
        )
        hh = 1e-4
        for m_ord in range(1, 4):
            fd = (
                curve_derivative(spec, psi + hh, m_ord - 1)
                - curve_derivative(spec, psi - hh, m_ord - 1)
            ) / (2 * hh)
            dm = curve_derivative(spec, psi, m_ord)
            scale = max(1.0, float(np.max(np.abs(dm))))
            worst_lift_fd = max(worst_lift_fd, float(np.max(np.abs(fd - dm))) / scale)
    checks.append(Check("lift_dims", worst_dim, 0.0))
    checks.append(Check("lift_projection", worst_proj, 0.0))
    checks.append(Check("lift_second_derivative", worst_second, 1e-10))
    checks.append(Check("lift_fd", worst_lift_fd, 1e-6))

    # random isometry products: defect, form preservation, quadric images
    worst_defect = worst_form = worst_image = worst_pair = 0.0
    for _ in range(_TRANSFORM_TRIALS):
        m = _random_isometry(sig, rng)
        worst_defect = max(worst_defect, isometry_defect(m))
        u = rng.uniform(-1.0, 1.0, n)
        vv = rng.uniform(-1.0, 1.0, n)
        ip = inner_product(u, vv, sig)
        err = abs(inner_product(apply(m, u), apply(m, vv), sig) - ip)
        worst_form = max(worst_form, err / (1.0 + abs(ip)))
        psi = float(rng.uniform(-1.0, 1.0))
        q = apply(m, point_at(psi, spec))
        worst_image = max(worst_image, abs(inner_product(q, q, sig) - r2))
        qv = apply(m, velocity_at(psi, spec))
        worst_pair = max(worst_pair, abs(inner_product(q, qv, sig)))
    checks.append(Check("isometry_defect", worst_defect, 1e-10))
    checks.append(Check("isometry_form", worst_form, 1e-10))
    checks.append(Check("isometry_quadric", worst_image, 1e-9 * r2))
    checks.append(Check("isometry_pair_orthogonality", worst_pair, 1e-10 * r2))

    # for the (1,1) plane a boost acts as a parameter shift on the curve
    if s == 1 and r == 1:
        worst_shift = 0.0
        for a in np.linspace(-1.0, 1.0, 9):
            g = boost(sig, 0, 1, float(a))
            for psi in np.linspace(psi_start, psi_end, 21):
                got = apply(g, point_at(psi, spec)).coords
                want = point_at(psi + float(a), spec).coords
                worst_shift = max(worst_shift, float(np.max(np.abs(got - want))))
        checks.append(Check("boost_translation", worst_shift, 1e-10))

    return CellReport(sig, radius, tuple(checks))


def run_sweep(
    max_sig: int = 4,
    radii=(1.0,),
    psi_start: float = -2.0,
    psi_end: float = 2.0,
    samples: int = 100,
    steps: int = 2000,
    tol: float = 1e-9,
    seed: int = DEFAULT_SEED,
    fault_r_eff: bool = False,
):
    """Run the battery over s, r in 1..max_sig and every radius.

    Returns one CellReport per (s, r, radius), ordered by (s, r, radius).
    """
    if max_sig < 1:
        raise ValueError(f"max_sig must be at least 1, got {max_sig}")
    reports = []
    for s in range(1, max_sig + 1):
        for r in range(1, max_sig + 1):
            for radius in radii:
                reports.append(
                    run_cell_checks(
                        Signature(s, r),
                        float(radius),
                        psi_start=psi_start,
                        psi_end=psi_end,
                        samples=samples,
                        steps=steps,
                        tol=tol,
                        seed=seed,
                        fault_r_eff=fault_r_eff,
                    )
                )
    return reports
