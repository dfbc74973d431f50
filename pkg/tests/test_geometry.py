"""Tests for the signature product, the quadric, and the closed-form curve."""

import math

import numpy as np
import pytest

from pseudohyp import (
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

SIGS = [Signature(s, r) for s in range(1, 5) for r in range(1, 5)]
RADII = (0.5, 1.0, 2.0)


def test_signature_validation():
    assert Signature(2, 3).n == 5
    for s, r in [(0, 1), (1, 0), (-1, 2), (2, -2)]:
        with pytest.raises(ValueError):
            Signature(s, r)
    with pytest.raises(TypeError):
        Signature(1.5, 2)


def test_signature_signs():
    sig = Signature(2, 3)
    assert np.array_equal(sig.signs, [-1.0, -1.0, 1.0, 1.0, 1.0])


def test_point_and_vector_blocks():
    sig = Signature(2, 3)
    p = PseudoPoint.from_blocks(sig, [1.0, 2.0], [3.0, 4.0, 5.0])
    assert np.array_equal(p.coords, [1, 2, 3, 4, 5])
    assert np.array_equal(p.t, [1, 2])
    assert np.array_equal(p.x, [3, 4, 5])
    v = TangentVector.from_blocks(sig, [1.0, 1.0], [0.0, 0.0, 2.0])
    assert np.array_equal(v.dt, [1, 1])
    assert np.array_equal(v.dx, [0, 0, 2])


def test_point_validation():
    with pytest.raises(ValueError):
        PseudoPoint(Signature(1, 1), [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        PseudoPoint.from_blocks(Signature(1, 2), [1.0, 2.0], [3.0])
    with pytest.raises(ValueError):
        TangentVector(Signature(2, 2), [0.0])


@pytest.mark.parametrize("radius", RADII)
def test_inner_product_initial_condition(radius):
    sig = Signature(1, 1)
    u = (0.0, radius)
    assert inner_product(u, u, sig) == radius * radius


def test_inner_product_zero_vector():
    rng = np.random.default_rng(7)
    for sig in SIGS:
        v = rng.uniform(-5, 5, sig.n)
        assert inner_product(np.zeros(sig.n), v, sig) == 0.0


def test_inner_product_hand_value():
    # -(1 + 4) + (9 + 16 + 25) = 45
    u = (1.0, 2.0, 3.0, 4.0, 5.0)
    assert inner_product(u, u, Signature(2, 3)) == 45.0


def test_inner_product_dimension_mismatch():
    sig = Signature(2, 3)
    with pytest.raises(ValueError):
        inner_product((1.0, 2.0), (1.0, 2.0, 3.0, 4.0, 5.0), sig)
    p = point_at(0.3, CurveSpec(Signature(1, 1), 1.0))
    with pytest.raises(ValueError):
        inner_product(p, np.zeros(5), sig)


def test_inner_product_symmetry_exact():
    rng = np.random.default_rng(42)
    for sig in SIGS:
        for _ in range(5):
            u = rng.uniform(-3, 3, sig.n)
            v = rng.uniform(-3, 3, sig.n)
            assert inner_product(u, v, sig) == inner_product(v, u, sig)


def test_inner_product_bilinear():
    rng = np.random.default_rng(43)
    for sig in SIGS:
        for _ in range(5):
            u, w, v = (rng.uniform(-2, 2, sig.n) for _ in range(3))
            a, b = rng.uniform(-3, 3, 2)
            lhs = inner_product(a * u + b * w, v, sig)
            rhs = a * inner_product(u, v, sig) + b * inner_product(w, v, sig)
            scale = 1.0 + abs(a * inner_product(u, v, sig)) + abs(b * inner_product(w, v, sig))
            assert abs(lhs - rhs) <= 1e-12 * scale


def test_effective_radius_values():
    assert effective_radius(1.0, Signature(1, 1)) == 1.0
    assert effective_radius(2.0, Signature(3, 4)) == 1.0
    assert effective_radius(math.sqrt(2.0), Signature(2, 2)) == 1.0


@pytest.mark.parametrize("sig", SIGS)
@pytest.mark.parametrize("radius", RADII)
def test_effective_radius_identity(sig, radius):
    r_eff = effective_radius(radius, sig)
    assert sig.r * r_eff * r_eff == pytest.approx(radius * radius, rel=1e-14)


def test_effective_radius_rejects_nonpositive():
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            effective_radius(bad, Signature(1, 1))
        with pytest.raises(ValueError):
            CurveSpec(Signature(1, 1), bad)


def test_effective_radius_puts_curve_on_quadric():
    # independent evaluation of the form, plain signed sum over the blocks
    spec = CurveSpec(Signature(3, 4), 2.0)
    p = point_at(0.7, spec)
    form = -sum(c * c for c in p.t) + sum(c * c for c in p.x)
    assert abs(form - 4.0) <= 1e-12


@pytest.mark.parametrize("sig", SIGS)
@pytest.mark.parametrize("radius", RADII)
def test_point_at_initial_condition(sig, radius):
    spec = CurveSpec(sig, radius)
    p = point_at(0.0, spec)
    assert np.all(p.t == 0.0)
    assert np.all(p.x == spec.r_eff)


def test_point_at_base_case_bitwise():
    spec = CurveSpec(Signature(1, 1), 1.0)
    for psi in np.linspace(-3, 3, 50):
        p = point_at(psi, spec)
        assert p.coords[0] == math.sinh(psi)
        assert p.coords[1] == math.cosh(psi)


def test_point_at_two_two_example():
    spec = CurveSpec(Signature(2, 2), math.sqrt(2.0))
    p = point_at(0.5, spec)
    want = [math.sinh(1.0), math.sinh(1.0), math.cosh(1.0), math.cosh(1.0)]
    assert np.array_equal(p.coords, want)
    form = -sum(c * c for c in p.t) + sum(c * c for c in p.x)
    assert abs(form - 2.0) <= 1e-12


def test_point_uniformity_bitwise():
    rng = np.random.default_rng(3)
    for sig in SIGS:
        spec = CurveSpec(sig, 1.5)
        for psi in rng.uniform(-3, 3, 10):
            p = point_at(psi, spec)
            v = velocity_at(psi, spec)
            assert np.all(p.t == p.t[0])
            assert np.all(p.x == p.x[0])
            assert np.all(v.dt == v.dt[0])
            assert np.all(v.dx == v.dx[0])


def test_velocity_base_case_bitwise():
    spec = CurveSpec(Signature(1, 1), 1.0)
    for psi in np.linspace(-3, 3, 50):
        v = velocity_at(psi, spec)
        assert v.coords[0] == math.cosh(psi)
        assert v.coords[1] == math.sinh(psi)


@pytest.mark.parametrize("sig", SIGS)
def test_velocity_at_zero(sig):
    spec = CurveSpec(sig, 2.0)
    v = velocity_at(0.0, spec)
    assert np.all(v.dt == sig.r * spec.r_eff)
    assert np.all(v.dx == 0.0)


def test_velocity_two_two_example():
    spec = CurveSpec(Signature(2, 2), math.sqrt(2.0))
    v = velocity_at(0.5, spec)
    want = [2 * math.cosh(1.0), 2 * math.cosh(1.0), 2 * math.sinh(1.0), 2 * math.sinh(1.0)]
    assert np.array_equal(v.coords, want)
    p = point_at(0.5, spec)
    # independent orthogonality check, plain signed sum
    form = -sum(a * b for a, b in zip(p.t, v.dt)) + sum(a * b for a, b in zip(p.x, v.dx))
    assert abs(form) <= 1e-12


@pytest.mark.parametrize("sig", SIGS)
@pytest.mark.parametrize("radius", RADII)
def test_velocity_matches_finite_difference(sig, radius):
    spec = CurveSpec(sig, radius)
    h = 1e-5
    bound = 1e-8 * max(1.0, sig.r * spec.r_eff)
    for psi in np.linspace(-0.9, 0.9, 19):
        fd = (point_at(psi + h, spec).coords - point_at(psi - h, spec).coords) / (2 * h)
        assert np.max(np.abs(fd - velocity_at(psi, spec).coords)) <= bound


@pytest.mark.parametrize("sig", SIGS)
@pytest.mark.parametrize("radius", RADII)
def test_curve_invariants(sig, radius):
    spec = CurveSpec(sig, radius)
    r2 = radius * radius
    for psi in np.linspace(-2, 2, 25):
        p = point_at(psi, spec)
        v = velocity_at(psi, spec)
        assert abs(inner_product(p, p, sig) - r2) <= 1e-9 * r2
        assert abs(inner_product(p, v, sig)) <= 1e-9 * r2
        assert abs(inner_product(v, v, sig) + sig.s * sig.r * r2) <= 1e-9 * sig.s * sig.r * r2


def test_velocity_norm_independent_oracle():
    # evaluate the closed forms directly, away from the library path
    s, r, radius, psi = 2, 3, 1.5, 0.8
    w = math.sqrt(s * r)
    a = radius / math.sqrt(r)
    dt = r * a * math.cosh(w * psi)
    dx = w * a * math.sinh(w * psi)
    norm = -s * dt * dt + r * dx * dx
    assert norm == pytest.approx(-s * r * radius * radius, rel=1e-12)


def test_is_on_hyperboloid_examples():
    spec = CurveSpec(Signature(1, 1), 1.0)
    assert is_on_hyperboloid(point_at(1.3, spec), 1.0, 1e-12)
    null_point = PseudoPoint(Signature(1, 1), [1.0, 1.0])
    assert not is_on_hyperboloid(null_point, 1.0, 1e-12)


def test_is_on_hyperboloid_random_sweep():
    # cosh^2 grows to ~2.7e10 at psi = 3 for s = r = 4, so the tolerance
    # follows the conditioning of the cancellation instead of a flat value
    rng = np.random.default_rng(11)
    eps = np.finfo(float).eps
    for sig in SIGS:
        spec = CurveSpec(sig, 1.0)
        w = spec.frequency
        for psi in rng.uniform(-3, 3, 100):
            tol = 64 * eps * max(1.0, math.cosh(w * psi) ** 2)
            assert is_on_hyperboloid(point_at(psi, spec), 1.0, tol)


def test_is_on_hyperboloid_rejects_bad_tol():
    p = point_at(0.0, CurveSpec(Signature(1, 1), 1.0))
    with pytest.raises(ValueError):
        is_on_hyperboloid(p, 1.0, 0.0)


def test_is_h_orthogonal_curve_pairs():
    for sig in SIGS:
        spec = CurveSpec(sig, 1.0)
        for psi in np.linspace(-1.5, 1.5, 41):
            assert is_h_orthogonal(point_at(psi, spec), velocity_at(psi, spec), 1e-10)


def test_is_h_orthogonal_examples():
    sig = Signature(1, 1)
    p = PseudoPoint(sig, [0.0, 2.0])
    for c in (-3.0, 0.5, 7.0):
        assert is_h_orthogonal(p, TangentVector(sig, [c, 0.0]), 1e-15)
    q = PseudoPoint(sig, [1.0, 2.0])
    assert not is_h_orthogonal(q, TangentVector(sig, [1.0, 2.0]), 1e-10)


def test_is_h_orthogonal_signature_mismatch():
    p = PseudoPoint(Signature(1, 1), [0.0, 1.0])
    v = TangentVector(Signature(1, 2), [1.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        is_h_orthogonal(p, v, 1e-10)


def test_curvespec_properties():
    spec = CurveSpec(Signature(2, 2), math.sqrt(2.0))
    assert spec.r_eff == 1.0
    assert spec.frequency == 2.0
