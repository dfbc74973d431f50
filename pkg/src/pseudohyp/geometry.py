"""Signature (s, r) geometry: points, the indefinite inner product, and the
uniform sinh/cosh curve family on the constant-form quadric.

Coordinates are laid out as [t-block | x-block]: s time-like axes carrying
weight -1 in the product, followed by r space-like axes carrying weight +1.
The quadric of constant R is the set -sum(t_i^2) + sum(x_j^2) = R^2, and the
curve family produced by `point_at` stays on it for every parameter value.

Everything here is a pure function of its inputs; values can be shared freely
across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "Signature",
    "PseudoPoint",
    "TangentVector",
    "CurveSpec",
    "inner_product",
    "effective_radius",
    "point_at",
    "velocity_at",
    "is_on_hyperboloid",
    "is_h_orthogonal",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Signature:
    """Axis counts of the quadratic form: s minus signs, r plus signs.

    Degenerate signatures (s = 0 or r = 0) are rejected: the curve formulas
    divide by s and by sqrt(r).
    """

    s: int
    r: int

    def __post_init__(self):
        if not isinstance(self.s, int) or not isinstance(self.r, int):
            raise TypeError("signature counts must be integers")
        if self.s < 1 or self.r < 1:
            raise ValueError(f"signature needs s >= 1 and r >= 1, got ({self.s}, {self.r})")

    @property
    def n(self) -> int:
        """Total coordinate count, s + r."""
        return self.s + self.r

    @property
    def signs(self) -> np.ndarray:
        """Diagonal weights of the product: s copies of -1, then r copies of +1."""
        out = np.ones(self.n)
        out[: self.s] = -1.0
        return out


def _check_coords(coords, sig: Signature, what: str) -> np.ndarray:
    arr = np.asarray(coords, dtype=float)
    if arr.shape != (sig.n,):
        raise ValueError(
            f"{what} must have {sig.n} coordinates for signature "
            f"({sig.s},{sig.r}), got shape {arr.shape}"
        )
    return arr


@dataclass(eq=False)
class PseudoPoint:
    """A point with coordinates [t_1..t_s, x_{s+1}..x_n]."""

    sig: Signature
    coords: np.ndarray

    def __post_init__(self):
        self.coords = _check_coords(self.coords, self.sig, "point")

    @classmethod
    def from_blocks(cls, sig: Signature, t, x) -> "PseudoPoint":
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float)
        if t.shape != (sig.s,) or x.shape != (sig.r,):
            raise ValueError(
                f"blocks must have lengths ({sig.s}, {sig.r}), "
                f"got ({t.shape}, {x.shape})"
            )
        return cls(sig, np.concatenate((t, x)))

    @property
    def t(self) -> np.ndarray:
        """Time-like block."""
        return self.coords[: self.sig.s]

    @property
    def x(self) -> np.ndarray:
        """Space-like block."""
        return self.coords[self.sig.s :]


@dataclass(eq=False)
class TangentVector:
    """Derivative of a curve at a point; same [dt-block | dx-block] layout."""

    sig: Signature
    coords: np.ndarray

    def __post_init__(self):
        self.coords = _check_coords(self.coords, self.sig, "tangent vector")

    @classmethod
    def from_blocks(cls, sig: Signature, dt, dx) -> "TangentVector":
        dt = np.asarray(dt, dtype=float)
        dx = np.asarray(dx, dtype=float)
        if dt.shape != (sig.s,) or dx.shape != (sig.r,):
            raise ValueError(
                f"blocks must have lengths ({sig.s}, {sig.r}), "
                f"got ({dt.shape}, {dx.shape})"
            )
        return cls(sig, np.concatenate((dt, dx)))

    @property
    def dt(self) -> np.ndarray:
        return self.coords[: self.sig.s]

    @property
    def dx(self) -> np.ndarray:
        return self.coords[self.sig.s :]


@dataclass(frozen=True)
class CurveSpec:
    """Parameters of the uniform curve: a signature and the quadric constant R.

    The curve amplitude is the effective radius R/sqrt(r); with it the curve
    satisfies -sum(t_i^2) + sum(x_j^2) = R^2 identically, since the r equal
    spatial amplitudes contribute r * (R/sqrt(r))^2 = R^2.
    """

    sig: Signature
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def r_eff(self) -> float:
        """Curve amplitude R/sqrt(r)."""
        return effective_radius(self.radius, self.sig)

    @property
    def frequency(self) -> float:
        """sqrt(s*r), the single growth rate shared by every coordinate."""
        return math.sqrt(self.sig.s * self.sig.r)


def _as_coords(obj, sig: Signature, what: str) -> np.ndarray:
    if isinstance(obj, (PseudoPoint, TangentVector)):
        if obj.sig != sig:
            raise ValueError(
                f"{what} has signature ({obj.sig.s},{obj.sig.r}), "
                f"expected ({sig.s},{sig.r})"
            )
        return obj.coords
    return _check_coords(obj, sig, what)


def inner_product(u, v, sig: Signature) -> float:
    """Indefinite product -sum_{t-block} u_i*v_i + sum_{x-block} u_j*v_j.

    Accepts raw length-n sequences as well as PseudoPoint / TangentVector
    (their signature must match `sig`). The signed terms are summed with
    math.fsum: the two blocks cancel almost exactly for on-quadric pairs,
    and an exact sum keeps that cancellation from picking up rounding noise.
    """
    uc = _as_coords(u, sig, "u")
    vc = _as_coords(v, sig, "v")
    s = sig.s
    terms = [-uc[i] * vc[i] for i in range(s)]
    terms += [uc[i] * vc[i] for i in range(s, sig.n)]
    return math.fsum(terms)


def effective_radius(radius: float, sig: Signature) -> float:
    """Amplitude R/sqrt(r) that puts the uniform curve on the quadric of R.

    Satisfies r * effective_radius**2 == radius**2 to machine precision.
    """
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    return radius / math.sqrt(sig.r)


def point_at(psi: float, spec: CurveSpec) -> PseudoPoint:
    """Point of the uniform curve at parameter psi.

    Every time-like coordinate equals sqrt(r/s) * R_eff * sinh(sqrt(s*r)*psi)
    and every space-like coordinate equals R_eff * cosh(sqrt(s*r)*psi). Each
    block is filled from one scalar so its entries are bitwise identical.
    """
    sig = spec.sig
    w = spec.frequency
    t_val = math.sqrt(sig.r / sig.s) * spec.r_eff * math.sinh(w * psi)
    x_val = spec.r_eff * math.cosh(w * psi)
    coords = np.empty(sig.n)
    coords[: sig.s] = t_val
    coords[sig.s :] = x_val
    return PseudoPoint(sig, coords)


def velocity_at(psi: float, spec: CurveSpec) -> TangentVector:
    """Parameter derivative of `point_at`.

    Time-like components are r * R_eff * cosh(sqrt(s*r)*psi), space-like
    components sqrt(s*r) * R_eff * sinh(sqrt(s*r)*psi). The result is
    orthogonal to the point in the signature product.
    """
    sig = spec.sig
    w = spec.frequency
    dt_val = sig.r * spec.r_eff * math.cosh(w * psi)
    dx_val = w * spec.r_eff * math.sinh(w * psi)
    coords = np.empty(sig.n)
    coords[: sig.s] = dt_val
    coords[sig.s :] = dx_val
    return TangentVector(sig, coords)


def is_on_hyperboloid(p: PseudoPoint, radius: float, tol: float = DEFAULT_TOL) -> bool:
    """True when |<p, p> - radius^2| <= tol."""
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return abs(inner_product(p, p, p.sig) - radius * radius) <= tol


def is_h_orthogonal(p: PseudoPoint, v: TangentVector, tol: float = DEFAULT_TOL) -> bool:
    """True when |<p, v>| <= tol in the signature product."""
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if p.sig != v.sig:
        raise ValueError(
            f"signature mismatch: point ({p.sig.s},{p.sig.r}) "
            f"vs vector ({v.sig.s},{v.sig.r})"
        )
    return abs(inner_product(p, v, p.sig)) <= tol
