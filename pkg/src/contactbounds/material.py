"""Hyperelastic material models and pointwise stress measures.

The workhorse is the incompressible neo-Hookean solid

    W(F) = (C / 2) (I1(F) - 3),     det F = 1,

whose first Piola-Kirchhoff stress carries a reaction pressure p:

    P = C F - p cof F.

At det F = 1 the cofactor equals the inverse transpose, so this agrees
with the usual C F - p F^{-T} while staying polynomial in F. A weakly
compressible variant replaces the constraint by a quadratic volumetric
penalty; there the pressure argument is ignored.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConstraintViolated, InvalidParameters, NonPositiveJacobian
from .tensor3 import cofactor, ddot, det

__all__ = [
    "NeoHookeanIncompressible",
    "NeoHookeanCompressible",
    "Constant",
    "RadialProfile",
    "pressure_at",
    "strain_energy",
    "constraint_value",
    "constraint_gradient",
    "piola_stress",
    "cauchy_stress",
    "complementary_density",
    "hessian_quadratic_form",
]

#: |det F - 1| beyond this violates the incompressibility constraint
CONSTRAINT_TOL = 1e-8


@dataclass(frozen=True)
class NeoHookeanIncompressible:
    C: float

    def __post_init__(self):
        if not (math.isfinite(self.C) and self.C > 0.0):
            raise InvalidParameters("modulus C = %r must be positive" % (self.C,))


@dataclass(frozen=True)
class NeoHookeanCompressible:
    C: float
    D: float

    def __post_init__(self):
        if not (math.isfinite(self.C) and self.C > 0.0):
            raise InvalidParameters("modulus C = %r must be positive" % (self.C,))
        if not (math.isfinite(self.D) and self.D > 0.0):
            raise InvalidParameters("penalty D = %r must be positive" % (self.D,))


@dataclass(frozen=True)
class Constant:
    """Spatially constant pressure field."""

    p: float

    def __post_init__(self):
        if not math.isfinite(self.p):
            raise InvalidParameters("pressure must be finite")


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Pressure sampled on a radial grid, evaluated by cubic spline."""

    r_grid: np.ndarray
    p_values: np.ndarray
    _spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        r = np.asarray(self.r_grid, dtype=float)
        p = np.asarray(self.p_values, dtype=float)
        if r.ndim != 1 or r.shape != p.shape or r.size < 4:
            raise InvalidParameters("profile needs matching 1-d grids, >= 4 points")
        if not (np.all(np.isfinite(r)) and np.all(np.isfinite(p))):
            raise InvalidParameters("profile values must be finite")
        if np.any(np.diff(r) <= 0.0):
            raise InvalidParameters("radial grid must be strictly increasing")
        object.__setattr__(self, "r_grid", r)
        object.__setattr__(self, "p_values", p)
        object.__setattr__(self, "_spline", CubicSpline(r, p))

    def __call__(self, r):
        return float(self._spline(r))

    def derivative(self, r):
        return float(self._spline(r, 1))


def pressure_at(pressure, r=None):
    """Evaluate a pressure field; RadialProfile needs the radius."""
    if isinstance(pressure, Constant):
        return pressure.p
    if isinstance(pressure, RadialProfile):
        if r is None:
            raise InvalidParameters("RadialProfile requires an evaluation radius")
        return pressure(r)
    raise InvalidParameters("unknown pressure field %r" % (pressure,))


def _check_det(F):
    J = det(F)
    if J <= 0.0:
        raise NonPositiveJacobian("det F = %.6g" % J)
    return J


def strain_energy(model, F):
    """Stored energy density W(F)."""
    F = np.asarray(F, dtype=float)
    J = _check_det(F)
    i1 = ddot(F, F)
    if isinstance(model, NeoHookeanIncompressible):
        if abs(J - 1.0) > CONSTRAINT_TOL:
            raise ConstraintViolated("|det F - 1| = %.3e" % abs(J - 1.0))
        return 0.5 * model.C * (i1 - 3.0)
    if isinstance(model, NeoHookeanCompressible):
        return 0.5 * model.C * (i1 - 3.0) + model.D * (J - 1.0) ** 2
    raise InvalidParameters("unknown material model %r" % (model,))


def constraint_value(F):
    """Incompressibility residual det F - 1."""
    return det(np.asarray(F, dtype=float)) - 1.0


def constraint_gradient(F):
    """d(det F)/dF = cof F."""
    return cofactor(np.asarray(F, dtype=float))


def piola_stress(model, F, pressure=0.0):
    """First Piola-Kirchhoff stress.

    For the incompressible model, pressure is the constraint reaction;
    for the compressible model it is ignored (forced to zero).
    """
    F = np.asarray(F, dtype=float)
    J = _check_det(F)
    if isinstance(model, NeoHookeanIncompressible):
        return model.C * F - pressure * cofactor(F)
    if isinstance(model, NeoHookeanCompressible):
        return model.C * F + 2.0 * model.D * (J - 1.0) * cofactor(F)
    raise InvalidParameters("unknown material model %r" % (model,))


def cauchy_stress(model, F, pressure=0.0):
    """sigma = J^{-1} P F^T."""
    F = np.asarray(F, dtype=float)
    J = _check_det(F)
    P = piola_stress(model, F, pressure)
    return (P @ F.T) / J


def complementary_density(model, F, pressure=0.0):
    """W_c = P : F - W, evaluated from the same P and W."""
    F = np.asarray(F, dtype=float)
    P = piola_stress(model, F, pressure)
    return ddot(P, F) - strain_energy(model, F)


def hessian_quadratic_form(model, F, pressure, G):
    """Second derivative of W + lambda (det F - 1) along G, lambda = -p.

    Uses the exact expansion det(F + t G) = det F + t cof(F):G
    + t^2 cof(G):F + t^3 det G, so the form is polynomial and exact.
    """
    F = np.asarray(F, dtype=float)
    G = np.asarray(G, dtype=float)
    c2 = ddot(cofactor(G), F)
    if isinstance(model, NeoHookeanIncompressible):
        return model.C * ddot(G, G) - pressure * 2.0 * c2
    if isinstance(model, NeoHookeanCompressible):
        J = det(F)
        c1 = ddot(cofactor(F), G)
        return model.C * ddot(G, G) + 2.0 * model.D * (c1**2 + (J - 1.0) * 2.0 * c2)
    raise InvalidParameters("unknown material model %r" % (model,))
