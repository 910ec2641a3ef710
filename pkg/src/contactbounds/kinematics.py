"""Reference geometry and the deformation families.

Two coordinated bodies occupy axis-aligned boxes that share the plane
X = x_c. Deformations are drawn from three families:

* TriaxialStretch: x = a X + b, transverse contraction 1/sqrt(a),
* StretchBend: plane sections X = const are bent onto cylinders of
  radius r(X) = sqrt(2 a X + b), with azimuthal stretch A r / sqrt(a)
  and axial stretch 1 / (A sqrt(a)),
* Homogeneous: x = F0 X + t (general affine, not necessarily isochoric).

The first two families are isochoric by construction; their gradients are
reported in the principal frame (radial, azimuthal, axial for bending).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameters, NonPositiveJacobian, OutOfDomain
from .tensor3 import as_mat3, det, sym_eigenvalues

__all__ = [
    "Box3",
    "TriaxialStretch",
    "StretchBend",
    "Homogeneous",
    "StretchTriple",
    "deformation_gradient",
    "principal_stretches",
    "jacobian",
    "placement",
    "displacement",
    "image_volume",
    "injectivity_check",
]

#: smallest admissible bending radius; r(X) below this is rejected
R_MIN = 1e-6

#: boxes are inflated by this amount for containment checks
DOMAIN_TOL = 1e-12


@dataclass(frozen=True)
class Box3:
    """Axis-aligned box (x_lo, x_hi) x (y_lo, y_hi) x (z_lo, z_hi)."""

    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float
    z_lo: float
    z_hi: float

    def __post_init__(self):
        for lo, hi, ax in (
            (self.x_lo, self.x_hi, "x"),
            (self.y_lo, self.y_hi, "y"),
            (self.z_lo, self.z_hi, "z"),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise InvalidParameters(
                    "box %s-range (%r, %r) must be finite with lo < hi" % (ax, lo, hi)
                )

    def volume(self):
        return (
            (self.x_hi - self.x_lo)
            * (self.y_hi - self.y_lo)
            * (self.z_hi - self.z_lo)
        )

    def contains(self, X, tol=DOMAIN_TOL):
        x, y, z = float(X[0]), float(X[1]), float(X[2])
        return (
            self.x_lo - tol <= x <= self.x_hi + tol
            and self.y_lo - tol <= y <= self.y_hi + tol
            and self.z_lo - tol <= z <= self.z_hi + tol
        )

    def center(self):
        return np.array(
            [
                0.5 * (self.x_lo + self.x_hi),
                0.5 * (self.y_lo + self.y_hi),
                0.5 * (self.z_lo + self.z_hi),
            ]
        )


@dataclass(frozen=True)
class TriaxialStretch:
    """x = a X + b, y = Y / sqrt(a), z = Z / sqrt(a)."""

    a: float
    b: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise InvalidParameters("stretch a = %r must be positive" % (self.a,))
        if not math.isfinite(self.b):
            raise InvalidParameters("offset b must be finite")


@dataclass(frozen=True)
class StretchBend:
    """Bending about the z axis: r(X) = sqrt(2 a X + b), theta = A Y / sqrt(a)."""

    A: float
    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.A) and self.A > 0.0):
            raise InvalidParameters("angular rate A = %r must be positive" % (self.A,))
        if not (math.isfinite(self.a) and self.a > 0.0):
            raise InvalidParameters("stretch a = %r must be positive" % (self.a,))
        if not math.isfinite(self.b):
            raise InvalidParameters("offset b must be finite")


@dataclass(frozen=True)
class Homogeneous:
    """x = F0 X + t."""

    F0: np.ndarray
    t: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        object.__setattr__(self, "F0", as_mat3(self.F0))
        t = np.asarray(self.t, dtype=float)
        if t.shape != (3,) or not np.all(np.isfinite(t)):
            raise InvalidParameters("translation t must be a finite 3-vector")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class StretchTriple:
    """Principal stretches in family order (not sorted)."""

    l1: float
    l2: float
    l3: float

    def as_tuple(self):
        return (self.l1, self.l2, self.l3)

    def max(self):
        return max(self.l1, self.l2, self.l3)


def _check_domain(X, domain):
    if domain is not None and not domain.contains(X):
        raise OutOfDomain("point %s outside reference box" % (np.asarray(X),))


def _bend_radius(m, X0):
    rho = 2.0 * m.a * X0 + m.b
    if rho < R_MIN**2:
        raise InvalidParameters(
            "bending radius^2 = %.3e below minimum at X = %.6g" % (rho, X0)
        )
    return math.sqrt(rho)


def deformation_gradient(map_, X, domain=None):
    """Deformation gradient at X.

    For TriaxialStretch and Homogeneous this is the Cartesian gradient;
    for StretchBend it is expressed in the local principal frame
    (e_r, e_theta, e_z), where it is diagonal.
    """
    _check_domain(X, domain)
    if isinstance(map_, TriaxialStretch):
        a = map_.a
        s = 1.0 / math.sqrt(a)
        return np.diag([a, s, s])
    if isinstance(map_, StretchBend):
        r = _bend_radius(map_, float(X[0]))
        sa = math.sqrt(map_.a)
        return np.diag([map_.a / r, map_.A * r / sa, 1.0 / (map_.A * sa)])
    if isinstance(map_, Homogeneous):
        return map_.F0.copy()
    raise InvalidParameters("unknown deformation map %r" % (map_,))


def principal_stretches(map_, X, domain=None):
    """Principal stretches at X, in family order."""
    F = deformation_gradient(map_, X, domain)
    if isinstance(map_, (TriaxialStretch, StretchBend)):
        return StretchTriple(F[0, 0], F[1, 1], F[2, 2])
    # general affine: singular values, descending
    w = sym_eigenvalues(F.T @ F)
    w = [math.sqrt(max(v, 0.0)) for v in w]
    return StretchTriple(*w)


def jacobian(map_, X, domain=None):
    """det of the deformation gradient; raises if not positive."""
    J = det(deformation_gradient(map_, X, domain))
    if J <= 0.0:
        raise NonPositiveJacobian("det F = %.6g at X = %s" % (J, np.asarray(X)))
    return J


def placement(map_, X, domain=None):
    """Image point chi(X) in Cartesian coordinates."""
    _check_domain(X, domain)
    x, y, z = float(X[0]), float(X[1]), float(X[2])
    if isinstance(map_, TriaxialStretch):
        s = 1.0 / math.sqrt(map_.a)
        return np.array([map_.a * x + map_.b, s * y, s * z])
    if isinstance(map_, StretchBend):
        r = _bend_radius(map_, x)
        sa = math.sqrt(map_.a)
        th = map_.A * y / sa
        return np.array([r * math.cos(th), r * math.sin(th), z / (map_.A * sa)])
    if isinstance(map_, Homogeneous):
        return map_.F0 @ np.array([x, y, z]) + map_.t
    raise InvalidParameters("unknown deformation map %r" % (map_,))


def displacement(map_, X, domain=None):
    """u(X) = chi(X) - X in Cartesian coordinates."""
    return placement(map_, X, domain) - np.asarray(X, dtype=float)


def image_volume(map_, domain):
    """Volume of chi(domain), analytic per family."""
    dx = domain.x_hi - domain.x_lo
    dy = domain.y_hi - domain.y_lo
    dz = domain.z_hi - domain.z_lo
    if isinstance(map_, TriaxialStretch):
        return dx * dy * dz
    if isinstance(map_, StretchBend):
        r_lo = _bend_radius(map_, domain.x_lo)
        r_hi = _bend_radius(map_, domain.x_hi)
        sa = math.sqrt(map_.a)
        # sectors overlap once the sweep exceeds a full turn
        theta = min(map_.A * dy / sa, 2.0 * math.pi)
        return 0.5 * (r_hi**2 - r_lo**2) * theta * dz / (map_.A * sa)
    if isinstance(map_, Homogeneous):
        J = det(map_.F0)
        if J <= 0.0:
            raise NonPositiveJacobian("det F0 = %.6g" % J)
        return J * dx * dy * dz
    raise InvalidParameters("unknown deformation map %r" % (map_,))


def injectivity_check(map_, domain, quad_order=8):
    """Volume form of the injectivity test.

    True iff the integral of det F over the reference box does not exceed
    the geometric volume of the image (up to quadrature tolerance). The
    families satisfy it with equality; a map that winds by more than a
    full turn fails.
    """
    nodes, weights = np.polynomial.legendre.leggauss(quad_order)
    total = 0.0
    for lo, hi in (
        (domain.x_lo, domain.x_hi),
        (domain.y_lo, domain.y_hi),
        (domain.z_lo, domain.z_hi),
    ):
        if not (lo < hi):
            raise InvalidParameters("degenerate box")
    ax = lambda lo, hi: (0.5 * (hi - lo) * nodes + 0.5 * (hi + lo), 0.5 * (hi - lo) * weights)
    xs, wx = ax(domain.x_lo, domain.x_hi)
    ys, wy = ax(domain.y_lo, domain.y_hi)
    zs, wz = ax(domain.z_lo, domain.z_hi)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            for k, z in enumerate(zs):
                total += wx[i] * wy[j] * wz[k] * jacobian(map_, (x, y, z))
    vol = image_volume(map_, domain)
    return total <= vol + 1e-9 * max(1.0, abs(vol))
