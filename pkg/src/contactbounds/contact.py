"""Two-body contact geometry, tractions, and admissibility checks.

Body 1 occupies the left box and is loaded on its outer face X = x_lo by
a dead load of magnitude tau per unit reference area (tau < 0 pushes the
bodies together). Body 2 is held on its outer face X = x_hi by prescribed
placements. The shared plane X = x_c is the potential contact face.

Two traction bookkeepings coexist on purpose. evaluate_contact reports
Cauchy (per current area) contact tractions, which is what the load
interval formulas use. check_static enforces nominal (per reference
area) matching, which is the pairing under which the energy identities
in the energy module close. They agree for equal transverse stretches
and differ otherwise; neither is a bug.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConstraintViolated,
    FamilyMismatch,
    InvalidParameters,
)
from .kinematics import (
    Box3,
    Homogeneous,
    StretchBend,
    TriaxialStretch,
    deformation_gradient,
    placement,
)
from .material import (
    CONSTRAINT_TOL,
    Constant,
    NeoHookeanCompressible,
    NeoHookeanIncompressible,
    RadialProfile,
    cauchy_stress,
    piola_stress,
    pressure_at,
)
from .tensor3 import det

__all__ = [
    "BodySpec",
    "DirichletData",
    "SystemSpec",
    "ContactEvaluation",
    "AdmissibilityReport",
    "gap_value",
    "contact_traction",
    "nominal_traction",
    "evaluate_contact",
    "check_kinematic",
    "check_static",
    "solve_radial_pressure",
]

#: |gap| at or below this counts as closed contact
GAP_TOL = 1e-10

#: admissibility tolerances, keyed like AdmissibilityReport.residuals
TOLERANCES = {
    "dirichlet": 1e-9,
    "gap": 1e-12,
    "constraint": 1e-8,
    "equilibrium": 1e-8,
    "neumann": 1e-8,
    "contact_traction_sign": 1e-10,
    "action_reaction": 1e-8,
}

#: number of fixed-step intervals for the radial equilibrium integration
RADIAL_GRID = 2000


@dataclass(frozen=True)
class BodySpec:
    """One body: reference box, material, deformation, pressure field."""

    domain: Box3
    material: object
    map: object
    pressure: object = Constant(0.0)

    def __post_init__(self):
        if isinstance(self.material, NeoHookeanIncompressible) and isinstance(
            self.map, Homogeneous
        ):
            J = det(self.map.F0)
            if abs(J - 1.0) > CONSTRAINT_TOL:
                raise ConstraintViolated(
                    "incompressible body with |det F0 - 1| = %.3e" % abs(J - 1.0)
                )
        if isinstance(self.map, TriaxialStretch) and isinstance(
            self.pressure, RadialProfile
        ):
            raise InvalidParameters("triaxial bodies take a Constant pressure field")


@dataclass(frozen=True)
class DirichletData:
    """Prescribed placement maps.

    map2 pins body 2 (its whole deformation for these families). For the
    bending family map1 additionally pins body 1's axial faces. None means
    "use the body's own map", i.e. the trial satisfies its data trivially.
    """

    map1: object = None
    map2: object = None


@dataclass(frozen=True)
class SystemSpec:
    """The coordinated pair plus contact parameters.

    d_allow is the allowed interpenetration depth (>= 0), g the cohesive
    traction cap (g = 0 is the pure compression case).
    """

    body1: BodySpec
    body2: BodySpec
    d_allow: float = 0.0
    g: float = 0.0
    dirichlet: DirichletData = field(default_factory=DirichletData)

    def __post_init__(self):
        if abs(self.body1.domain.x_hi - self.body2.domain.x_lo) > 1e-12:
            raise InvalidParameters("bodies must share the contact plane X = x_c")
        for lo1, lo2, hi1, hi2, ax in (
            (
                self.body1.domain.y_lo,
                self.body2.domain.y_lo,
                self.body1.domain.y_hi,
                self.body2.domain.y_hi,
                "y",
            ),
            (
                self.body1.domain.z_lo,
                self.body2.domain.z_lo,
                self.body1.domain.z_hi,
                self.body2.domain.z_hi,
                "z",
            ),
        ):
            if abs(lo1 - lo2) > 1e-12 or abs(hi1 - hi2) > 1e-12:
                raise InvalidParameters("bodies must share the %s-range" % ax)
        if not (math.isfinite(self.d_allow) and self.d_allow >= 0.0):
            raise InvalidParameters("d_allow must be >= 0")
        if not (math.isfinite(self.g) and self.g >= 0.0):
            raise InvalidParameters("cohesive cap g must be >= 0")

    @property
    def x_c(self):
        return self.body1.domain.x_hi


@dataclass(frozen=True)
class ContactEvaluation:
    """Pointwise contact state at the shared plane (Cauchy tractions)."""

    gap: float
    traction_normal: float
    complementarity_residual: float
    action_reaction_residual: float
    regime: str  # "closed" or "open"


@dataclass(frozen=True)
class AdmissibilityReport:
    """Residuals of one side of the admissibility conditions.

    kinematic_ok / static_ok is None when that side was not checked.
    """

    kinematic_ok: object
    static_ok: object
    residuals: dict


def _face_radius(map_, x_face):
    rho = 2.0 * map_.a * x_face + map_.b
    if rho <= 0.0:
        raise InvalidParameters("bending face radius^2 = %.3e" % rho)
    return math.sqrt(rho)


def gap_value(system):
    """Normal gap at the contact plane: body 1 face minus body 2 face.

    Negative means separated (body 1 face short of the plane reached by
    body 2), positive means interpenetration.
    """
    m1, m2 = system.body1.map, system.body2.map
    xc = system.x_c
    if isinstance(m1, TriaxialStretch) and isinstance(m2, TriaxialStretch):
        return (m1.a * xc + m1.b) - (m2.a * xc + m2.b)
    if isinstance(m1, StretchBend) and isinstance(m2, StretchBend):
        return _face_radius(m1, xc) - _face_radius(m2, xc)
    if isinstance(m1, Homogeneous) and isinstance(m2, Homogeneous):
        Xc = np.array([xc, system.body1.domain.center()[1], system.body1.domain.center()[2]])
        return float(placement(m1, Xc)[0] - placement(m2, Xc)[0])
    raise FamilyMismatch(
        "bodies deform in different families: %s vs %s"
        % (type(m1).__name__, type(m2).__name__)
    )


def contact_traction(body, at_r=None):
    """Cauchy normal traction sigma_nn on the contact-plane face.

    For the bending family at_r selects the face radius (required);
    triaxial and homogeneous states are uniform so it is ignored.
    """
    m = body.map
    if isinstance(m, TriaxialStretch):
        F = deformation_gradient(m, (0.0, 0.0, 0.0))
        p = pressure_at(body.pressure)
        sig = cauchy_stress(body.material, F, p)
        return float(sig[0, 0])
    if isinstance(m, StretchBend):
        if at_r is None:
            raise InvalidParameters("bending traction needs the face radius at_r")
        sa = math.sqrt(m.a)
        F = np.diag([m.a / at_r, m.A * at_r / sa, 1.0 / (m.A * sa)])
        p = pressure_at(body.pressure, at_r)
        sig = cauchy_stress(body.material, F, p)
        return float(sig[0, 0])
    if isinstance(m, Homogeneous):
        p = pressure_at(body.pressure)
        sig = cauchy_stress(body.material, m.F0, p)
        return float(sig[0, 0])
    raise InvalidParameters("unknown deformation map %r" % (m,))


def nominal_traction(body, x_face):
    """First Piola normal traction (P N) . N on the face X = x_face.

    This is force per unit reference area; it is the quantity matched
    across the interface by the energy identities.
    """
    m = body.map
    if isinstance(m, StretchBend):
        r = _face_radius(m, x_face)
        return contact_traction(body, at_r=r) * r / m.a
    if isinstance(m, TriaxialStretch):
        return contact_traction(body) / m.a
    if isinstance(m, Homogeneous):
        p = pressure_at(body.pressure)
        P = piola_stress(body.material, m.F0, p)
        return float(P[0, 0])
    raise InvalidParameters("unknown deformation map %r" % (m,))


def evaluate_contact(system):
    """Gap, tractions, and complementarity at the contact plane."""
    gap = gap_value(system) - system.d_allow
    xc = system.x_c
    b1, b2 = system.body1, system.body2
    if isinstance(b1.map, StretchBend):
        t1 = contact_traction(b1, at_r=_face_radius(b1.map, xc))
        t2 = contact_traction(b2, at_r=_face_radius(b2.map, xc))
    else:
        t1 = contact_traction(b1)
        t2 = contact_traction(b2)
    regime = "closed" if abs(gap) <= GAP_TOL else "open"
    comp = abs(gap) * abs(t1 - system.g)
    return ContactEvaluation(
        gap=gap,
        traction_normal=t1,
        complementarity_residual=comp,
        action_reaction_residual=abs(t1 - t2),
        regime=regime,
    )


def _face_points(domain, axis, value, n=5):
    # n x n sample grid on the face {axis = value}
    us = {"x": ("y_lo", "y_hi"), "y": ("x_lo", "x_hi"), "z": ("x_lo", "x_hi")}[axis]
    vs = {"x": ("z_lo", "z_hi"), "y": ("z_lo", "z_hi"), "z": ("y_lo", "y_hi")}[axis]
    u = np.linspace(getattr(domain, us[0]), getattr(domain, us[1]), n)
    v = np.linspace(getattr(domain, vs[0]), getattr(domain, vs[1]), n)
    pts = []
    for ui in u:
        for vi in v:
            if axis == "x":
                pts.append((value, ui, vi))
            elif axis == "y":
                pts.append((ui, value, vi))
            else:
                pts.append((ui, vi, value))
    return pts


def _volume_points(domain, n=5):
    xs = np.linspace(domain.x_lo, domain.x_hi, n)
    ys = np.linspace(domain.y_lo, domain.y_hi, n)
    zs = np.linspace(domain.z_lo, domain.z_hi, n)
    return [(x, y, z) for x in xs for y in ys for z in zs]


def _constraint_residual(body):
    if not isinstance(body.material, NeoHookeanIncompressible):
        return 0.0
    worst = 0.0
    for X in _volume_points(body.domain):
        F = deformation_gradient(body.map, X)
        worst = max(worst, abs(det(F) - 1.0))
    return worst


def check_kinematic(system, dirichlet=None):
    """Kinematic admissibility: prescribed placements, gap, constraint.

    The held face of body 2 prescribes the full placement. For the
    bending family the axial faces additionally prescribe the axial
    coordinate (plane sections stay plane) and the side flanks must stay
    inside the data's meridian planes; the in-plane components on those
    faces are free, matching the traction components that vanish there.
    dirichlet overrides the data stored on the system; None maps are
    satisfied trivially.
    """
    data = dirichlet if dirichlet is not None else system.dirichlet
    worst_d = 0.0
    if data.map2 is not None:
        for X in _face_points(system.body2.domain, "x", system.body2.domain.x_hi):
            d = placement(system.body2.map, X) - placement(data.map2, X)
            worst_d = max(worst_d, float(np.max(np.abs(d))))
    if isinstance(system.body1.map, StretchBend):
        for body, dmap in ((system.body1, data.map1), (system.body2, data.map2)):
            if dmap is None:
                continue
            for zv in (body.domain.z_lo, body.domain.z_hi):
                for X in _face_points(body.domain, "z", zv):
                    dz = placement(body.map, X)[2] - placement(dmap, X)[2]
                    worst_d = max(worst_d, abs(dz))
            for yv in (body.domain.y_lo, body.domain.y_hi):
                th = dmap.A * yv / math.sqrt(dmap.a)
                n = np.array([-math.sin(th), math.cos(th), 0.0])
                for X in _face_points(body.domain, "y", yv):
                    worst_d = max(worst_d, abs(float(placement(body.map, X) @ n)))
    gap_res = max(0.0, gap_value(system) - system.d_allow)
    con_res = max(_constraint_residual(system.body1), _constraint_residual(system.body2))
    residuals = {
        "dirichlet": worst_d,
        "gap": gap_res,
        "constraint": con_res,
    }
    ok = all(residuals[k] <= TOLERANCES[k] for k in residuals)
    return AdmissibilityReport(kinematic_ok=ok, static_ok=None, residuals=residuals)


def _sigma_rr(body, r):
    return contact_traction(body, at_r=r)


def _equilibrium_residual(body):
    m = body.map
    if isinstance(m, (TriaxialStretch, Homogeneous)):
        # constant state: divergence vanishes identically
        return 0.0
    C = body.material.C
    a, A = m.a, m.A
    r_in = _face_radius(m, body.domain.x_lo)
    r_out = _face_radius(m, body.domain.x_hi)
    rs = np.linspace(r_in, r_out, 101)
    worst = 0.0
    for r in rs:
        # radial momentum balance: d(sigma_rr)/dr = (sigma_tt - sigma_rr)/r
        rhs = C * (A**2 * r / a - a**2 / r**3)
        if isinstance(body.pressure, RadialProfile):
            dsig = -2.0 * C * a**2 / r**3 - body.pressure.derivative(r)
        else:
            dsig = -2.0 * C * a**2 / r**3
        worst = max(worst, abs(dsig - rhs))
    return worst


def _neumann_residual(system, tau):
    b1, b2 = system.body1, system.body2
    if isinstance(b1.map, StretchBend):
        # dead load acts on the inner face, per unit reference area
        return abs(nominal_traction(b1, b1.domain.x_lo) - tau)
    worst = 0.0
    for body, loaded in ((b1, True), (b2, False)):
        m = body.map
        if isinstance(m, TriaxialStretch):
            F = deformation_gradient(m, (0.0, 0.0, 0.0))
        else:
            F = m.F0
        p = pressure_at(body.pressure)
        P = piola_stress(body.material, F, p)
        target = np.zeros((3, 3))
        if loaded:
            target[0, 0] = tau
        # column j is the traction on faces with normal +/- e_j; the
        # transverse faces are traction free, the loaded face carries tau
        resid = np.abs(P - target)
        if not loaded:
            resid[:, 0] = 0.0  # body 2 outer face is placement-controlled
        worst = max(worst, float(np.max(resid)))
    return worst


def check_static(system, tau):
    """Static admissibility under the dead load tau.

    Equilibrium, boundary tractions, contact traction sign, and nominal
    action-reaction at the interface. Residuals are per reference area.
    """
    b1, b2 = system.body1, system.body2
    xc = system.x_c
    eq = max(_equilibrium_residual(b1), _equilibrium_residual(b2))
    neu = _neumann_residual(system, tau)
    T1 = nominal_traction(b1, xc)
    T2 = nominal_traction(b2, xc)
    sign = max(0.0, T1 - system.g, T2 - system.g)
    con = max(_constraint_residual(b1), _constraint_residual(b2))
    residuals = {
        "equilibrium": eq,
        "neumann": neu,
        "contact_traction_sign": sign,
        "action_reaction": abs(T1 - T2),
        "constraint": con,
    }
    ok = all(residuals[k] <= TOLERANCES[k] for k in residuals)
    return AdmissibilityReport(kinematic_ok=None, static_ok=ok, residuals=residuals)


def solve_radial_pressure(body, boundary_traction, anchor="inner"):
    """Integrate the radial momentum balance across a bending body.

    boundary_traction is the Cauchy radial stress sigma_rr on the anchor
    face ("inner" or "outer"). Returns the pressure as a RadialProfile.
    The right-hand side (sigma_tt - sigma_rr)/r is pressure free, so the
    classic RK4 march is exact to O(h^4) with no stiffness concerns.
    """
    m = body.map
    if not isinstance(m, StretchBend):
        raise InvalidParameters("radial equilibrium applies to the bending family")
    if anchor not in ("inner", "outer"):
        raise InvalidParameters("anchor must be 'inner' or 'outer'")
    C = body.material.C
    a, A = m.a, m.A
    r_in = _face_radius(m, body.domain.x_lo)
    r_out = _face_radius(m, body.domain.x_hi)
    n = RADIAL_GRID
    rs = np.linspace(r_in, r_out, n + 1)

    def f(r):
        return C * (A**2 * r / a - a**2 / r**3)

    sig = np.empty(n + 1)
    if anchor == "inner":
        sig[0] = boundary_traction
        order = range(n)
        step = rs[1] - rs[0]
    else:
        sig[n] = boundary_traction
        order = range(n, 0, -1)
        step = rs[0] - rs[1]
    for i in order:
        j = i + 1 if anchor == "inner" else i - 1
        r0 = rs[i]
        k1 = f(r0)
        k2 = f(r0 + 0.5 * step)
        k3 = k2  # rhs has no sigma dependence
        k4 = f(r0 + step)
        sig[j] = sig[i] + step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    p = C * a**2 / rs**2 - sig
    return RadialProfile(rs, p)
