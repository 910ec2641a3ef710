"""Potential and complementary energies and the duality gap.

The potential energy of a trial deformation is the stored energy minus
the work of the dead load on the outer face of body 1. The complementary
energy of a trial stress state pairs the boundary tractions with the
prescribed placements on the held faces and subtracts the complementary
density. For a statically admissible stress field and a kinematically
admissible deformation the complementary value never exceeds the
potential value, with equality exactly at the solution pair; enclosure()
evaluates both sides.

Surface pairings follow the face roles of the two families. Triaxial:
the load face carries tau, the transverse faces are traction free, the
held face of body 2 pairs full placements. Bending: the held face pairs
the radial traction with the data radius, the axial faces pair the axial
traction with the data's axial placement, and the meridian flanks pair
to zero identically (the azimuthal traction is orthogonal to any
placement lying in the flank plane).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InadmissibleTrial, InvalidParameters, NonFiniteIntegrand
from .kinematics import (
    Homogeneous,
    StretchBend,
    TriaxialStretch,
    deformation_gradient,
    placement,
)
from .material import (
    complementary_density,
    piola_stress,
    pressure_at,
    strain_energy,
)
from .contact import DirichletData, check_kinematic, check_static
from .tensor3 import ddot

__all__ = [
    "QuadratureRule",
    "EnergyEnclosure",
    "integrate_volume",
    "integrate_face",
    "potential_energy",
    "complementary_energy",
    "divergence_identity_residual",
    "enclosure",
]

DEFAULT_ORDER = 8


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Tensor-product Gauss-Legendre rule, exact through degree 2n-1 per axis."""

    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if not (isinstance(self.order, int) and 1 <= self.order <= 64):
            raise InvalidParameters("quadrature order must be an int in [1, 64]")
        nodes, weights = np.polynomial.legendre.leggauss(self.order)
        object.__setattr__(self, "_nodes", nodes)
        object.__setattr__(self, "_weights", weights)

    def mapped(self, lo, hi):
        """Nodes and weights on (lo, hi)."""
        h = 0.5 * (hi - lo)
        return h * self._nodes + 0.5 * (hi + lo), h * self._weights


def _check_finite(v):
    if not math.isfinite(v):
        raise NonFiniteIntegrand("integrand returned %r" % (v,))
    return v


def integrate_volume(fn, domain, rule=None):
    """Integral of fn(X) over the box by tensor-product quadrature."""
    rule = rule or QuadratureRule()
    xs, wx = rule.mapped(domain.x_lo, domain.x_hi)
    ys, wy = rule.mapped(domain.y_lo, domain.y_hi)
    zs, wz = rule.mapped(domain.z_lo, domain.z_hi)
    total = 0.0
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            wxy = wx[i] * wy[j]
            for k, z in enumerate(zs):
                total += wxy * wz[k] * _check_finite(float(fn(np.array([x, y, z]))))
    return total


def integrate_face(fn, domain, axis, value, rule=None):
    """Integral of fn(X) over the face {axis = value} of the box."""
    rule = rule or QuadratureRule()
    spans = {
        "x": (("y_lo", "y_hi"), ("z_lo", "z_hi")),
        "y": (("x_lo", "x_hi"), ("z_lo", "z_hi")),
        "z": (("x_lo", "x_hi"), ("y_lo", "y_hi")),
    }[axis]
    us, wu = rule.mapped(getattr(domain, spans[0][0]), getattr(domain, spans[0][1]))
    vs, wv = rule.mapped(getattr(domain, spans[1][0]), getattr(domain, spans[1][1]))
    total = 0.0
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            if axis == "x":
                X = np.array([value, u, v])
            elif axis == "y":
                X = np.array([u, value, v])
            else:
                X = np.array([u, v, value])
            total += wu[i] * wv[j] * _check_finite(float(fn(X)))
    return total


@dataclass(frozen=True)
class EnergyEnclosure:
    e_complementary: float
    e_potential: float
    gap: float


def _resolved_data(system):
    d = system.dirichlet
    return DirichletData(
        map1=d.map1 if d.map1 is not None else system.body1.map,
        map2=d.map2 if d.map2 is not None else system.body2.map,
    )


def _body_piola(body, X):
    F = deformation_gradient(body.map, X)
    if isinstance(body.map, StretchBend):
        r = math.sqrt(2.0 * body.map.a * float(X[0]) + body.map.b)
        p = pressure_at(body.pressure, r)
    else:
        p = pressure_at(body.pressure)
    return piola_stress(body.material, F, p), F


def potential_energy(system, tau, rule=None):
    """Stored energy minus dead-load work, tau per unit reference area."""
    rule = rule or QuadratureRule()
    total = 0.0
    for body in (system.body1, system.body2):
        total += integrate_volume(
            lambda X, b=body: strain_energy(b.material, deformation_gradient(b.map, X)),
            body.domain,
            rule,
        )
    b1 = system.body1
    if isinstance(b1.map, StretchBend):
        # radial dead load pairs with the face radius
        load = integrate_face(
            lambda X: math.sqrt(2.0 * b1.map.a * b1.domain.x_lo + b1.map.b),
            b1.domain,
            "x",
            b1.domain.x_lo,
            rule,
        )
    else:
        load = integrate_face(
            lambda X: placement(b1.map, X)[0], b1.domain, "x", b1.domain.x_lo, rule
        )
    return total + tau * load


def complementary_energy(system, rule=None):
    """Boundary-paired complementary energy of the system's stress state."""
    rule = rule or QuadratureRule()
    data = _resolved_data(system)
    total = 0.0
    for body in (system.body1, system.body2):
        total -= integrate_volume(
            lambda X, b=body: _wc_at(b, X), body.domain, rule
        )
    b2 = system.body2
    if isinstance(b2.map, StretchBend):
        # held face: radial traction times data radius
        def held(X):
            P, _ = _body_piola(b2, X)
            r_d = math.sqrt(2.0 * data.map2.a * float(X[0]) + data.map2.b)
            return P[0, 0] * r_d

        total += integrate_face(held, b2.domain, "x", b2.domain.x_hi, rule)
        # axial faces: axial traction times data axial placement
        for body, dmap in ((system.body1, data.map1), (b2, data.map2)):
            for zv, sgn in ((body.domain.z_lo, -1.0), (body.domain.z_hi, 1.0)):

                def axial(X, b=body, d=dmap, s=sgn):
                    P, _ = _body_piola(b, X)
                    return s * P[2, 2] * placement(d, X)[2]

                total += integrate_face(axial, body.domain, "z", zv, rule)
        # meridian flanks pair to zero: azimuthal traction _|_ flank plane
    else:

        def held(X):
            P, _ = _body_piola(b2, X)
            return float(P[:, 0] @ placement(data.map2, X))

        total += integrate_face(held, b2.domain, "x", b2.domain.x_hi, rule)
    return total


def _wc_at(body, X):
    F = deformation_gradient(body.map, X)
    if isinstance(body.map, StretchBend):
        r = math.sqrt(2.0 * body.map.a * float(X[0]) + body.map.b)
        p = pressure_at(body.pressure, r)
    else:
        p = pressure_at(body.pressure)
    return complementary_density(body.material, F, p)


def divergence_identity_residual(system, rule=None):
    """|sum of face pairings - volume integral of P : F| for the system.

    Equals |integral of (Div P) . x| by the divergence theorem, so it
    vanishes (to quadrature accuracy) exactly when the stress state is in
    equilibrium, and is order one for states that are not.
    """
    rule = rule or QuadratureRule()
    lhs = 0.0
    rhs = 0.0
    for body in (system.body1, system.body2):
        rhs += integrate_volume(
            lambda X, b=body: ddot(*_body_piola(b, X)), body.domain, rule
        )
        if isinstance(body.map, StretchBend):
            for xv, sgn in ((body.domain.x_lo, -1.0), (body.domain.x_hi, 1.0)):

                def radial(X, b=body, s=sgn):
                    P, _ = _body_piola(b, X)
                    r = math.sqrt(2.0 * b.map.a * float(X[0]) + b.map.b)
                    return s * P[0, 0] * r

                lhs += integrate_face(radial, body.domain, "x", xv, rule)
            for zv, sgn in ((body.domain.z_lo, -1.0), (body.domain.z_hi, 1.0)):

                def axial(X, b=body, s=sgn):
                    P, _ = _body_piola(b, X)
                    return s * P[2, 2] * placement(b.map, X)[2]

                lhs += integrate_face(axial, body.domain, "z", zv, rule)
            # flanks: (P e_theta) . x = 0 pointwise
        else:
            for axis, faces in (
                ("x", ((body.domain.x_lo, -1.0), (body.domain.x_hi, 1.0))),
                ("y", ((body.domain.y_lo, -1.0), (body.domain.y_hi, 1.0))),
                ("z", ((body.domain.z_lo, -1.0), (body.domain.z_hi, 1.0))),
            ):
                col = {"x": 0, "y": 1, "z": 2}[axis]
                for fv, sgn in faces:

                    def pairing(X, b=body, c=col, s=sgn):
                        P, _ = _body_piola(b, X)
                        return s * float(P[:, c] @ placement(b.map, X))

                    lhs += integrate_face(pairing, body.domain, axis, fv, rule)
    return abs(lhs - rhs)


def enclosure(system_kinematic, system_static, tau, rule=None):
    """Two-sided energy bracket from an admissible trial pair.

    The kinematic trial is checked against the static system's Dirichlet
    data; the static trial must equilibrate the load tau. Cohesive
    problems admit the bracket on closed-contact trials. Raises
    InadmissibleTrial naming the failing residual.
    """
    rule = rule or QuadratureRule()
    data = _resolved_data(system_static)
    kin = check_kinematic(system_kinematic, dirichlet=data)
    if not kin.kinematic_ok:
        worst = max(kin.residuals, key=lambda k: kin.residuals[k])
        raise InadmissibleTrial(
            "kinematic trial: %s residual = %.3e" % (worst, kin.residuals[worst])
        )
    stat = check_static(system_static, tau)
    if not stat.static_ok:
        worst = max(stat.residuals, key=lambda k: stat.residuals[k])
        raise InadmissibleTrial(
            "static trial: %s residual = %.3e" % (worst, stat.residuals[worst])
        )
    e_p = potential_energy(system_kinematic, tau, rule)
    e_c = complementary_energy(system_static, rule)
    return EnergyEnclosure(e_complementary=e_c, e_potential=e_p, gap=e_p - e_c)
