import dataclasses
import math

import numpy as np
import pytest

from contactbounds.errors import ConstraintViolated, FamilyMismatch, InvalidParameters
from contactbounds.kinematics import Box3, Homogeneous, StretchBend, TriaxialStretch
from contactbounds.material import Constant, NeoHookeanIncompressible, RadialProfile
from contactbounds.contact import (
    BodySpec,
    DirichletData,
    SystemSpec,
    check_kinematic,
    check_static,
    contact_traction,
    evaluate_contact,
    gap_value,
    nominal_traction,
    solve_radial_pressure,
)
from contactbounds.states import (
    BOX1,
    BOX2,
    bend_pair,
    linked_bend_pair,
    linked_stretch_pair,
    stretch_pair,
)


def replace_map1(system, new_map):
    body = dataclasses.replace(system.body1, map=new_map)
    return dataclasses.replace(system, body1=body)


def test_gap_closed_by_construction():
    sys_ = linked_stretch_pair(1.0, 1.0, 0.8, 0.9, tau=-0.1)
    assert abs(gap_value(sys_)) < 1e-15


def test_gap_sign_triaxial():
    sys_ = linked_stretch_pair(1.0, 1.0, 0.8, 0.9, tau=-0.1)
    pushed = replace_map1(sys_, TriaxialStretch(0.8, sys_.body1.map.b + 0.07))
    assert gap_value(pushed) == pytest.approx(0.07, abs=1e-14)
    pulled = replace_map1(sys_, TriaxialStretch(0.8, sys_.body1.map.b - 0.07))
    assert gap_value(pulled) == pytest.approx(-0.07, abs=1e-14)


def test_gap_bending_radii():
    sys_ = linked_bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, tau=-0.2)
    assert abs(gap_value(sys_)) < 1e-14
    trial = replace_map1(sys_, StretchBend(1.0, 1.0, 0.9))
    r1 = math.sqrt(2.0 * 0.5 + 0.9)
    assert gap_value(trial) == pytest.approx(r1 - math.sqrt(2.0), abs=1e-14)


def test_gap_homogeneous_pair():
    b1 = BodySpec(BOX1, NeoHookeanIncompressible(1.0), Homogeneous(np.eye(3), t=(0.1, 0.0, 0.0)))
    b2 = BodySpec(BOX2, NeoHookeanIncompressible(1.0), Homogeneous(np.eye(3)))
    assert gap_value(SystemSpec(b1, b2)) == pytest.approx(0.1, abs=1e-14)


def test_gap_family_mismatch():
    b1 = BodySpec(BOX1, NeoHookeanIncompressible(1.0), TriaxialStretch(1.0))
    b2 = BodySpec(BOX2, NeoHookeanIncompressible(1.0), StretchBend(1.0, 1.0, 0.5))
    with pytest.raises(FamilyMismatch):
        gap_value(SystemSpec(b1, b2))


def test_system_requires_shared_geometry():
    shifted = Box3(0.6, 1.1, 0.0, 1.0, 0.0, 1.0)
    b1 = BodySpec(BOX1, NeoHookeanIncompressible(1.0), TriaxialStretch(1.0))
    b2 = BodySpec(shifted, NeoHookeanIncompressible(1.0), TriaxialStretch(1.0))
    with pytest.raises(InvalidParameters):
        SystemSpec(b1, b2)
    tall = Box3(0.5, 1.0, 0.0, 2.0, 0.0, 1.0)
    b2 = BodySpec(tall, NeoHookeanIncompressible(1.0), TriaxialStretch(1.0))
    with pytest.raises(InvalidParameters):
        SystemSpec(b1, b2)


def test_incompressible_homogeneous_must_be_isochoric():
    with pytest.raises(ConstraintViolated):
        BodySpec(BOX1, NeoHookeanIncompressible(1.0), Homogeneous(np.diag([1.2, 1.0, 1.0])))


def test_triaxial_body_rejects_radial_pressure():
    prof = RadialProfile(np.linspace(1.0, 2.0, 5), np.zeros(5))
    with pytest.raises(InvalidParameters):
        BodySpec(BOX1, NeoHookeanIncompressible(1.0), TriaxialStretch(1.0), prof)


def test_contact_traction_frozen():
    body = BodySpec(
        BOX1, NeoHookeanIncompressible(1.0), TriaxialStretch(0.81), Constant(0.9)
    )
    # sigma_11 = C a^2 - p
    assert contact_traction(body) == pytest.approx(0.81**2 - 0.9, abs=1e-14)
    assert nominal_traction(body, 0.5) == pytest.approx(
        (0.81**2 - 0.9) / 0.81, abs=1e-14
    )


def test_bending_traction_needs_radius():
    body = BodySpec(
        BOX1, NeoHookeanIncompressible(1.0), StretchBend(1.0, 1.0, 1.0), Constant(0.2)
    )
    with pytest.raises(InvalidParameters):
        contact_traction(body)
    r = math.sqrt(2.0)
    sig = contact_traction(body, at_r=r)
    assert sig == pytest.approx(1.0 / r**2 - 0.2, abs=1e-14)
    # nominal = cauchy * r / a on the face with that radius
    assert nominal_traction(body, 0.5) == pytest.approx(sig * r / 1.0, abs=1e-14)


def test_linked_pair_balances_cauchy_tractions():
    tau = -0.1
    sys_ = linked_stretch_pair(1.0, 2.0, 0.8, 0.9, tau=tau)
    ev = evaluate_contact(sys_)
    assert ev.regime == "closed"
    assert ev.traction_normal == pytest.approx(tau, abs=1e-14)
    assert ev.action_reaction_residual < 1e-14
    assert ev.complementarity_residual < 1e-14


def test_linked_bend_pair_balances_at_contact_radius():
    tau = -0.3
    sys_ = linked_bend_pair(1.0, 1.5, 1.0, 1.0, 1.0, 1.0, tau=tau)
    ev = evaluate_contact(sys_)
    assert ev.regime == "closed"
    assert ev.traction_normal == pytest.approx(tau, abs=1e-13)
    assert ev.action_reaction_residual < 1e-13


def test_open_contact_reports_separation():
    sys_ = linked_stretch_pair(1.0, 1.0, 0.8, 0.8, tau=-0.1)
    apart = replace_map1(sys_, TriaxialStretch(0.8, sys_.body1.map.b - 0.2))
    ev = evaluate_contact(apart)
    assert ev.regime == "open"
    assert ev.gap == pytest.approx(-0.2, abs=1e-14)
    assert ev.complementarity_residual == pytest.approx(0.2 * 0.1, abs=1e-12)


def test_allowance_shifts_the_gap():
    sys_ = linked_stretch_pair(1.0, 1.0, 0.8, 0.8, tau=-0.1)
    sys_ = dataclasses.replace(sys_, d_allow=0.05)
    pushed = replace_map1(sys_, TriaxialStretch(0.8, sys_.body1.map.b + 0.05))
    ev = evaluate_contact(pushed)
    assert abs(ev.gap) < 1e-14
    assert ev.regime == "closed"


def test_kinematic_ok_for_exact_pair():
    sys_ = stretch_pair(1.0, 2.0, -0.25)
    rep = check_kinematic(sys_)
    assert rep.kinematic_ok
    assert rep.static_ok is None
    assert rep.residuals["dirichlet"] < 1e-12
    assert rep.residuals["gap"] == 0.0
    assert rep.residuals["constraint"] < 1e-12


def test_kinematic_rejects_penetration():
    sys_ = stretch_pair(1.0, 1.0, -0.25)
    pushed = replace_map1(
        sys_, TriaxialStretch(sys_.body1.map.a, sys_.body1.map.b + 0.1)
    )
    rep = check_kinematic(pushed)
    assert not rep.kinematic_ok
    assert rep.residuals["gap"] == pytest.approx(0.1, abs=1e-12)


def test_kinematic_allows_separation():
    sys_ = stretch_pair(1.0, 1.0, -0.25)
    apart = replace_map1(
        sys_, TriaxialStretch(sys_.body1.map.a, sys_.body1.map.b - 0.1)
    )
    assert check_kinematic(apart).kinematic_ok


def test_kinematic_rejects_moved_held_face():
    sys_ = stretch_pair(1.0, 1.0, -0.25)
    body2 = dataclasses.replace(
        sys_.body2, map=TriaxialStretch(sys_.body2.map.a, sys_.body2.map.b + 0.02)
    )
    moved = dataclasses.replace(sys_, body2=body2)
    rep = check_kinematic(moved)
    assert not rep.kinematic_ok
    assert rep.residuals["dirichlet"] == pytest.approx(0.02, abs=1e-12)


def test_bending_offset_is_a_free_trial_direction():
    # the axial faces prescribe only the axial coordinate and the flanks
    # only the meridian plane, so shrinking b leaves the trial admissible
    exact = bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 3.0, -1.2)
    trial = replace_map1(exact, StretchBend(1.0, 1.0, exact.body1.map.b - 0.05))
    rep = check_kinematic(trial)
    assert rep.kinematic_ok
    assert rep.residuals["dirichlet"] < 1e-12


def test_bending_stretch_change_violates_axial_data():
    exact = bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 3.0, -1.2)
    trial = replace_map1(exact, StretchBend(1.0, 1.1, exact.body1.map.b - 0.05))
    rep = check_kinematic(trial)
    assert not rep.kinematic_ok
    assert rep.residuals["dirichlet"] > 1e-3


def test_static_ok_for_exact_pair():
    tau = -0.37
    sys_ = stretch_pair(1.4, 0.8, tau)
    rep = check_static(sys_, tau)
    assert rep.static_ok
    assert rep.kinematic_ok is None
    for k, v in rep.residuals.items():
        assert v < 1e-10, k


def test_static_detects_wrong_load():
    tau = -0.37
    sys_ = stretch_pair(1.4, 0.8, tau)
    rep = check_static(sys_, tau + 0.05)
    assert not rep.static_ok
    assert rep.residuals["neumann"] == pytest.approx(0.05, abs=1e-12)


def test_static_action_reaction_uses_reference_areas():
    tau = -0.2
    sys_ = linked_stretch_pair(1.0, 1.0, 0.8, 0.9, tau=tau)
    rep = check_static(sys_, tau)
    # equal Cauchy tractions but unequal stretches: the nominal
    # tractions tau / a_i differ
    expected = abs(tau) * abs(1.0 / 0.8 - 1.0 / 0.9)
    assert rep.residuals["action_reaction"] == pytest.approx(expected, rel=1e-12)
    assert not rep.static_ok


def test_static_tensile_traction_capped_by_g():
    sys_ = stretch_pair(1.0, 1.0, 0.3, g=0.5)
    rep = check_static(sys_, 0.3)
    assert rep.static_ok
    bare = dataclasses.replace(sys_, g=0.0)
    rep = check_static(bare, 0.3)
    assert not rep.static_ok
    assert rep.residuals["contact_traction_sign"] > 0.1


def test_static_ok_for_exact_bending_pair():
    tau = -1.2
    sys_ = bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 3.0, tau)
    rep = check_static(sys_, tau)
    assert rep.static_ok
    assert rep.residuals["equilibrium"] < 1e-8
    assert rep.residuals["action_reaction"] < 1e-10


def test_static_constant_pressure_cannot_bend():
    sys_ = linked_bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, tau=-0.2)
    rep = check_static(sys_, -0.2)
    assert not rep.static_ok
    assert rep.residuals["equilibrium"] > 1e-3


def test_homogeneous_pair_static_at_rest():
    b1 = BodySpec(BOX1, NeoHookeanIncompressible(1.0), Homogeneous(np.eye(3)), Constant(1.0))
    b2 = BodySpec(BOX2, NeoHookeanIncompressible(1.0), Homogeneous(np.eye(3)), Constant(1.0))
    rep = check_static(SystemSpec(b1, b2), 0.0)
    assert rep.static_ok


def test_radial_pressure_satisfies_momentum_balance():
    body = BodySpec(
        BOX1, NeoHookeanIncompressible(1.3), StretchBend(1.1, 0.9, 1.2)
    )
    prof = solve_radial_pressure(body, -0.5, anchor="inner")
    C, a, A = 1.3, 0.9, 1.1
    r_in = math.sqrt(1.2)
    r_out = math.sqrt(2.0 * 0.9 * 0.5 + 1.2)
    # anchor value is the radial Cauchy stress on the inner face
    assert C * a**2 / r_in**2 - prof(r_in) == pytest.approx(-0.5, abs=1e-12)
    worst = 0.0
    for r in np.linspace(r_in, r_out, 201):
        dsig = -2.0 * C * a**2 / r**3 - prof.derivative(r)
        rhs = C * (A**2 * r / a - a**2 / r**3)
        worst = max(worst, abs(dsig - rhs))
    assert worst < 1e-8


def test_radial_pressure_anchor_roundtrip():
    body = BodySpec(
        BOX1, NeoHookeanIncompressible(1.0), StretchBend(1.0, 1.0, 1.0)
    )
    prof_in = solve_radial_pressure(body, -0.4, anchor="inner")
    r_out = math.sqrt(2.0)
    sig_out = 1.0 / r_out**2 - prof_in(r_out)
    prof_out = solve_radial_pressure(body, sig_out, anchor="outer")
    for r in np.linspace(1.0, r_out, 33):
        assert prof_in(r) == pytest.approx(prof_out(r), abs=1e-9)


def test_radial_pressure_argument_validation():
    body = BodySpec(BOX1, NeoHookeanIncompressible(1.0), TriaxialStretch(1.0))
    with pytest.raises(InvalidParameters):
        solve_radial_pressure(body, 0.0)
    bend = BodySpec(BOX1, NeoHookeanIncompressible(1.0), StretchBend(1.0, 1.0, 1.0))
    with pytest.raises(InvalidParameters):
        solve_radial_pressure(bend, 0.0, anchor="middle")
