import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactbounds.errors import InvalidParameters
from contactbounds.contact import (
    check_kinematic,
    check_static,
    evaluate_contact,
    gap_value,
    nominal_traction,
)
from contactbounds.states import (
    BOX1,
    BOX2,
    bend_pair,
    linked_bend_pair,
    linked_stretch_pair,
    load_from_stretch_ratio,
    stretch_pair,
    stretch_ratio_from_load,
)

# frozen by independent bisection on a - 1/a^2 + 0.3 = 0
A_AT_MINUS_03 = 0.9093392328648922


def test_load_stretch_frozen_inversion():
    assert stretch_ratio_from_load(1.0, -0.3) == pytest.approx(
        A_AT_MINUS_03, abs=1e-12
    )
    assert stretch_ratio_from_load(1.0, 0.0) == pytest.approx(1.0, abs=1e-14)


@given(
    st.floats(min_value=-3.0, max_value=3.0),
    st.floats(min_value=0.5, max_value=3.0),
)
@settings(max_examples=100, deadline=None)
def test_load_stretch_roundtrip(tau, C):
    a = stretch_ratio_from_load(C, tau)
    assert load_from_stretch_ratio(C, a) == pytest.approx(tau, abs=1e-10)
    # compressive loads shorten, tensile loads lengthen
    if tau < -1e-12:
        assert a < 1.0
    if tau > 1e-12:
        assert a > 1.0


def test_load_from_stretch_rejects_nonpositive():
    with pytest.raises(InvalidParameters):
        load_from_stretch_ratio(1.0, 0.0)


def test_stretch_pair_is_exact():
    tau = -0.3
    sys_ = stretch_pair(1.0, 2.0, tau)
    assert abs(gap_value(sys_)) < 1e-14
    assert check_kinematic(sys_).kinematic_ok
    assert check_static(sys_, tau).static_ok
    # transverse-face reaction pressure
    assert sys_.body1.pressure.p == pytest.approx(1.0 / sys_.body1.map.a, rel=1e-14)
    assert sys_.body2.pressure.p == pytest.approx(2.0 / sys_.body2.map.a, rel=1e-14)
    # the held map is stored as the Dirichlet data
    assert sys_.dirichlet.map2 is sys_.body2.map


def test_stretch_pair_offset_closure():
    sys_ = stretch_pair(1.0, 2.0, -0.3, b2=0.4)
    a1, a2 = sys_.body1.map.a, sys_.body2.map.a
    assert sys_.body1.map.b == pytest.approx((a2 - a1) * 0.5 + 0.4, abs=1e-14)


def test_bend_pair_geometry_chain():
    sys_ = bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 3.0, -1.2)
    m1, m2 = sys_.body1.map, sys_.body2.map
    # squared radii: body 1 spans [1, 2], body 2 spans [2, 3]
    assert m1.b == pytest.approx(1.0, abs=1e-14)
    assert m2.b == pytest.approx(1.0, abs=1e-14)
    r1o = math.sqrt(2.0 * m1.a * 0.5 + m1.b)
    r2i = math.sqrt(2.0 * m2.a * 0.5 + m2.b)
    assert r1o == pytest.approx(r2i, abs=1e-14)
    assert abs(gap_value(sys_)) < 1e-14


def test_bend_pair_is_exact():
    tau = -1.2
    sys_ = bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 3.0, tau)
    assert check_kinematic(sys_).kinematic_ok
    rep = check_static(sys_, tau)
    assert rep.static_ok
    # load anchors the inner face per reference area
    assert nominal_traction(sys_.body1, BOX1.x_lo) == pytest.approx(tau, abs=1e-12)
    # nominal tractions match across the interface
    t1 = nominal_traction(sys_.body1, BOX1.x_hi)
    t2 = nominal_traction(sys_.body2, BOX2.x_lo)
    assert t1 == pytest.approx(t2, abs=1e-10)


def test_bend_pair_rejects_vanishing_core():
    with pytest.raises(InvalidParameters):
        bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 2.0, -0.5)  # rho1i = 0


def test_linked_stretch_pair_tractions():
    tau = -0.15
    sys_ = linked_stretch_pair(1.0, 3.0, 0.7, 0.95, tau=tau)
    ev = evaluate_contact(sys_)
    assert ev.traction_normal == pytest.approx(tau, abs=1e-14)
    assert ev.action_reaction_residual < 1e-13
    # p_i = C_i a_i^2 - tau
    assert sys_.body1.pressure.p == pytest.approx(0.7**2 + 0.15, abs=1e-14)
    assert sys_.body2.pressure.p == pytest.approx(3.0 * 0.95**2 + 0.15, abs=1e-14)


def test_linked_bend_pair_tractions():
    tau = -0.4
    sys_ = linked_bend_pair(2.0, 1.0, 1.0, 1.0, 1.0, 1.0, tau=tau)
    ev = evaluate_contact(sys_)
    assert ev.traction_normal == pytest.approx(tau, abs=1e-13)
    assert ev.action_reaction_residual < 1e-13
    # p_i = C_i a_i^2 / rho_c - tau with rho_c = a1 + b1 = 2
    assert sys_.body1.pressure.p == pytest.approx(2.0 / 2.0 + 0.4, abs=1e-14)


def test_linked_bend_pair_rejects_tiny_core():
    with pytest.raises(InvalidParameters):
        linked_bend_pair(1.0, 1.0, 1.0, 1.0, 1.0, 1e-14, tau=0.0)
