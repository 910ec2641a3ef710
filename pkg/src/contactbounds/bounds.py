"""Sustainable load intervals and the stability criteria behind them.

A load tau is accepted when some pressure pair, read off the contact
traction linkage p_i = C_i lambda_n^2 - tau, keeps both bodies inside
their stability window while the contact conditions hold. The window of
a body is |p| < C / lambda_max: the constrained second variation along
a shear probe in the (i, j) plane has eigenvalues C +/- p * lambda_k,
so positivity fails first on the pair whose complementary stretch is
largest.

Closed-form intervals implement the per-family formulas (their sqrt(a)
window is the transverse-pair threshold, the binding one for a <= 1).
numeric_load_bounds reproduces them by bisection on the feasibility
predicate; brute_force_oracle does so by brute scan, deriving the window
from sampled principal stretches rather than from any formula here.

The open-contact regime carries the load through the contact face alone,
which pins tau to 0 (or the cohesive cap g); it is reported as a
degenerate singleton interval.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import FamilyMismatch, InfeasibleProblem, InvalidParameters
from .kinematics import (
    Homogeneous,
    R_MIN,
    StretchBend,
    TriaxialStretch,
    deformation_gradient,
    principal_stretches,
)
from .material import (
    NeoHookeanIncompressible,
    RadialProfile,
    hessian_quadratic_form,
    pressure_at,
)

__all__ = [
    "LoadInterval",
    "CriteriaResult",
    "pressure_window",
    "criteria_check",
    "load_interval_compression",
    "load_interval_cohesive",
    "load_interval_bending",
    "search_bracket",
    "numeric_load_bounds",
    "brute_force_oracle",
]

#: X-resolution for pointwise checks across a bending body
X_SAMPLES = 33


@dataclass(frozen=True)
class LoadInterval:
    """Open interval (tau_lo, tau_hi) of sustainable loads.

    Open-regime results are singletons with tau_lo == tau_hi. empty is
    true when the closed-regime conditions exclude every load.
    """

    tau_lo: float
    tau_hi: float
    regime: str  # "closed" or "open"
    empty: bool


@dataclass(frozen=True)
class CriteriaResult:
    primal_ok: bool
    complementary_ok: bool
    min_quadratic_value: float
    pressure_window: tuple


def _check_positive(**kw):
    for name, v in kw.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0.0):
            raise InvalidParameters("%s = %r must be positive" % (name, v))


def _lambda_max(body):
    m = body.map
    if isinstance(m, TriaxialStretch):
        return max(m.a, 1.0 / math.sqrt(m.a))
    if isinstance(m, StretchBend):
        r_in = math.sqrt(2.0 * m.a * body.domain.x_lo + m.b)
        r_out = math.sqrt(2.0 * m.a * body.domain.x_hi + m.b)
        sa = math.sqrt(m.a)
        return max(m.a / r_in, m.A * r_out / sa, 1.0 / (m.A * sa))
    if isinstance(m, Homogeneous):
        return principal_stretches(m, (0.0, 0.0, 0.0)).max()
    raise InvalidParameters("unknown deformation map %r" % (m,))


def pressure_window(body):
    """Pressure interval keeping the constrained Hessian positive."""
    if not isinstance(body.material, NeoHookeanIncompressible):
        raise InvalidParameters("pressure window applies to incompressible bodies")
    w = body.material.C / _lambda_max(body)
    return (-w, w)


def _x_samples(body, interior):
    lo, hi = body.domain.x_lo, body.domain.x_hi
    if isinstance(body.map, TriaxialStretch):
        xs = [0.5 * (lo + hi)] if interior else [lo, 0.5 * (lo + hi), hi]
        return np.asarray(xs)
    if interior:
        return np.linspace(lo, hi, X_SAMPLES + 2)[1:-1]
    return np.linspace(lo, hi, X_SAMPLES)


def _pressure_at_x(body, x):
    if isinstance(body.map, StretchBend):
        r = math.sqrt(2.0 * body.map.a * x + body.map.b)
        return pressure_at(body.pressure, r)
    return pressure_at(body.pressure)


def _probes(rng, count):
    # shear probes are tangent to the constraint at a diagonal state:
    # cof(F) : G = 0 whenever G has no diagonal entries
    probes = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        for s in (1.0, -1.0):
            G = np.zeros((3, 3))
            G[i, j] = 1.0 / math.sqrt(2.0)
            G[j, i] = s / math.sqrt(2.0)
            probes.append(G)
    for _ in range(count):
        entries = rng.standard_normal(6)
        G = np.zeros((3, 3))
        G[0, 1], G[0, 2], G[1, 0], G[1, 2], G[2, 0], G[2, 1] = entries
        n = math.sqrt(float(np.sum(G * G)))
        probes.append(G / n)
    return probes


def criteria_check(body, probe_count=200, seed=42):
    """Pointwise positivity of the constrained second variation.

    The complementary side evaluates the quadratic form on unit shear
    probes at sample stations across the body; the primal side weights
    the same stations by the square of a polynomial bubble vanishing on
    both x-faces, so a probe field scaled by the bubble is an admissible
    variation whatever the body's role. Deterministic probes aligned
    with each shear plane make the sign change at the window edge exact;
    the seeded random probes guard the rest of the tangent space.
    """
    if not isinstance(body.material, NeoHookeanIncompressible):
        raise InvalidParameters("criteria apply to incompressible bodies")
    if probe_count < 1:
        raise InvalidParameters("probe_count must be >= 1")
    rng = np.random.default_rng(seed)
    lo, hi = body.domain.x_lo, body.domain.x_hi
    probes = _probes(rng, probe_count)
    comp_min = math.inf
    primal_min = math.inf
    for x in _x_samples(body, interior=False):
        F = deformation_gradient(body.map, (x, 0.0, 0.0))
        p = _pressure_at_x(body, x)
        for G in probes:
            comp_min = min(comp_min, hessian_quadratic_form(body.material, F, p, G))
    for x in _x_samples(body, interior=True):
        F = deformation_gradient(body.map, (x, 0.0, 0.0))
        p = _pressure_at_x(body, x)
        w = ((x - lo) * (hi - x)) ** 2
        for G in probes:
            q = hessian_quadratic_form(body.material, F, p, G)
            primal_min = min(primal_min, w * q)
    return CriteriaResult(
        primal_ok=bool(primal_min > 0.0),
        complementary_ok=bool(comp_min > 0.0),
        min_quadratic_value=float(comp_min),
        pressure_window=pressure_window(body),
    )


def load_interval_compression(C1, C2, a1, a2, contact_closed=True):
    """Sustainable compressive loads for the triaxial pair."""
    _check_positive(C1=C1, C2=C2, a1=a1, a2=a2)
    if not contact_closed:
        return LoadInterval(0.0, 0.0, "open", False)
    lo = -min(C1 * (math.sqrt(a1) - a1**2), C2 * (math.sqrt(a2) - a2**2))
    hi = 0.0
    return LoadInterval(lo, hi, "closed", not lo < hi)


def load_interval_cohesive(C1, C2, a1, a2, g, contact_closed=True):
    """Sustainable loads with cohesive traction cap g > 0."""
    _check_positive(C1=C1, C2=C2, a1=a1, a2=a2, g=g)
    if not contact_closed:
        return LoadInterval(g, g, "open", False)
    lo = -min(C1 * (math.sqrt(a1) - a1**2), C2 * (math.sqrt(a2) - a2**2))
    hi = min(g, C1 * (math.sqrt(a1) + a1**2), C2 * (math.sqrt(a2) + a2**2))
    return LoadInterval(lo, hi, "closed", not lo < hi)


def load_interval_bending(C1, C2, A, a1, a2, b1, b2, contact_closed=True):
    """Sustainable radial loads for the bending pair.

    The contact radius is body 1's outer radius r1 = sqrt(a1 + b1); the
    linkage reads both pressures off the traction there.
    """
    _check_positive(C1=C1, C2=C2, A=A, a1=a1, a2=a2)
    if b1 < R_MIN**2:
        raise InvalidParameters("inner square radius b1 = %r below minimum" % (b1,))
    if a2 + b2 <= 0.0 or 2.0 * a2 + b2 <= 0.0:
        raise InvalidParameters("body 2 radii must stay positive")
    if not contact_closed:
        return LoadInterval(0.0, 0.0, "open", False)
    r0 = math.sqrt(b1)
    r1 = math.sqrt(a1 + b1)
    r2 = math.sqrt(2.0 * a2 + b2)
    lmax1 = max(a1 / r0, A * r1 / math.sqrt(a1), 1.0 / (A * math.sqrt(a1)))
    lmax2 = max(a2 / r1, A * r2 / math.sqrt(a2), 1.0 / (A * math.sqrt(a2)))
    rho_c = r1**2
    lo = -min(
        C1 / lmax1 - C1 * a1**2 / rho_c,
        C2 / lmax2 - C2 * a2**2 / rho_c,
    )
    hi = 0.0
    return LoadInterval(lo, hi, "closed", not lo < hi)


def _linkage(example, fp):
    """Per-body (C, normal stretch factor, window threshold) data."""
    if example in ("compression", "cohesive"):
        out = []
        for C, a in ((fp["C1"], fp["a1"]), (fp["C2"], fp["a2"])):
            _check_positive(C=C, a=a)
            stretches = [(a, 1.0 / math.sqrt(a), 1.0 / math.sqrt(a))]
            out.append((C, a**2, stretches))
        return out
    if example == "bending":
        A = fp["A"]
        b1 = fp["b1"]
        _check_positive(A=A)
        if b1 < R_MIN**2:
            raise InvalidParameters("b1 = %r below minimum" % (b1,))
        rho_c = fp["a1"] + b1
        b2 = fp.get("b2")
        if b2 is None:
            b2 = rho_c - fp["a2"]
        bs = (b1, b2)
        out = []
        for C, a, b, x_lo in (
            (fp["C1"], fp["a1"], bs[0], 0.0),
            (fp["C2"], fp["a2"], bs[1], 0.5),
        ):
            _check_positive(C=C, a=a)
            stretches = []
            for x in np.linspace(x_lo, x_lo + 0.5, 65):
                rho = 2.0 * a * x + b
                if rho <= 0.0:
                    raise InvalidParameters("nonpositive radius in body")
                r = math.sqrt(rho)
                sa = math.sqrt(a)
                stretches.append((a / r, A * r / sa, 1.0 / (A * sa)))
            out.append((C, a**2 / rho_c, stretches))
        return out
    raise InvalidParameters("unknown example %r" % (example,))


def _window_threshold(C, stretches):
    # smallest pair threshold C / lambda_k over all stations and planes
    worst = math.inf
    for f in stretches:
        for k in range(3):
            worst = min(worst, C / f[k])
    return worst


def _feasible_closed(tau, linkage, cap):
    if tau > cap:
        return False
    for C, s, stretches in linkage:
        p = C * s - tau
        if abs(p) >= _window_threshold(C, stretches):
            return False
    return True


def search_bracket(example, fixed_params):
    """Load bracket guaranteed to contain every feasible load."""
    fp = fixed_params
    cap = fp.get("g", 0.0) if example == "cohesive" else 0.0
    linkage = _linkage(example, fp)
    # |tau| <= C s + C lambda_max on any feasible load
    span = max(C * s + C * max(max(f) for f in st) for C, s, st in linkage)
    return -2.0 * span - 1.0, cap + 2.0 * span + 1.0


def numeric_load_bounds(example, fixed_params, search_config=None):
    """Bisect the feasibility predicate for the load interval endpoints.

    Matches the closed forms to the bisection tolerance. Raises
    InfeasibleProblem when no load in the bracket is feasible.
    """
    sc = search_config or {}
    tol = sc.get("tol", 1e-8)
    coarse_n = sc.get("coarse_n", 129)
    fp = fixed_params
    contact_closed = fp.get("contact_closed", True)
    cap = fp.get("g", 0.0) if example == "cohesive" else 0.0
    if example == "cohesive":
        _check_positive(g=fp.get("g", 0.0))
    if not contact_closed:
        return LoadInterval(cap, cap, "open", False)
    linkage = _linkage(example, fp)
    b_lo, b_hi = search_bracket(example, fp)
    taus = np.linspace(b_lo, b_hi, coarse_n)
    feas = [t for t in taus if _feasible_closed(t, linkage, cap)]
    if not feas:
        raise InfeasibleProblem("no feasible load in [%g, %g]" % (b_lo, b_hi))
    lo_out, lo_in = b_lo, feas[0]
    while lo_in - lo_out > tol:
        mid = 0.5 * (lo_out + lo_in)
        if _feasible_closed(mid, linkage, cap):
            lo_in = mid
        else:
            lo_out = mid
    hi_in, hi_out = feas[-1], b_hi
    while hi_out - hi_in > tol:
        mid = 0.5 * (hi_in + hi_out)
        if _feasible_closed(mid, linkage, cap):
            hi_in = mid
        else:
            hi_out = mid
    return LoadInterval(0.5 * (lo_out + lo_in), 0.5 * (hi_in + hi_out), "closed", False)


def brute_force_oracle(example, fixed_params, grid_n=1000):
    """Scan a load grid and accept by first principles.

    For each grid load the linkage pressure pair is tested against the
    stability thresholds derived from sampled principal stretches. The
    hull of accepted loads is returned; when the closed regime accepts
    nothing the open-regime singleton is reported instead.
    """
    if grid_n < 2:
        raise InvalidParameters("grid_n must be >= 2")
    fp = fixed_params
    cap = fp.get("g", 0.0) if example == "cohesive" else 0.0
    linkage = _linkage(example, fp)
    b_lo, b_hi = search_bracket(example, fp)
    taus = np.linspace(b_lo, b_hi, grid_n + 1)
    ok = taus <= cap
    for C, s, stretches in linkage:
        thr = _window_threshold(C, stretches)
        ok &= np.abs(C * s - taus) < thr
    if fp.get("contact_closed", True) and np.any(ok):
        acc = taus[ok]
        return LoadInterval(float(acc[0]), float(acc[-1]), "closed", False)
    # closed regime rejected everything: the open regime carries the
    # load through the free contact face, pinning tau to the cap
    return LoadInterval(cap, cap, "open", False)
