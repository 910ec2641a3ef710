"""Config-driven front end.

Subcommands:

* run: evaluate one configured system end to end (admissibility, contact
  state, energy bracket, load intervals from closed form, bisection, and
  brute-force scan, stability criteria) and render a report,
* sweep: vary one parameter and tabulate the closed-form interval,
* verify: execute the built-in consistency battery for the config.

Config files are INI-like: [section] headers, key = value lines, and
'#' comments. Unknown sections or keys are rejected with the offending
line number so typos cannot silently change a run.
"""

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import (
    ContactBoundsError,
    FamilyMismatch,
    InadmissibleTrial,
    InfeasibleProblem,
    InvalidParameters,
    OutOfDomain,
    ParseError,
    ValidationError,
)
from . import tensor3
from .kinematics import StretchBend, TriaxialStretch, injectivity_check, jacobian
from .material import Constant, NeoHookeanIncompressible, piola_stress
from .contact import (
    BodySpec,
    DirichletData,
    SystemSpec,
    check_kinematic,
    check_static,
    evaluate_contact,
    nominal_traction,
    solve_radial_pressure,
)
from .energy import QuadratureRule, enclosure, potential_energy
from .bounds import (
    brute_force_oracle,
    criteria_check,
    load_interval_bending,
    load_interval_compression,
    load_interval_cohesive,
    numeric_load_bounds,
    pressure_window,
    search_bracket,
)
from .states import BOX1, BOX2, bend_pair, stretch_pair

__all__ = [
    "BodyConfig",
    "ProblemConfig",
    "RunReport",
    "parse_config",
    "serialize_config",
    "build_system",
    "run",
    "sweep",
    "verify",
    "format_report",
    "main",
]

EXAMPLES = ("compression", "cohesive", "bending")

SECTIONS = {
    "system": ("example", "A"),
    "body1": ("C", "a", "b", "pressure"),
    "body2": ("C", "a", "b", "pressure"),
    "contact": ("d_allow", "g"),
    "load": ("tau",),
    "numerics": ("quad_order", "grid_n", "probe_count", "seed"),
}

SWEEP_PARAMS = ("a1", "a2", "g", "A", "b1", "b2", "C1", "C2")

# closed warning vocabulary; every warning a run can emit is one of these
W_DEGENERATE = "degenerate: identity stretch"
W_OPEN_CONTACT = "open contact at the shared plane"
W_MISMATCH = "closed-form/numeric/oracle mismatch: %s"
W_EMPTY = "empty load interval: %s"
W_ENCLOSURE_SKIPPED = "enclosure skipped: %s"
W_BEND_LINKAGE = (
    "bending intervals use the contact-plane pressure linkage; "
    "the equilibrium pressure profile varies across each body"
)


@dataclass(frozen=True)
class BodyConfig:
    C: float
    a: float
    b: float = None
    pressure: float = None


@dataclass(frozen=True)
class ProblemConfig:
    example: str
    body1: BodyConfig
    body2: BodyConfig
    A: float = None
    d_allow: float = 0.0
    g: float = 0.0
    tau: float = None
    quad_order: int = 8
    grid_n: int = 1000
    probe_count: int = 200
    seed: int = 42


@dataclass(frozen=True)
class RunReport:
    config: ProblemConfig
    kinematic: object
    static: object
    contact: object
    enclosure: object
    closed_form: object
    numeric: object
    oracle: object
    criteria: tuple
    warnings: tuple


def _parse_sections(text):
    raw = {}
    section = None
    for ln, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("malformed section header", ln)
            name = stripped[1:-1].strip()
            if name not in SECTIONS:
                raise ParseError("unknown section [%s]" % name, ln)
            if name in raw:
                raise ParseError("duplicate section [%s]" % name, ln)
            raw[name] = {}
            section = name
            continue
        if section is None:
            raise ParseError("key outside any section", ln)
        key, sep, val = stripped.partition("=")
        if not sep:
            raise ParseError("expected key = value", ln)
        key, val = key.strip(), val.strip()
        if key not in SECTIONS[section]:
            raise ParseError("unknown key '%s' in [%s]" % (key, section), ln)
        if key in raw[section]:
            raise ParseError("duplicate key '%s'" % key, ln)
        if not val:
            raise ParseError("empty value for '%s'" % key, ln)
        raw[section][key] = (val, ln)
    return raw


def _take(raw, section, key):
    return raw.get(section, {}).get(key)


def _take_float(raw, section, key, default=None):
    item = _take(raw, section, key)
    if item is None:
        return default
    val, ln = item
    try:
        return float(val)
    except ValueError:
        raise ParseError("cannot parse '%s' as a number" % val, ln) from None


def _take_int(raw, section, key, default=None):
    item = _take(raw, section, key)
    if item is None:
        return default
    val, ln = item
    try:
        return int(val)
    except ValueError:
        raise ParseError("cannot parse '%s' as an integer" % val, ln) from None


def parse_config(text):
    """Parse config text into a ProblemConfig, validating every field."""
    raw = _parse_sections(text)
    item = _take(raw, "system", "example")
    if item is None:
        raise ValidationError("[system] example is required")
    example = item[0]
    if example not in EXAMPLES:
        raise ValidationError(
            "example must be one of %s, got '%s'" % ("/".join(EXAMPLES), example)
        )
    bodies = []
    for sec in ("body1", "body2"):
        C = _take_float(raw, sec, "C")
        a = _take_float(raw, sec, "a")
        if C is None or a is None:
            raise ValidationError("[%s] requires C and a" % sec)
        if not (math.isfinite(C) and C > 0.0):
            raise ValidationError("[%s] C must be positive" % sec)
        if not (math.isfinite(a) and a > 0.0):
            raise ValidationError("[%s] a must be positive" % sec)
        bodies.append(
            BodyConfig(
                C=C,
                a=a,
                b=_take_float(raw, sec, "b"),
                pressure=_take_float(raw, sec, "pressure"),
            )
        )
    A = _take_float(raw, "system", "A")
    if example == "bending":
        if A is None:
            raise ValidationError("bending requires [system] A")
        if not (math.isfinite(A) and A > 0.0):
            raise ValidationError("[system] A must be positive")
        if bodies[0].b is None:
            raise ValidationError("bending requires [body1] b")
    elif A is not None:
        raise ValidationError("[system] A only applies to the bending example")
    d_allow = _take_float(raw, "contact", "d_allow", 0.0)
    g = _take_float(raw, "contact", "g", 0.0)
    if not (math.isfinite(d_allow) and d_allow >= 0.0):
        raise ValidationError("[contact] d_allow must be >= 0")
    if not (math.isfinite(g) and g >= 0.0):
        raise ValidationError("[contact] g must be >= 0")
    if example == "cohesive" and g <= 0.0:
        raise ValidationError("cohesive example requires [contact] g > 0")
    tau = _take_float(raw, "load", "tau")
    if tau is not None and not math.isfinite(tau):
        raise ValidationError("[load] tau must be finite")
    quad_order = _take_int(raw, "numerics", "quad_order", 8)
    grid_n = _take_int(raw, "numerics", "grid_n", 1000)
    probe_count = _take_int(raw, "numerics", "probe_count", 200)
    seed = _take_int(raw, "numerics", "seed", 42)
    if not 1 <= quad_order <= 64:
        raise ValidationError("[numerics] quad_order must be in [1, 64]")
    if grid_n < 2:
        raise ValidationError("[numerics] grid_n must be >= 2")
    if probe_count < 1:
        raise ValidationError("[numerics] probe_count must be >= 1")
    if seed < 0:
        raise ValidationError("[numerics] seed must be >= 0")
    return ProblemConfig(
        example=example,
        body1=bodies[0],
        body2=bodies[1],
        A=A,
        d_allow=d_allow,
        g=g,
        tau=tau,
        quad_order=quad_order,
        grid_n=grid_n,
        probe_count=probe_count,
        seed=seed,
    )


def serialize_config(config):
    """Canonical config text; parse(serialize(c)) == c."""
    out = ["[system]", "example = %s" % config.example]
    if config.A is not None:
        out.append("A = %r" % config.A)
    for name, body in (("body1", config.body1), ("body2", config.body2)):
        out.append("[%s]" % name)
        out.append("C = %r" % body.C)
        out.append("a = %r" % body.a)
        if body.b is not None:
            out.append("b = %r" % body.b)
        if body.pressure is not None:
            out.append("pressure = %r" % body.pressure)
    out.append("[contact]")
    out.append("d_allow = %r" % config.d_allow)
    out.append("g = %r" % config.g)
    if config.tau is not None:
        out.append("[load]")
        out.append("tau = %r" % config.tau)
    out.append("[numerics]")
    out.append("quad_order = %d" % config.quad_order)
    out.append("grid_n = %d" % config.grid_n)
    out.append("probe_count = %d" % config.probe_count)
    out.append("seed = %d" % config.seed)
    return "\n".join(out) + "\n"


def _effective_offsets(config):
    a1, a2 = config.body1.a, config.body2.a
    if config.example == "bending":
        b1 = config.body1.b
        b2 = config.body2.b if config.body2.b is not None else (a1 + b1 - a2)
        return b1, b2
    b2 = config.body2.b if config.body2.b is not None else 0.0
    xc = BOX1.x_hi
    b1 = config.body1.b if config.body1.b is not None else (a2 - a1) * xc + b2
    return b1, b2


def build_system(config):
    """Materialize the configured SystemSpec.

    Bodies without an explicit pressure get the equilibrium one: the
    transverse-face reaction C / a for the triaxial family, the radial
    momentum-balance profile (anchored by the load and by traction
    continuity at the interface) for bending.
    """
    b1, b2 = _effective_offsets(config)
    C1, C2 = config.body1.C, config.body2.C
    a1, a2 = config.body1.a, config.body2.a
    tau = config.tau if config.tau is not None else 0.0
    if config.example == "bending":
        map1 = StretchBend(config.A, a1, b1)
        map2 = StretchBend(config.A, a2, b2)
        body1 = BodySpec(BOX1, NeoHookeanIncompressible(C1), map1)
        if config.body1.pressure is not None:
            body1 = dataclasses.replace(body1, pressure=Constant(config.body1.pressure))
        else:
            r0 = math.sqrt(b1)
            prof1 = solve_radial_pressure(body1, tau * a1 / r0, anchor="inner")
            body1 = dataclasses.replace(body1, pressure=prof1)
        body2 = BodySpec(BOX2, NeoHookeanIncompressible(C2), map2)
        if config.body2.pressure is not None:
            body2 = dataclasses.replace(body2, pressure=Constant(config.body2.pressure))
        else:
            r2i = math.sqrt(a2 + b2)
            r1o = math.sqrt(a1 + b1)
            if abs(r1o - r2i) <= 1e-10:
                sig2 = nominal_traction(body1, BOX1.x_hi) * a2 / r2i
            else:
                sig2 = 0.0  # open interface face is traction free
            prof2 = solve_radial_pressure(body2, sig2, anchor="inner")
            body2 = dataclasses.replace(body2, pressure=prof2)
        return SystemSpec(
            body1,
            body2,
            d_allow=config.d_allow,
            g=config.g,
            dirichlet=DirichletData(map1=map1, map2=map2),
        )
    map1 = TriaxialStretch(a1, b1)
    map2 = TriaxialStretch(a2, b2)
    p1 = config.body1.pressure if config.body1.pressure is not None else C1 / a1
    p2 = config.body2.pressure if config.body2.pressure is not None else C2 / a2
    body1 = BodySpec(BOX1, NeoHookeanIncompressible(C1), map1, Constant(p1))
    body2 = BodySpec(BOX2, NeoHookeanIncompressible(C2), map2, Constant(p2))
    return SystemSpec(
        body1,
        body2,
        d_allow=config.d_allow,
        g=config.g,
        dirichlet=DirichletData(map2=map2),
    )


def _fixed_params(config):
    b1, b2 = _effective_offsets(config)
    fp = {
        "C1": config.body1.C,
        "C2": config.body2.C,
        "a1": config.body1.a,
        "a2": config.body2.a,
        "contact_closed": True,
    }
    if config.example == "cohesive":
        fp["g"] = config.g
    if config.example == "bending":
        fp["A"] = config.A
        fp["b1"] = b1
        fp["b2"] = b2
    return fp


def _closed_form(config):
    b1, b2 = _effective_offsets(config)
    C1, C2 = config.body1.C, config.body2.C
    a1, a2 = config.body1.a, config.body2.a
    if config.example == "compression":
        return load_interval_compression(C1, C2, a1, a2)
    if config.example == "cohesive":
        return load_interval_cohesive(C1, C2, a1, a2, config.g)
    return load_interval_bending(C1, C2, config.A, a1, a2, b1, b2)


def run(config):
    """Full pipeline for one config; returns a RunReport."""
    warnings = []
    system = build_system(config)
    for body in (system.body1, system.body2):
        jacobian(body.map, body.domain.center())
        if not injectivity_check(body.map, body.domain, config.quad_order):
            raise ValidationError("deformation map fails the injectivity test")
    rule = QuadratureRule(config.quad_order)
    kin = check_kinematic(system)
    if config.tau is not None:
        tau_check = config.tau
    else:
        # no load given: check the state against the load it actually
        # exerts on the outer face of body 1
        tau_check = nominal_traction(system.body1, system.body1.domain.x_lo)
    stat = check_static(system, tau_check)
    cev = evaluate_contact(system)
    if cev.regime == "open":
        warnings.append(W_OPEN_CONTACT)
    enc = None
    if config.tau is not None:
        try:
            enc = enclosure(system, system, config.tau, rule)
        except InadmissibleTrial as e:
            warnings.append(W_ENCLOSURE_SKIPPED % e)
    crit = (
        criteria_check(system.body1, config.probe_count, config.seed),
        criteria_check(system.body2, config.probe_count, config.seed),
    )
    closed = _closed_form(config)
    fp = _fixed_params(config)
    numeric = None
    try:
        numeric = numeric_load_bounds(config.example, fp, {"tol": 1e-8})
    except InfeasibleProblem as e:
        warnings.append(W_EMPTY % e)
    oracle = brute_force_oracle(config.example, fp, config.grid_n)
    b_lo, b_hi = search_bracket(config.example, fp)
    res = (b_hi - b_lo) / config.grid_n
    if not closed.empty:
        if numeric is not None and (
            abs(numeric.tau_lo - closed.tau_lo) > 1e-6
            or abs(numeric.tau_hi - closed.tau_hi) > 1e-6
        ):
            warnings.append(W_MISMATCH % "numeric endpoints off the closed form")
        if oracle.regime != "closed" or (
            abs(oracle.tau_lo - closed.tau_lo) > 2.0 * res
            or abs(oracle.tau_hi - closed.tau_hi) > 2.0 * res
        ):
            warnings.append(W_MISMATCH % "oracle endpoints off the closed form")
    elif oracle.regime == "closed" and not oracle.empty:
        warnings.append(W_MISMATCH % "closed form empty but oracle accepts loads")
    if abs(config.body1.a - 1.0) < 1e-12 or abs(config.body2.a - 1.0) < 1e-12:
        warnings.append(W_DEGENERATE)
    if config.example == "bending":
        warnings.append(W_BEND_LINKAGE)
    return RunReport(
        config=config,
        kinematic=kin,
        static=stat,
        contact=cev,
        enclosure=enc,
        closed_form=closed,
        numeric=numeric,
        oracle=oracle,
        criteria=crit,
        warnings=tuple(warnings),
    )


def _f(v):
    return "%.12g" % v


def _interval_line(name, iv):
    if iv is None:
        return "%s: unavailable" % name
    return "%s: tau_lo=%s tau_hi=%s regime=%s empty=%s" % (
        name,
        _f(iv.tau_lo),
        _f(iv.tau_hi),
        iv.regime,
        "true" if iv.empty else "false",
    )


def format_report(report):
    """Plain-text report; identical bytes for identical runs."""
    cfg = report.config
    out = ["run: example=%s" % cfg.example]
    out.append(
        "load: tau=%s" % (_f(cfg.tau) if cfg.tau is not None else "none")
    )
    kin, stat = report.kinematic, report.static
    out.append(
        "kinematic: ok=%s %s"
        % (
            "yes" if kin.kinematic_ok else "no",
            " ".join("%s=%s" % (k, _f(v)) for k, v in kin.residuals.items()),
        )
    )
    out.append(
        "static: ok=%s %s"
        % (
            "yes" if stat.static_ok else "no",
            " ".join("%s=%s" % (k, _f(v)) for k, v in stat.residuals.items()),
        )
    )
    c = report.contact
    out.append(
        "contact: regime=%s gap=%s traction=%s complementarity=%s action_reaction=%s"
        % (
            c.regime,
            _f(c.gap),
            _f(c.traction_normal),
            _f(c.complementarity_residual),
            _f(c.action_reaction_residual),
        )
    )
    if report.enclosure is not None:
        e = report.enclosure
        out.append(
            "enclosure: e_potential=%s e_complementary=%s gap=%s"
            % (_f(e.e_potential), _f(e.e_complementary), _f(e.gap))
        )
    else:
        out.append("enclosure: unavailable")
    for i, cr in enumerate(report.criteria, start=1):
        out.append(
            "criteria body%d: primal=%s complementary=%s min_q=%s window=(%s, %s)"
            % (
                i,
                "ok" if cr.primal_ok else "violated",
                "ok" if cr.complementary_ok else "violated",
                _f(cr.min_quadratic_value),
                _f(cr.pressure_window[0]),
                _f(cr.pressure_window[1]),
            )
        )
    out.append(_interval_line("closed_form", report.closed_form))
    out.append(_interval_line("numeric", report.numeric))
    out.append(_interval_line("oracle", report.oracle))
    if report.warnings:
        out.append("warnings:")
        for w in report.warnings:
            out.append("- %s" % w)
    else:
        out.append("warnings: none")
    return "\n".join(out) + "\n"


def format_csv(report):
    rows = ["source,tau_lo,tau_hi,empty,regime"]
    for name, iv in (
        ("closed_form", report.closed_form),
        ("numeric", report.numeric),
        ("oracle", report.oracle),
    ):
        if iv is None:
            rows.append("%s,,,," % name)
        else:
            rows.append(
                "%s,%s,%s,%s,%s"
                % (
                    name,
                    _f(iv.tau_lo),
                    _f(iv.tau_hi),
                    "true" if iv.empty else "false",
                    iv.regime,
                )
            )
    return "\n".join(rows) + "\n"


def _jsonish(value):
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        fields = dataclasses.fields(value)
        inner = ", ".join(
            '"%s": %s' % (f.name, _jsonish(getattr(value, f.name))) for f in fields
        )
        return "{%s}" % inner
    if isinstance(value, dict):
        inner = ", ".join('"%s": %s' % (k, _jsonish(v)) for k, v in value.items())
        return "{%s}" % inner
    if isinstance(value, (list, tuple)):
        return "[%s]" % ", ".join(_jsonish(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, float):
        return _f(value)
    if isinstance(value, int):
        return "%d" % value
    return '"%s"' % value


def format_jsonish(report):
    return _jsonish(report) + "\n"


FORMATS = {"report": format_report, "csv": format_csv, "json-like": format_jsonish}


def sweep(config, param, lo, hi, steps):
    """Closed-form interval as one parameter varies; CSV text."""
    if param not in SWEEP_PARAMS:
        raise ValidationError(
            "sweep parameter must be one of %s" % ", ".join(SWEEP_PARAMS)
        )
    if not (isinstance(steps, int) and steps >= 2):
        raise ValidationError("sweep needs at least 2 steps")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValidationError("sweep range must be finite with lo < hi")
    rows = ["param,tau_lo,tau_hi,empty,regime,error"]
    for v in np.linspace(lo, hi, steps):
        cfg = _with_param(config, param, float(v))
        try:
            iv = _closed_form(cfg)
            rows.append(
                "%s,%s,%s,%s,%s,"
                % (
                    _f(v),
                    _f(iv.tau_lo),
                    _f(iv.tau_hi),
                    "true" if iv.empty else "false",
                    iv.regime,
                )
            )
        except ContactBoundsError as e:
            rows.append('%s,,,,,"%s"' % (_f(v), e))
    return "\n".join(rows) + "\n"


def _with_param(config, param, value):
    if param in ("C1", "a1", "b1"):
        body = dataclasses.replace(config.body1, **{param[0]: value})
        return dataclasses.replace(config, body1=body)
    if param in ("C2", "a2", "b2"):
        body = dataclasses.replace(config.body2, **{param[0]: value})
        return dataclasses.replace(config, body2=body)
    return dataclasses.replace(config, **{param: value})


def verify(config):
    """Built-in consistency battery; returns (exit_code, report_text)."""
    lines = []
    failures = 0

    def check(name, ok, detail):
        nonlocal failures
        if not ok:
            failures += 1
        lines.append("%s %s: %s" % ("PASS" if ok else "FAIL", name, detail))

    rng = np.random.default_rng(0)
    worst_inv = 0.0
    worst_eig = 0.0
    for _ in range(20):
        m = rng.standard_normal((3, 3))
        if abs(tensor3.det(m)) <= 1e-6:
            continue
        worst_inv = max(
            worst_inv, float(np.max(np.abs(tensor3.inverse(m) @ m - np.eye(3))))
        )
        s = m + m.T
        w = tensor3.sym_eigenvalues(s)
        worst_eig = max(worst_eig, abs(sum(w) - np.trace(s)))
    check("tensor identities", worst_inv < 1e-12 and worst_eig < 1e-9,
          "inverse residual %.3e, eigenvalue trace residual %.3e" % (worst_inv, worst_eig))

    system = build_system(config)
    worst_j = 0.0
    inj = True
    for body in (system.body1, system.body2):
        for x in np.linspace(body.domain.x_lo, body.domain.x_hi, 7):
            worst_j = max(worst_j, abs(jacobian(body.map, (x, 0.5, 0.5)) - 1.0))
        inj = inj and injectivity_check(body.map, body.domain, config.quad_order)
    check("isochoric maps", worst_j < 1e-12, "|J - 1| max %.3e" % worst_j)
    check("injectivity", inj, "volume test on both bodies")

    rule = QuadratureRule(config.quad_order)
    fine = QuadratureRule(min(2 * config.quad_order, 64))
    tau = config.tau if config.tau is not None else -0.25 * config.body1.C
    ep1 = potential_energy(system, tau, rule)
    ep2 = potential_energy(system, tau, fine)
    check(
        "quadrature convergence",
        abs(ep1 - ep2) < 1e-9 * max(1.0, abs(ep1)),
        "order %d vs %d: delta %.3e" % (rule.order, fine.order, abs(ep1 - ep2)),
    )

    worst_fd = 0.0
    for _ in range(5):
        lam = np.exp(rng.uniform(-0.3, 0.3, 2))
        F = np.diag([lam[0], lam[1], 1.0 / (lam[0] * lam[1])])
        Q = rng.standard_normal((3, 3))
        Q, _ = np.linalg.qr(Q)
        if np.linalg.det(Q) < 0.0:
            Q[:, 0] = -Q[:, 0]
        F = Q @ F
        p = rng.uniform(-0.5, 0.5)
        model = NeoHookeanIncompressible(config.body1.C)
        P = piola_stress(model, F, p)
        h = 1e-6
        G = rng.standard_normal((3, 3))
        G /= np.linalg.norm(G)

        def aug(M):
            return 0.5 * model.C * (np.sum(M * M) - 3.0) - p * (np.linalg.det(M) - 1.0)

        fd = (aug(F + h * G) - aug(F - h * G)) / (2.0 * h)
        worst_fd = max(worst_fd, abs(fd - tensor3.ddot(P, G)) / max(1.0, abs(fd)))
    check("stress derivative", worst_fd < 1e-6, "max relative gap %.3e" % worst_fd)

    closed = _closed_form(config)
    fp = _fixed_params(config)
    if closed.empty:
        try:
            numeric_load_bounds(config.example, fp, {"tol": 1e-8})
            ok_iv = False
            detail = "closed form empty but bisection found loads"
        except InfeasibleProblem:
            ok_iv = True
            detail = "closed form empty, bisection agrees"
    else:
        try:
            numeric = numeric_load_bounds(config.example, fp, {"tol": 1e-8})
            oracle = brute_force_oracle(config.example, fp, config.grid_n)
            b_lo, b_hi = search_bracket(config.example, fp)
            res = (b_hi - b_lo) / config.grid_n
            d_num = max(
                abs(numeric.tau_lo - closed.tau_lo), abs(numeric.tau_hi - closed.tau_hi)
            )
            d_orc = max(
                abs(oracle.tau_lo - closed.tau_lo), abs(oracle.tau_hi - closed.tau_hi)
            )
            ok_iv = d_num <= 1e-6 and oracle.regime == "closed" and d_orc <= 2.0 * res
            detail = "numeric gap %.3e, oracle gap %.3e (res %.3e)" % (d_num, d_orc, res)
        except InfeasibleProblem as e:
            ok_iv = False
            detail = str(e)
    check("interval consistency", ok_iv, detail)

    body = system.body1
    window = pressure_window(body)[1]

    def flag(p):
        probe_body = dataclasses.replace(body, pressure=Constant(p))
        return criteria_check(probe_body, 50, config.seed).complementary_ok

    ok_flip = (not flag(window * 1.02)) and flag(window * 0.98) and (
        not flag(-window * 1.02)
    ) and flag(-window * 0.98)
    check("window flip", ok_flip, "edges +/-%s bracket the flip" % _f(window))

    if config.example == "bending":
        b1, _ = _effective_offsets(config)
        rho_out = config.body1.a + config.body2.a + b1
        C1 = config.body1.C
        a1 = config.body1.a
        rho_i, rho_c = b1, b1 + a1
        base = lambda rho: C1 * (config.A**2 * rho / (2.0 * a1) + a1**2 / (2.0 * rho))
        need = (base(rho_c) - base(rho_i)) * math.sqrt(rho_i) / a1
        tau_ref = -need - 0.5 * C1
        exact = bend_pair(
            config.body1.C, config.body2.C, config.A, a1, config.body2.a, rho_out, tau_ref
        )
    else:
        tau_ref = -0.3 * min(config.body1.C, config.body2.C)
        exact = stretch_pair(config.body1.C, config.body2.C, tau_ref)
    enc = enclosure(exact, exact, tau_ref, rule)
    check(
        "energy equality",
        abs(enc.gap) < 1e-8,
        "duality gap %.3e at tau=%s" % (abs(enc.gap), _f(tau_ref)),
    )

    worst_gap = 0.0
    for delta in (0.01, 0.03, 0.08):
        if config.example == "bending":
            m1 = exact.body1.map
            trial_map = StretchBend(m1.A, m1.a, m1.b - delta * 0.1)
            trial_body = dataclasses.replace(exact.body1, map=trial_map)
            trial = dataclasses.replace(exact, body1=trial_body)
        else:
            m1, m2 = exact.body1.map, exact.body2.map
            a_t = m1.a * (1.0 + delta)
            xc = exact.x_c
            b_t = (m2.a * xc + m2.b) - a_t * xc - delta * 0.05
            trial_body = dataclasses.replace(
                exact.body1, map=TriaxialStretch(a_t, b_t)
            )
            trial = dataclasses.replace(exact, body1=trial_body)
        e = enclosure(trial, exact, tau_ref, rule)
        worst_gap = min(worst_gap, e.gap)
    check(
        "enclosure",
        worst_gap >= -1e-9,
        "smallest duality gap over trials %.3e" % worst_gap,
    )

    rep1 = format_report(run(config))
    rep2 = format_report(run(config))
    check("determinism", rep1 == rep2, "report bytes on repeated runs")

    code = 0 if failures == 0 else 1
    header = "verify: %d checks, %d failed" % (len(lines), failures)
    return code, header + "\n" + "\n".join(lines) + "\n"


def _emit(text, output):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="contactbounds")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", "sweep", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--output")
        p.add_argument("--seed", type=int)
        p.add_argument("--quad-order", type=int)
        p.add_argument("--grid-n", type=int)
        if name == "run":
            p.add_argument(
                "--format", choices=sorted(FORMATS), default="report"
            )
        if name == "sweep":
            p.add_argument("--param", required=True)
            p.add_argument(
                "--range",
                required=True,
                help="lo:hi:steps",
                dest="sweep_range",
            )
    args = parser.parse_args(argv)
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    try:
        config = parse_config(text)
        for field, name in (
            ("seed", "seed"),
            ("quad_order", "quad_order"),
            ("grid_n", "grid_n"),
        ):
            v = getattr(args, field, None)
            if v is not None:
                config = dataclasses.replace(config, **{name: v})
                config = parse_config(serialize_config(config))  # revalidate
        if args.command == "run":
            report = run(config)
            _emit(FORMATS[args.format](report), args.output)
            return 0
        if args.command == "sweep":
            parts = args.sweep_range.split(":")
            if len(parts) != 3:
                raise ValidationError("--range must be lo:hi:steps")
            try:
                lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError:
                raise ValidationError("--range must be lo:hi:steps") from None
            _emit(sweep(config, args.param, lo, hi, steps), args.output)
            return 0
        code, text = verify(config)
        _emit(text, args.output)
        return code
    except (ParseError, ValidationError, InvalidParameters, OutOfDomain, FamilyMismatch) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    except ContactBoundsError as e:
        sys.stderr.write("numerical failure: %s\n" % e)
        return 3


if __name__ == "__main__":
    sys.exit(main())
