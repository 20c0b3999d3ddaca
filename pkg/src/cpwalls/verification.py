"""Self-verification registry: every cross-module invariant as a named check.

Each check is registered under a stable name; REQUIRED_CHECK_NAMES is the
authoritative inventory and the registry is asserted complete at import time,
so a check cannot silently drop out of the suite. run_verification executes
the full inventory and reports one record per check; a check passes iff its
measured error is at or below its tolerance (binary checks count violations
against a tolerance of zero).

Levels: "quick" uses ~10 sample points per check with relaxed oracle
tolerances (1e-8); "full" uses 100+ points and the certified 1e-10 budget.

The near/far-wall series checks read the expansion constants through the
profiles module object on purpose: perturbing profiles.COT_SERIES_CONST (a
fault-injection exercise for the test harness) must make exactly those
checks fail, proving the suite can actually catch a miscopied constant.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from . import profiles
from .analysis import limit_convergence_study
from .correlators import (
    Geometry,
    WallKind,
    correlator_bb,
    correlator_eb,
    correlator_ee,
    mean_square_b,
    mean_square_e,
)
from .potentials import (
    AtomResponse,
    force,
    potential_electric,
    potential_magnetic,
    potential_total,
)
from .profiles import (
    PI,
    OracleConfig,
    cot_profile,
    cot_profile_deriv,
    cot_profile_via_hurwitz,
    cot_profile_via_images,
    csc_profile,
    csc_profile_deriv,
    csc_profile_via_images,
    image_terms_needed,
    wall_distance,
)

_CC = Geometry(WallKind.CONDUCTOR_CONDUCTOR, 1.0)
_CP = Geometry(WallKind.CONDUCTOR_PERMEABLE, 1.0)
_GEOMETRIES = (_CC, _CP)
# Binary-exact polarizabilities keep the algebraic identities at the few-ulp
# level instead of hiding them under input rounding.
_ATOMS = (
    AtomResponse(1.0, 0.0),
    AtomResponse(0.0, 1.0),
    AtomResponse(1.0, 0.25),
    AtomResponse(0.5, 2.0),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_abs_error: float
    max_rel_error: float
    tolerance: float
    passed: bool
    points_tested: int

    def __post_init__(self) -> None:
        # normalize numpy scalars leaking in from grid arithmetic, so the
        # serializers see plain Python types
        object.__setattr__(self, "max_abs_error", float(self.max_abs_error))
        object.__setattr__(self, "max_rel_error", float(self.max_rel_error))
        object.__setattr__(self, "tolerance", float(self.tolerance))
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "points_tested", int(self.points_tested))

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "max_abs_error": self.max_abs_error,
            "max_rel_error": self.max_rel_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "points_tested": self.points_tested,
        }


@dataclass
class VerificationReport:
    level: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "passed": self.passed,
            "failure_count": len(self.failures),
            "checks": [c.as_dict() for c in self.checks],
        }


REQUIRED_CHECK_NAMES = (
    "cot_profile_vs_image_sum",
    "cot_profile_vs_hurwitz",
    "csc_profile_vs_image_sum",
    "cot_profile_reflection",
    "csc_profile_antisymmetry",
    "near_wall_series_cot",
    "near_wall_series_csc",
    "far_wall_series_cot",
    "far_wall_series_csc",
    "cot_profile_derivative_fd",
    "csc_profile_derivative_fd",
    "cot_profile_positive",
    "tensor_structure",
    "eb_zero",
    "trace_sum_constant",
    "correlator_scaling",
    "cc_reflection_cp_asymmetry",
    "potential_additivity",
    "potential_from_correlators",
    "potential_linearity",
    "potential_scaling",
    "cc_potential_reflection",
    "single_wall_convergence",
    "force_fd_consistency",
)

_REGISTRY: dict = {}


def _register(name: str):
    def deco(fn):
        _REGISTRY[name] = fn
        return fn

    return deco


def _grid(lo: float, hi: float, n: int) -> list[float]:
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def _abs_result(name, diffs, refs, tol, points) -> CheckResult:
    """Pass/fail on max absolute error; relative column is informational."""
    max_abs = max(diffs)
    max_rel = max(d / abs(r) for d, r in zip(diffs, refs))
    return CheckResult(name, max_abs, max_rel, tol, max_abs <= tol, points)


def _rel_result(name, diffs, denoms, tol, points) -> CheckResult:
    """Pass/fail on max relative error; denominators supplied by the check."""
    max_abs = max(diffs)
    max_rel = max(
        (d / dn if dn > 0.0 else (0.0 if d == 0.0 else math.inf))
        for d, dn in zip(diffs, denoms)
    )
    return CheckResult(name, max_abs, max_rel, tol, max_rel <= tol, points)


def _count_result(name, violations, worst, points) -> CheckResult:
    """Binary check: passes iff no violations; worst is informational."""
    return CheckResult(
        name, float(violations), worst, 0.0, violations == 0, points
    )


def _oracle_setup(level: str) -> tuple[list[float], float, float]:
    if level == "quick":
        return _grid(0.05, PI - 0.05, 10), 1e-10, 1e-8
    return _grid(0.05, PI - 0.05, 120), 1e-12, 1e-10


@_register("cot_profile_vs_image_sum")
def _check_cot_images(level: str) -> CheckResult:
    xs, target, tol = _oracle_setup(level)
    diffs, refs = [], []
    for x in xs:
        cfg = OracleConfig(image_terms_needed(x, target), target)
        val = cot_profile(x)
        diffs.append(abs(val - cot_profile_via_images(x, cfg)))
        refs.append(val)
    return _abs_result("cot_profile_vs_image_sum", diffs, refs, tol, len(xs))


@_register("cot_profile_vs_hurwitz")
def _check_cot_hurwitz(level: str) -> CheckResult:
    xs, _, tol = _oracle_setup(level)
    diffs, refs = [], []
    for x in xs:
        val = cot_profile(x)
        diffs.append(abs(val - cot_profile_via_hurwitz(x)))
        refs.append(val)
    return _abs_result("cot_profile_vs_hurwitz", diffs, refs, tol, len(xs))


@_register("csc_profile_vs_image_sum")
def _check_csc_images(level: str) -> CheckResult:
    xs, target, tol = _oracle_setup(level)
    diffs, refs = [], []
    for x in xs:
        cfg = OracleConfig(image_terms_needed(x, target), target)
        diffs.append(abs(csc_profile(x) - csc_profile_via_images(x, cfg)))
        refs.append(cot_profile(x))  # csc profile crosses zero; scale by cot
    return _abs_result("csc_profile_vs_image_sum", diffs, refs, tol, len(xs))


@_register("cot_profile_reflection")
def _check_cot_reflection(level: str) -> CheckResult:
    n = 10 if level == "quick" else 100
    xs = _grid(0.02, 1.55, n)
    diffs = [abs(cot_profile(x) - cot_profile(PI - x)) for x in xs]
    denoms = [abs(cot_profile(x)) for x in xs]
    return _rel_result("cot_profile_reflection", diffs, denoms, 1e-12, n)


@_register("csc_profile_antisymmetry")
def _check_csc_antisymmetry(level: str) -> CheckResult:
    n = 10 if level == "quick" else 100
    xs = _grid(0.02, 1.55, n)
    diffs = [abs(csc_profile(x) + csc_profile(PI - x)) for x in xs]
    denoms = [max(abs(csc_profile(x)), 1.0) for x in xs]
    return _rel_result("csc_profile_antisymmetry", diffs, denoms, 1e-12, n)


def _series_ratio_spread(values: list[float]) -> float:
    """Spread of the fitted O(u^2) coefficient across scales, as a ratio."""
    mean = math.fsum(values) / len(values)
    if mean == 0.0:
        return math.inf
    return (max(values) - min(values)) / abs(mean)


def _series_scales(level: str) -> list[float]:
    return [0.1, 0.05] if level == "quick" else [0.1, 0.05, 0.025, 0.0125]


@_register("near_wall_series_cot")
def _check_near_series_cot(level: str) -> CheckResult:
    us = _series_scales(level)
    cs = [
        (cot_profile(u) - profiles.SERIES_LEADING * u ** -4
         - profiles.COT_SERIES_CONST) / u ** 2
        for u in us
    ]
    spread = _series_ratio_spread(cs)
    return CheckResult(
        "near_wall_series_cot", spread, spread, 0.05, spread <= 0.05, len(us)
    )


@_register("near_wall_series_csc")
def _check_near_series_csc(level: str) -> CheckResult:
    us = _series_scales(level)
    cs = [
        (csc_profile(u) - profiles.SERIES_LEADING * u ** -4
         + profiles.CSC_SERIES_CONST) / u ** 2
        for u in us
    ]
    spread = _series_ratio_spread(cs)
    return CheckResult(
        "near_wall_series_csc", spread, spread, 0.05, spread <= 0.05, len(us)
    )


@_register("far_wall_series_cot")
def _check_far_series_cot(level: str) -> CheckResult:
    us = _series_scales(level)
    cs = []
    for u in us:
        x = PI - u
        w = wall_distance(x)
        cs.append(
            (cot_profile(x) - profiles.SERIES_LEADING * w ** -4
             - profiles.COT_SERIES_CONST) / w ** 2
        )
    spread = _series_ratio_spread(cs)
    return CheckResult(
        "far_wall_series_cot", spread, spread, 0.05, spread <= 0.05, len(us)
    )


@_register("far_wall_series_csc")
def _check_far_series_csc(level: str) -> CheckResult:
    us = _series_scales(level)
    cs = []
    for u in us:
        x = PI - u
        w = wall_distance(x)
        # Far-wall expansion carries the opposite signs: -(3/8)w^-4 + 7/960.
        cs.append(
            (csc_profile(x) + profiles.SERIES_LEADING * w ** -4
             - profiles.CSC_SERIES_CONST) / w ** 2
        )
    spread = _series_ratio_spread(cs)
    return CheckResult(
        "far_wall_series_csc", spread, spread, 0.05, spread <= 0.05, len(us)
    )


def _fd_derivative_check(name, fn, deriv, level, seed) -> CheckResult:
    n = 10 if level == "quick" else 50
    rng = random.Random(seed)
    h = 1e-6
    diffs, denoms = [], []
    for _ in range(n):
        x = rng.uniform(0.1, PI - 0.1)
        fd = (fn(x + h) - fn(x - h)) / (2.0 * h)
        diffs.append(abs(deriv(x) - fd))
        denoms.append(abs(deriv(x)))
    return _rel_result(name, diffs, denoms, 1e-7, n)


@_register("cot_profile_derivative_fd")
def _check_cot_deriv_fd(level: str) -> CheckResult:
    return _fd_derivative_check(
        "cot_profile_derivative_fd", cot_profile, cot_profile_deriv, level, 1297
    )


@_register("csc_profile_derivative_fd")
def _check_csc_deriv_fd(level: str) -> CheckResult:
    return _fd_derivative_check(
        "csc_profile_derivative_fd", csc_profile, csc_profile_deriv, level, 4021
    )


@_register("cot_profile_positive")
def _check_cot_positive(level: str) -> CheckResult:
    n = 10 if level == "quick" else 200
    xs = _grid(0.01, PI - 0.01, n)
    worst = min(cot_profile(x) for x in xs)
    violations = sum(1 for x in xs if cot_profile(x) <= 0.0)
    return _count_result("cot_profile_positive", violations, worst, n)


@_register("tensor_structure")
def _check_tensor_structure(level: str) -> CheckResult:
    n = 10 if level == "quick" else 40
    violations, worst, tested = 0, 0.0, 0
    for geom in _GEOMETRIES:
        for z in _grid(0.1, 0.9, n):
            for build in (correlator_ee, correlator_bb):
                t = build(geom, z).components
                off = max(
                    abs(t[i, j]) for i in range(3) for j in range(3) if i != j
                )
                xxyy = abs(t[0, 0] - t[1, 1])
                asym = float(abs(t - t.T).max())
                worst = max(worst, off, xxyy, asym)
                violations += (off != 0.0) + (xxyy != 0.0) + (asym != 0.0)
                tested += 1
    return _count_result("tensor_structure", violations, worst, tested)


@_register("eb_zero")
def _check_eb_zero(level: str) -> CheckResult:
    n = 10 if level == "quick" else 40
    violations, worst, tested = 0, 0.0, 0
    for geom in _GEOMETRIES:
        for z in _grid(0.05, 0.95, n):
            t = correlator_eb(geom, z).components
            m = float(abs(t).max())
            worst = max(worst, m)
            violations += m != 0.0
            tested += 1
    return _count_result("eb_zero", violations, worst, tested)


@_register("trace_sum_constant")
def _check_trace_sum(level: str) -> CheckResult:
    # The cancellation 3*p - 3*p leaves the trace sum ~1e4 times smaller than
    # either trace near the walls, so the 1e-12 relative claim is tested on
    # [0.2a, 0.8a] where both traces stay O(10) times the sum.
    n = 10 if level == "quick" else 100
    diffs, denoms = [], []
    sign_violations = 0
    for geom, expected_sign in ((_CC, -1.0), (_CP, 1.0)):
        a = geom.separation_a
        sums = [
            mean_square_e(geom, z) + mean_square_b(geom, z)
            for z in _grid(0.2 * a, 0.8 * a, n)
        ]
        ref = sums[0]
        if ref * expected_sign <= 0.0:
            sign_violations += 1
        diffs.extend(abs(s - ref) for s in sums)
        denoms.extend(abs(ref) for _ in sums)
    res = _rel_result("trace_sum_constant", diffs, denoms, 1e-12, 2 * n)
    if sign_violations:
        res = CheckResult(
            res.name, res.max_abs_error, math.inf, res.tolerance, False,
            res.points_tested,
        )
    return res


@_register("correlator_scaling")
def _check_correlator_scaling(level: str) -> CheckResult:
    fracs = [0.3, 0.5, 0.77] if level == "quick" else _grid(0.1, 0.9, 20)
    diffs, denoms = [], []
    for kind in WallKind:
        base = Geometry(kind, 1.0)
        for s in (2.0, 3.0, 10.0):
            scaled = Geometry(kind, s)
            for frac in fracs:
                for build in (correlator_ee, correlator_bb):
                    t1 = build(base, frac).components
                    t2 = build(scaled, s * frac).components
                    for i in range(3):
                        diffs.append(abs(t2[i, i] * s ** 4 - t1[i, i]))
                        denoms.append(abs(t1[i, i]))
    return _rel_result(
        "correlator_scaling", diffs, denoms, 1e-12, len(diffs)
    )


@_register("cc_reflection_cp_asymmetry")
def _check_reflection_asymmetry(level: str) -> CheckResult:
    n = 10 if level == "quick" else 50
    diffs, denoms = [], []
    for z in _grid(0.05, 0.45, n):
        for build in (correlator_ee, correlator_bb):
            t1 = build(_CC, z).components
            t2 = build(_CC, 1.0 - z).components
            for i in range(3):
                diffs.append(abs(t1[i, i] - t2[i, i]))
                denoms.append(abs(t1[i, i]))
    res = _rel_result(
        "cc_reflection_cp_asymmetry", diffs, denoms, 1e-12, len(diffs)
    )
    # The conductor-permeable tensors must NOT be reflection symmetric.
    zz_quarter = correlator_ee(_CP, 0.25).components[2, 2]
    zz_three_quarter = correlator_ee(_CP, 0.75).components[2, 2]
    scale = abs(zz_quarter) + abs(zz_three_quarter)
    if abs(zz_quarter - zz_three_quarter) <= 1e-3 * scale:
        res = CheckResult(
            res.name, res.max_abs_error, math.inf, res.tolerance, False,
            res.points_tested,
        )
    return res


def _potential_floor(atom: AtomResponse, a: float) -> float:
    """Natural magnitude of the constant part of V: (|a0|+|b0|)*pi^3/(360 a^4)."""
    return (abs(atom.alpha0) + abs(atom.beta0)) * PI ** 3 / (360.0 * a ** 4)


@_register("potential_additivity")
def _check_additivity(level: str) -> CheckResult:
    n = 10 if level == "quick" else 50
    diffs, denoms = [], []
    for geom in _GEOMETRIES:
        for atom in _ATOMS:
            floor = _potential_floor(atom, geom.separation_a)
            for z in _grid(0.05, 0.95, n):
                total = potential_total(atom, geom, z)
                parts = potential_electric(atom, geom, z) + potential_magnetic(
                    atom, geom, z
                )
                diffs.append(abs(total - parts))
                denoms.append(max(abs(total), abs(parts), floor))
    return _rel_result("potential_additivity", diffs, denoms, 1e-12, len(diffs))


@_register("potential_from_correlators")
def _check_potential_correlators(level: str) -> CheckResult:
    n = 10 if level == "quick" else 50
    diffs, denoms = [], []
    for geom in _GEOMETRIES:
        for atom in _ATOMS:
            for z in _grid(0.05, 0.95, n):
                ve = potential_electric(atom, geom, z)
                ve_trace = -0.5 * atom.alpha0 * mean_square_e(geom, z)
                vm = potential_magnetic(atom, geom, z)
                vm_trace = -0.5 * atom.beta0 * mean_square_b(geom, z)
                floor_e = abs(atom.alpha0) * PI ** 3 / (360.0 * geom.separation_a ** 4)
                floor_m = abs(atom.beta0) * PI ** 3 / (360.0 * geom.separation_a ** 4)
                for x, y, fl in ((ve, ve_trace, floor_e), (vm, vm_trace, floor_m)):
                    diffs.append(abs(x - y))
                    denoms.append(max(abs(x), abs(y), fl))
    return _rel_result(
        "potential_from_correlators", diffs, denoms, 1e-12, len(diffs)
    )


@_register("potential_linearity")
def _check_linearity(level: str) -> CheckResult:
    n = 10 if level == "quick" else 25
    diffs, denoms = [], []
    atom = AtomResponse(1.0, 0.25)
    for geom in _GEOMETRIES:
        for c in (2.0, 3.0, 10.0, 0.5):
            scaled = AtomResponse(c * atom.alpha0, c * atom.beta0)
            floor = c * _potential_floor(atom, geom.separation_a)
            for z in _grid(0.05, 0.95, n):
                v1 = c * potential_total(atom, geom, z)
                v2 = potential_total(scaled, geom, z)
                diffs.append(abs(v1 - v2))
                denoms.append(max(abs(v1), abs(v2), floor))
    return _rel_result("potential_linearity", diffs, denoms, 1e-15, len(diffs))


@_register("potential_scaling")
def _check_potential_scaling(level: str) -> CheckResult:
    n = 10 if level == "quick" else 25
    diffs, denoms = [], []
    atom = AtomResponse(1.0, 0.25)
    for kind in WallKind:
        base = Geometry(kind, 1.0)
        for s in (2.0, 3.0, 10.0, 0.5):
            scaled = Geometry(kind, s)
            floor = _potential_floor(atom, 1.0)
            for z in _grid(0.05, 0.95, n):
                v1 = potential_total(atom, base, z)
                v2 = s ** 4 * potential_total(atom, scaled, s * z)
                diffs.append(abs(v1 - v2))
                denoms.append(max(abs(v1), abs(v2), floor))
    return _rel_result("potential_scaling", diffs, denoms, 1e-12, len(diffs))


@_register("cc_potential_reflection")
def _check_cc_potential_reflection(level: str) -> CheckResult:
    n = 10 if level == "quick" else 50
    diffs, denoms = [], []
    for atom in _ATOMS:
        floor = _potential_floor(atom, 1.0)
        for z in _grid(0.05, 0.45, n):
            v1 = potential_total(atom, _CC, z)
            v2 = potential_total(atom, _CC, 1.0 - z)
            diffs.append(abs(v1 - v2))
            denoms.append(max(abs(v1), abs(v2), floor))
        # Conductor-permeable anti-pattern: subtracting the constant part
        # leaves the profile term, which must be odd about the midplane.
        both = atom.alpha0 + atom.beta0
        const = -7.0 / 8.0 * both * PI ** 3 / 360.0
        for z in _grid(0.05, 0.45, n):
            p1 = potential_total(atom, _CP, z) - const
            p2 = potential_total(atom, _CP, 1.0 - z) - const
            diffs.append(abs(p1 + p2))
            denoms.append(max(abs(p1), abs(p2), floor))
    return _rel_result(
        "cc_potential_reflection", diffs, denoms, 1e-12, len(diffs)
    )


@_register("single_wall_convergence")
def _check_single_wall(level: str) -> CheckResult:
    a_values = [20.0, 40.0, 80.0, 160.0]
    atom = AtomResponse(1.0, 0.0)
    violations, worst = 0, 0.0
    for wall_type in ("conducting", "permeable"):
        study = limit_convergence_study(atom, wall_type, 1.0, a_values)
        errs = [row.rel_error for row in study.rows]
        violations += sum(1 for e1, e2 in zip(errs, errs[1:]) if e2 >= e1)
        exponent = study.convergence_exponent()
        if not 3.5 <= exponent <= 4.5:
            violations += 1
        worst = max(worst, errs[-1])
    return _count_result("single_wall_convergence", violations, worst, 2 * len(a_values))


@_register("force_fd_consistency")
def _check_force_fd(level: str) -> CheckResult:
    n = 10 if level == "quick" else 100
    rng = random.Random(90125)
    diffs, denoms = [], []
    atom = AtomResponse(1.0, 0.25)
    for geom in _GEOMETRIES:
        a = geom.separation_a
        h = 1e-6 * a
        for _ in range(n):
            z = rng.uniform(0.05 * a, 0.95 * a)
            fd = -(
                potential_total(atom, geom, z + h)
                - potential_total(atom, geom, z - h)
            ) / (2.0 * h)
            analytic = force(atom, geom, z)
            diffs.append(abs(analytic - fd))
            denoms.append(abs(analytic))
    return _rel_result("force_fd_consistency", diffs, denoms, 1e-6, 2 * n)


_missing = set(REQUIRED_CHECK_NAMES) - set(_REGISTRY)
_extra = set(_REGISTRY) - set(REQUIRED_CHECK_NAMES)
if _missing or _extra:  # registry must be complete at import time
    raise AssertionError(
        f"verification registry incomplete: missing={sorted(_missing)},"
        f" unexpected={sorted(_extra)}"
    )


def run_verification(level: str = "quick") -> VerificationReport:
    """Run every registered check at the given level ("quick" or "full")."""
    if level not in ("quick", "full"):
        raise ValueError(f"unknown verification level {level!r}")
    checks = [_REGISTRY[name](level) for name in REQUIRED_CHECK_NAMES]
    return VerificationReport(level=level, checks=checks)
