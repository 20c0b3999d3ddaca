"""Casimir-Polder potentials, forces, and stationary points.

An atom with static electric/magnetic polarizabilities (alpha0, beta0) sits
at 0 < z < a between the walls. The potentials follow from the correlators
via V_E = -alpha0/2 * <E^2> and V_M = -beta0/2 * <B^2>; here they are written
out as closed forms in the profile functions, and the verification suite
checks the two routes against each other.

Conductor-conductor ("cc"), with p = cot_profile(pi*z/a):
    V_E = -(alpha0*pi^3)/(3*a^4) * (3*p - 1/120)
    V_M = +(beta0 *pi^3)/(3*a^4) * (3*p + 1/120)
    V   = -(alpha0-beta0)*pi^3/a^4 * p + (alpha0+beta0)*pi^3/(360*a^4)

Conductor-permeable ("cp"), with q = csc_profile(pi*z/a):
    V_E = -(alpha0*pi^3)/(3*a^4) * (3*q + 7/960)
    V_M = +(beta0 *pi^3)/(3*a^4) * (3*q - 7/960)
    V   = -(alpha0-beta0)*pi^3/a^4 * q - (7/8)*(alpha0+beta0)*pi^3/(360*a^4)

Sign conventions: force_z = -dV/dz, so force_z > 0 pushes the atom toward
the wall at z = a. Natural units (hbar = c = 1): with polarizabilities in
length^3, potentials are inverse lengths and forces inverse lengths squared.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .correlators import Geometry, WallKind
from .errors import (
    FlatPotentialWarning,
    NegativePolarizabilityWarning,
    OutOfDomain,
    TooCloseToWall,
)
from .profiles import (
    DEFAULT_GUARD,
    PI,
    GuardPolicy,
    cot_profile,
    cot_profile_deriv,
    csc_profile,
    csc_profile_deriv,
    wall_distance,
)

# Transcribed independently of the constants in profiles/correlators; the
# cross-module consistency checks in verification.py are only meaningful if
# each module carries its own copy.
_EIGHTH_CONST = 1.0 / 120.0
_PERMEABLE_EIGHTH = 7.0 / 960.0
_COMBINED_CONST = 1.0 / 360.0
_PERMEABLE_COMBINED = 7.0 / 8.0 / 360.0


@dataclass(frozen=True)
class AtomResponse:
    """Static polarizabilities alpha0 (electric), beta0 (magnetic).

    Both in length^3 (natural units). Negative values are admitted - the
    formulas are linear - but flagged, since for ground-state atoms the
    static responses are normally positive.
    """

    alpha0: float
    beta0: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.alpha0) and math.isfinite(self.beta0)):
            raise ValueError("polarizabilities must be finite")
        if self.alpha0 < 0.0 or self.beta0 < 0.0:
            warnings.warn(
                "negative static polarizability supplied",
                NegativePolarizabilityWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class PotentialSample:
    """One evaluated point: position, potential, force, evaluation regime."""

    z: float
    V: float
    force_z: float
    regime: str  # "exact" or "asymptotic"


def potential_electric(
    atom: AtomResponse,
    geom: Geometry,
    z: float,
    guard: GuardPolicy = DEFAULT_GUARD,
) -> float:
    """Electric part -alpha0/2 * <E^2>, as a closed form in the profile."""
    xi = geom.xi(z)
    pref = atom.alpha0 * PI ** 3 / (3.0 * geom.separation_a ** 4)
    if geom.kind is WallKind.CONDUCTOR_CONDUCTOR:
        return -pref * (3.0 * cot_profile(xi, guard) - _EIGHTH_CONST)
    return -pref * (3.0 * csc_profile(xi, guard) + _PERMEABLE_EIGHTH)


def potential_magnetic(
    atom: AtomResponse,
    geom: Geometry,
    z: float,
    guard: GuardPolicy = DEFAULT_GUARD,
) -> float:
    """Magnetic part -beta0/2 * <B^2>, as a closed form in the profile."""
    xi = geom.xi(z)
    pref = atom.beta0 * PI ** 3 / (3.0 * geom.separation_a ** 4)
    if geom.kind is WallKind.CONDUCTOR_CONDUCTOR:
        return pref * (3.0 * cot_profile(xi, guard) + _EIGHTH_CONST)
    return pref * (3.0 * csc_profile(xi, guard) - _PERMEABLE_EIGHTH)


def potential_total(
    atom: AtomResponse,
    geom: Geometry,
    z: float,
    guard: GuardPolicy = DEFAULT_GUARD,
) -> float:
    """Combined potential in its own closed form (not the sum of the parts).

    Equality with potential_electric + potential_magnetic is a checked
    invariant, not an implementation shortcut.
    """
    xi = geom.xi(z)
    a4 = geom.separation_a ** 4
    diff = atom.alpha0 - atom.beta0
    both = atom.alpha0 + atom.beta0
    if geom.kind is WallKind.CONDUCTOR_CONDUCTOR:
        return (
            -diff * PI ** 3 / a4 * cot_profile(xi, guard)
            + both * PI ** 3 * _COMBINED_CONST / a4
        )
    return (
        -diff * PI ** 3 / a4 * csc_profile(xi, guard)
        - both * PI ** 3 * _PERMEABLE_COMBINED / a4
    )


def single_wall_limit(atom: AtomResponse, wall_type: str, distance: float) -> float:
    """a -> infinity limit at distance d from one wall.

    conducting: -3*(alpha0-beta0)/(8*pi*d^4)   (attractive for alpha0 > beta0)
    permeable:  +3*(alpha0-beta0)/(8*pi*d^4)   (repulsive for alpha0 > beta0)
    """
    if wall_type not in ("conducting", "permeable"):
        raise ValueError(f"unknown wall_type {wall_type!r}")
    if not (distance > 0.0 and math.isfinite(distance)):
        raise OutOfDomain(f"wall distance must be positive, got {distance!r}")
    magnitude = 3.0 * (atom.alpha0 - atom.beta0) / (8.0 * PI * distance ** 4)
    return -magnitude if wall_type == "conducting" else magnitude


def force(
    atom: AtomResponse,
    geom: Geometry,
    z: float,
    guard: GuardPolicy = DEFAULT_GUARD,
) -> float:
    """Analytic -dV/dz via the profile derivative and dxi/dz = pi/a."""
    xi = geom.xi(z)
    a5 = geom.separation_a ** 5
    diff = atom.alpha0 - atom.beta0
    if geom.kind is WallKind.CONDUCTOR_CONDUCTOR:
        return diff * PI ** 4 / a5 * cot_profile_deriv(xi, guard)
    return diff * PI ** 4 / a5 * csc_profile_deriv(xi, guard)


def potential_sample(
    atom: AtomResponse,
    geom: Geometry,
    z: float,
    guard: GuardPolicy = DEFAULT_GUARD,
) -> PotentialSample:
    """Potential and force at z, tagged with the evaluation regime."""
    xi = geom.xi(z)
    regime = "asymptotic" if wall_distance(xi) < guard.epsilon else "exact"
    return PotentialSample(
        z=z,
        V=potential_total(atom, geom, z, guard),
        force_z=force(atom, geom, z, guard),
        regime=regime,
    )


def _bisect_force_root(f, lo: float, hi: float, f_lo: float, tol: float) -> float:
    """Root of f by bisection on a sign-change bracket, to |hi-lo| <= tol."""
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:  # bracket at floating-point resolution
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def stationary_points(
    atom: AtomResponse,
    geom: Geometry,
    z_lo: float,
    z_hi: float,
    tol: float = 1e-12,
    guard: GuardPolicy = DEFAULT_GUARD,
    scan_points: int = 2048,
) -> list[tuple[float, str]]:
    """All force roots in [z_lo, z_hi], each classified min/max/saddle-flat.

    Scan on a uniform grid, then bisection on every sign change; the grid is
    fine enough because the potential has at most one interior stationary
    point in these geometries. Returns [] when the force never changes sign.
    A degenerate atom (alpha0 == beta0) has a position-independent potential:
    that returns [] with a FlatPotentialWarning rather than every point.
    """
    a = geom.separation_a
    if not (0.0 < z_lo < z_hi < a):
        raise OutOfDomain(
            f"need 0 < z_lo < z_hi < a, got z_lo={z_lo!r}, z_hi={z_hi!r}, a={a!r}"
        )
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    band = guard.epsilon * a / PI
    if z_lo < band or z_hi > a - band:
        raise TooCloseToWall(
            f"bracket [{z_lo!r}, {z_hi!r}] enters the guard band of width {band!r}"
        )
    if atom.alpha0 == atom.beta0:
        warnings.warn(
            "flat potential: alpha0 == beta0 makes every point stationary",
            FlatPotentialWarning,
            stacklevel=2,
        )
        return []

    def f(z: float) -> float:
        return force(atom, geom, z, guard)

    step = (z_hi - z_lo) / scan_points
    grid = [z_lo + i * step for i in range(scan_points + 1)]
    values = [f(z) for z in grid]

    roots: list[float] = []
    for i in range(scan_points):
        if values[i] == 0.0:
            roots.append(grid[i])
        elif (values[i] < 0.0) != (values[i + 1] < 0.0) and values[i + 1] != 0.0:
            roots.append(
                _bisect_force_root(f, grid[i], grid[i + 1], values[i], tol)
            )
    if values[-1] == 0.0:
        roots.append(grid[-1])

    # Classify by the force slope: force = -dV/dz, so a positive slope at the
    # root means V'' < 0 (a maximum). The flat threshold is scaled to the
    # natural force-gradient magnitude pi^4*(|alpha0|+|beta0|)/a^6.
    h = max(tol, 1e-7 * a)
    flat_scale = PI ** 4 * (abs(atom.alpha0) + abs(atom.beta0)) / a ** 6
    out: list[tuple[float, str]] = []
    for z_star in roots:
        zp = min(z_star + h, z_hi)
        zm = max(z_star - h, z_lo)
        slope = (f(zp) - f(zm)) / (zp - zm)
        if abs(slope) <= 1e-9 * flat_scale:
            kind = "saddle-flat"
        elif slope > 0.0:
            kind = "max"
        else:
            kind = "min"
        out.append((z_star, kind))
    return out
