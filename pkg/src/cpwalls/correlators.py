"""Renormalized vacuum correlator tensors between two parallel walls.

A conducting wall sits at z = 0 and a second wall at z = a; the second wall
is either conducting (kind "cc") or infinitely permeable (kind "cp", always
at z = a). The free-space contribution is already subtracted, so every
component scales like a^-4 at fixed z/a.

All nine pair tensors (EE, BB, EB) are diagonal with xx = yy, and the EB
tensors vanish identically; both facts are constructed and then asserted so
downstream code can rely on them. In natural units (hbar = c = 1) the
components carry dimension length^-4.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfDomain
from .profiles import DEFAULT_GUARD, PI, GuardPolicy, cot_profile, csc_profile

# Diagonal constants: components are pref*(const -+ profile). For "cc" the
# constants are -+1/120 (xx/yy vs zz); for "cp" the same constants carry an
# extra factor -7/8. Written independently of the series constants in
# profiles.py on purpose: the verification suite compares the two routes.
_DIAG_CONST = 1.0 / 120.0
_PERMEABLE_FACTOR = -7.0 / 8.0


class WallKind(enum.Enum):
    """Which pair of walls bounds the vacuum."""

    CONDUCTOR_CONDUCTOR = "cc"
    CONDUCTOR_PERMEABLE = "cp"


@dataclass(frozen=True)
class Geometry:
    """Wall pair and separation; the permeable wall (if any) is at z = a."""

    kind: WallKind
    separation_a: float

    def __post_init__(self) -> None:
        if not (self.separation_a > 0.0 and math.isfinite(self.separation_a)):
            raise OutOfDomain(
                f"separation_a must be positive and finite, got {self.separation_a!r}"
            )

    def xi(self, z: float) -> float:
        """Scaled coordinate pi*z/a for a point strictly between the walls."""
        if not (0.0 < z < self.separation_a) or not math.isfinite(z):
            raise OutOfDomain(
                f"z={z!r} is not strictly between the walls (0, {self.separation_a})"
            )
        return PI * (z / self.separation_a)


@dataclass
class CorrelatorTensor:
    """3x3 symmetric correlator matrix at a point, natural units."""

    components: np.ndarray
    field_pair: str  # one of "EE", "BB", "EB"

    def __post_init__(self) -> None:
        self.components = np.asarray(self.components, dtype=np.float64)
        assert self.components.shape == (3, 3)
        assert self.field_pair in ("EE", "BB", "EB")
        offdiag = self.components[~np.eye(3, dtype=bool)]
        assert np.all(offdiag == 0.0), "correlator tensors must be diagonal"
        assert self.components[0, 0] == self.components[1, 1], "xx must equal yy"

    def trace(self) -> float:
        return float(self.components[0, 0] + self.components[1, 1] + self.components[2, 2])


def tensor_prefactor(separation_a: float) -> float:
    """Common scale (pi/a)^4 * 2/(3*pi) of every correlator component."""
    return (PI / separation_a) ** 4 * (2.0 / (3.0 * PI))


def _diagonal(geom: Geometry, z: float, guard: GuardPolicy, flip_profile: bool):
    pref = tensor_prefactor(geom.separation_a)
    xi = geom.xi(z)
    if geom.kind is WallKind.CONDUCTOR_CONDUCTOR:
        prof = cot_profile(xi, guard)
        c_par, c_perp = -_DIAG_CONST, _DIAG_CONST
    else:
        prof = csc_profile(xi, guard)
        c_par = _PERMEABLE_FACTOR * -_DIAG_CONST
        c_perp = _PERMEABLE_FACTOR * _DIAG_CONST
    if flip_profile:
        prof = -prof
    return pref * (c_par + prof), pref * (c_perp + prof)


def correlator_ee(
    geom: Geometry, z: float, guard: GuardPolicy = DEFAULT_GUARD
) -> CorrelatorTensor:
    """<E_i E_j> tensor: diag(c_par + p, c_par + p, c_perp + p) * prefactor.

    p is cot_profile for "cc" and csc_profile for "cp"; c_par/c_perp are the
    -+1/120 constants, times -7/8 in the "cp" geometry.
    """
    par, perp = _diagonal(geom, z, guard, flip_profile=False)
    return CorrelatorTensor(np.diag([par, par, perp]), "EE")


def correlator_bb(
    geom: Geometry, z: float, guard: GuardPolicy = DEFAULT_GUARD
) -> CorrelatorTensor:
    """<B_i B_j> tensor: same constants as EE with the profile sign flipped."""
    par, perp = _diagonal(geom, z, guard, flip_profile=True)
    return CorrelatorTensor(np.diag([par, par, perp]), "BB")


def correlator_eb(geom: Geometry, z: float) -> CorrelatorTensor:
    """<E_i B_j> tensor, identically zero in both geometries."""
    geom.xi(z)  # domain check only
    return CorrelatorTensor(np.zeros((3, 3)), "EB")


def mean_square_e(
    geom: Geometry, z: float, guard: GuardPolicy = DEFAULT_GUARD
) -> float:
    """<E^2> = trace of the EE tensor."""
    return correlator_ee(geom, z, guard).trace()


def mean_square_b(
    geom: Geometry, z: float, guard: GuardPolicy = DEFAULT_GUARD
) -> float:
    """<B^2> = trace of the BB tensor."""
    return correlator_bb(geom, z, guard).trace()
