"""Correlator tensors: structure, frozen reference values, scaling, traces.

Frozen literals were generated once from 50-digit mpmath evaluations of the
defining expressions at the exact double inputs shown (a = 1, z = 0.3).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpwalls.correlators import (
    CorrelatorTensor,
    Geometry,
    WallKind,
    correlator_bb,
    correlator_eb,
    correlator_ee,
    mean_square_b,
    mean_square_e,
    tensor_prefactor,
)
from cpwalls.errors import OutOfDomain, TooCloseToWall
from cpwalls.profiles import GuardPolicy

CC = Geometry(WallKind.CONDUCTOR_CONDUCTOR, 1.0)
CP = Geometry(WallKind.CONDUCTOR_PERMEABLE, 1.0)


def diag(tensor: CorrelatorTensor) -> tuple[float, float, float]:
    return tuple(float(tensor.components[i, i]) for i in range(3))


def test_geometry_validation():
    with pytest.raises(OutOfDomain):
        Geometry(WallKind.CONDUCTOR_CONDUCTOR, 0.0)
    with pytest.raises(OutOfDomain):
        Geometry(WallKind.CONDUCTOR_CONDUCTOR, -2.0)
    with pytest.raises(OutOfDomain):
        Geometry(WallKind.CONDUCTOR_CONDUCTOR, math.inf)


def test_geometry_xi():
    geom = Geometry(WallKind.CONDUCTOR_CONDUCTOR, 2.0)
    assert geom.xi(1.0) == math.pi / 2.0
    for bad in (0.0, 2.0, -0.1, 2.5, math.nan):
        with pytest.raises(OutOfDomain):
            geom.xi(bad)


def test_wall_kind_round_trip():
    assert WallKind("cc") is WallKind.CONDUCTOR_CONDUCTOR
    assert WallKind("cp") is WallKind.CONDUCTOR_PERMEABLE
    assert WallKind.CONDUCTOR_PERMEABLE.value == "cp"


def test_tensor_prefactor():
    assert tensor_prefactor(1.0) == pytest.approx(
        math.pi ** 4 * 2.0 / (3.0 * math.pi), rel=1e-15
    )
    # a^-4 scale: halving a multiplies by 16
    assert tensor_prefactor(0.5) == pytest.approx(16.0 * tensor_prefactor(1.0), rel=1e-15)


@pytest.mark.parametrize("geom", [CC, CP])
@pytest.mark.parametrize("z", [0.1, 0.25, 0.5, 0.83])
def test_tensor_structure(geom, z):
    ee = correlator_ee(geom, z)
    bb = correlator_bb(geom, z)
    eb = correlator_eb(geom, z)
    for t in (ee, bb, eb):
        off = t.components[~np.eye(3, dtype=bool)]
        assert np.all(off == 0.0)
        assert t.components[0, 0] == t.components[1, 1]
    assert np.all(eb.components == 0.0)
    assert ee.field_pair == "EE" and bb.field_pair == "BB" and eb.field_pair == "EB"


def test_midpoint_values_cc():
    ee = diag(correlator_ee(CC, 0.5))
    bb = diag(correlator_bb(CC, 0.5))
    p3 = math.pi ** 3
    assert ee[0] == pytest.approx(7.0 * p3 / 90.0, rel=1e-13)
    assert ee[2] == pytest.approx(4.0 * p3 / 45.0, rel=1e-13)
    assert bb[0] == pytest.approx(-4.0 * p3 / 45.0, rel=1e-13)
    assert bb[2] == pytest.approx(-7.0 * p3 / 90.0, rel=1e-13)


def test_midpoint_values_cp():
    # profile contribution vanishes at the midplane, leaving the constants
    ee = diag(correlator_ee(CP, 0.5))
    bb = diag(correlator_bb(CP, 0.5))
    p3 = math.pi ** 3
    assert ee[0] == pytest.approx(7.0 * p3 / 1440.0, rel=1e-13)
    assert ee[2] == pytest.approx(-7.0 * p3 / 1440.0, rel=1e-13)
    assert bb[0] == pytest.approx(7.0 * p3 / 1440.0, rel=1e-13)
    assert bb[2] == pytest.approx(-7.0 * p3 / 1440.0, rel=1e-13)


def test_frozen_reference_values_cc():
    ee = diag(correlator_ee(CC, 0.3))
    bb = diag(correlator_bb(CC, 0.3))
    assert ee[0] == pytest.approx(10.027199562100162, rel=1e-14)
    assert ee[2] == pytest.approx(10.371713747436827, rel=1e-14)
    assert bb[0] == pytest.approx(-10.371713747436827, rel=1e-14)
    assert bb[2] == pytest.approx(-10.027199562100162, rel=1e-14)


def test_frozen_reference_values_cp():
    ee = diag(correlator_ee(CP, 0.3))
    bb = diag(correlator_bb(CP, 0.3))
    assert ee[0] == pytest.approx(9.6264865789094877, rel=1e-14)
    assert ee[2] == pytest.approx(9.3250366667399062, rel=1e-14)
    assert bb[0] == pytest.approx(-9.3250366667399062, rel=1e-14)
    assert bb[2] == pytest.approx(-9.6264865789094877, rel=1e-14)


def test_cc_ee_bb_mirror_antisymmetry():
    # with the -+1/120 constants, BB at z is -EE reversed: xx <-> zz
    for z in (0.1, 0.37, 0.5, 0.8):
        ee = diag(correlator_ee(CC, z))
        bb = diag(correlator_bb(CC, z))
        assert bb[0] == pytest.approx(-ee[2], rel=1e-15)
        assert bb[2] == pytest.approx(-ee[0], rel=1e-15)


def test_scaling_with_separation():
    # same z/a (exact: divide by a power of two) scales all components by a^-4
    big = Geometry(WallKind.CONDUCTOR_PERMEABLE, 2.0)
    for z in (0.3, 0.5, 0.7):
        small_ee = correlator_ee(CP, z).components
        big_ee = correlator_ee(big, 2.0 * z).components
        assert np.allclose(16.0 * big_ee, small_ee, rtol=2e-15, atol=0.0)


def test_trace_sums_are_constant_and_signed():
    zs = np.linspace(0.2, 0.8, 25)
    for geom, sign in ((CC, -1.0), (CP, 1.0)):
        sums = [mean_square_e(geom, z) + mean_square_b(geom, z) for z in zs]
        assert all(sign * s > 0.0 for s in sums)
        assert max(sums) - min(sums) <= 1e-12 * abs(np.mean(sums))


def test_trace_sum_values():
    pref = math.pi ** 4 * 2.0 / (3.0 * math.pi)
    got_cc = mean_square_e(CC, 0.4) + mean_square_b(CC, 0.4)
    got_cp = mean_square_e(CP, 0.4) + mean_square_b(CP, 0.4)
    assert got_cc == pytest.approx(-pref / 60.0, rel=1e-12)
    assert got_cp == pytest.approx(7.0 * pref / 480.0, rel=1e-12)


def test_mean_squares_equal_traces():
    for geom in (CC, CP):
        for z in (0.15, 0.5, 0.85):
            assert mean_square_e(geom, z) == correlator_ee(geom, z).trace()
            assert mean_square_b(geom, z) == correlator_bb(geom, z).trace()


def test_guard_modes_propagate():
    z = 1e-8  # xi ~ 3e-8, inside the default band
    with pytest.raises(TooCloseToWall):
        correlator_ee(CC, z)
    soft = GuardPolicy(epsilon=1e-6, mode="asymptotic")
    t = correlator_ee(CC, z, soft)
    assert np.isfinite(t.components).all()
    assert t.components[2, 2] > 0.0


def test_trace_method():
    t = CorrelatorTensor(np.diag([1.0, 1.0, 3.0]), "EE")
    assert t.trace() == 5.0


@settings(deadline=None)
@given(st.floats(min_value=0.02, max_value=0.98))
def test_ee_dominates_bb_near_conducting_wall_property(z):
    # trace(EE) - trace(BB) = 2 * pref * 3 * profile for "cc": the electric
    # fluctuations always exceed the magnetic ones between conductors
    assert mean_square_e(CC, z) > mean_square_b(CC, z)


@settings(deadline=None)
@given(st.floats(min_value=0.02, max_value=0.98))
def test_cp_reflection_swaps_ee_bb_property(z):
    # csc antisymmetry: EE at z mirrors BB at a-z up to the even constants
    ee = diag(correlator_ee(CP, z))
    bb = diag(correlator_bb(CP, 1.0 - z))
    for got, want in zip(ee, bb):
        assert abs(got - want) <= 1e-11 * max(abs(got), abs(want), 1.0)
