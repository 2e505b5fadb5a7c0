"""Approach regions, maximal comparisons, and boundary-limit sweeps."""

import cmath
import math

import numpy as np
import pytest

from hypolib.errors import FitResidualLarge
from hypolib.kernels import make_spectral
from hypolib.regions import (
    AdmissibleRegion,
    SampleNet,
    fatou_probe,
    hl_maximal,
    maximal_inequality_probe,
    radial_rigidity_check,
    region_distance,
    region_membership,
    tubular_maximal,
)
from hypolib.spherical import spherical_function
from hypolib.transforms import Atoms, Mixture, density_preset


def test_radial_points_belong_to_every_region():
    for kind in ("tube", "enlarged"):
        region = AdmissibleRegion(anchor_angle=0.9, width=0.5, kind=kind)
        z = 0.95 * cmath.exp(0.9j)
        assert region_membership(z, region)
        assert region_distance(z, region) == pytest.approx(0.0, abs=1e-9)


def test_far_points_are_outside_with_positive_distance():
    region = AdmissibleRegion(anchor_angle=0.0, width=0.5, kind="tube")
    z = 0.9 * cmath.exp(2.5j)
    assert not region_membership(z, region)
    assert region_distance(z, region) > 0.5


def test_enlarged_region_contains_the_tube():
    tube = AdmissibleRegion(anchor_angle=0.0, width=0.8, kind="tube")
    wide = AdmissibleRegion(anchor_angle=0.0, width=0.8, kind="enlarged")
    assert wide.effective_width(12.0) > wide.effective_width(4.0)
    assert tube.effective_width(12.0) == pytest.approx(tube.effective_width(4.0))
    rng = np.random.default_rng(3)
    hits = 0
    for _ in range(40):
        z = (0.5 + 0.49 * rng.random()) * cmath.exp(1j * 0.6 * (rng.random() - 0.5))
        if region_membership(z, tube):
            hits += 1
            assert region_membership(z, wide)
    assert hits > 0


def test_region_rejects_unknown_kind():
    with pytest.raises(ValueError):
        AdmissibleRegion(anchor_angle=0.0, width=0.5, kind="cone")


def test_hl_maximal_constant_and_spike():
    n = 64
    assert hl_maximal(np.full(n, 2.5), 0.3) == pytest.approx(2.5, rel=1e-12)
    spike = np.zeros(n)
    spike[0] = 1.0
    got = hl_maximal(spike, 0.0)
    assert got == pytest.approx(1.0, rel=1e-12)  # one-cell arc at the anchor
    assert hl_maximal(spike, math.pi) == pytest.approx(1.0 / n, rel=1e-10)


def test_sample_net_doubling():
    net = SampleNet()
    finer = net.doubled()
    assert finer.radial_rungs == 2 * net.radial_rungs
    # angular counts stay odd so the radial point is always sampled
    assert finer.angular_count == 2 * net.angular_count + 1


def test_tubular_maximal_of_constant_datum_is_unity():
    sp = make_spectral(0.0)
    got = tubular_maximal(
        0, sp, 0.7, density_preset("one"), 0.4, net=SampleNet(radial_rungs=4, angular_count=5)
    )
    assert got == pytest.approx(1.0, rel=1e-8)


def test_maximal_probe_is_stable_under_refinement():
    sp = make_spectral(0.0)
    rep = maximal_inequality_probe(
        0,
        sp,
        width=1.0,
        suite=(("one", density_preset("one")), ("cos", density_preset("cos"))),
        zeta_count=4,
        net=SampleNet(radial_rungs=4, angular_count=5),
    )
    assert rep.fitted_C >= 1.0 - 1e-9
    assert rep.drift < 0.2
    ids = [tid for tid, _ in rep.ratios]
    assert ids == ["one", "cos"]


def test_fatou_rows_converge_to_the_boundary_value():
    sp = make_spectral(0.0)
    datum = Mixture(density=density_preset("cos"), atoms=None)
    rows = fatou_probe(0, sp, datum, width=1.0, zeta_angles=[math.pi])
    assert all(row.atom_part == pytest.approx(0.0, abs=1e-12) for row in rows)
    deepest = max(rows, key=lambda row: row.r)
    assert deepest.target == pytest.approx(-1.0, rel=1e-12)
    assert abs(deepest.normalized - deepest.target) < 1e-3
    errs = {}
    for row in rows:
        if row.alpha_offset == 0.0:
            errs[row.r] = abs(row.normalized - row.target)
    radii = sorted(errs)
    assert errs[radii[-1]] < errs[radii[0]]


def test_fatou_atom_part_tracks_point_masses():
    sp = make_spectral(0.0)
    datum = Mixture(density=None, atoms=Atoms(((0.0, 1.0),)))
    rows = fatou_probe(0, sp, datum, width=1.0, zeta_angles=[math.pi])
    assert all(row.atom_part > 0 for row in rows)
    # mass sits at the far side, so its trace at zeta = pi fades
    deepest = max(rows, key=lambda row: row.r)
    assert deepest.atom_part < 1e-2


def test_rigidity_fit_accepts_true_profile_and_rejects_higher_order():
    sp = make_spectral(2.0)
    r_grid = np.linspace(0.1, 0.9, 12)
    phi0 = [spherical_function(0, float(r), sp) for r in r_grid]
    coeffs = radial_rigidity_check(sp, r_grid, phi0, order=1)
    assert coeffs[0] == pytest.approx(1.0, rel=1e-8)
    phi1 = [spherical_function(1, float(r), sp) for r in r_grid]
    with pytest.raises(FitResidualLarge):
        radial_rigidity_check(sp, r_grid, phi1, order=1)
    two = radial_rigidity_check(sp, r_grid, phi1, order=2)
    assert two[1] == pytest.approx(1.0, rel=1e-7)
    assert abs(two[0]) < 1e-7
