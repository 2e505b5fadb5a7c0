"""Boundary data, transforms, solvers, and convergence probes."""

import cmath
import math

import numpy as np
import pytest

from hypolib.kernels import make_spectral, polyharmonic_kernel
from hypolib.spherical import spherical_function
from hypolib.transforms import (
    Atoms,
    Density,
    FourierSeq,
    Mixture,
    convergence_probe,
    datum_from_json,
    datum_to_json,
    density_from_table,
    density_preset,
    dirichlet_solve,
    kernel_decay_probe,
    normalized_kernel,
    pair_functional,
    poisson_transform,
    riquier_solve,
    spherical_average,
)


def test_density_presets_evaluate():
    phi = np.array([0.0, math.pi / 2, math.pi])
    assert np.allclose(density_preset("one")(phi), 1.0)
    assert np.allclose(density_preset("cos")(phi), np.cos(phi))
    assert np.allclose(density_preset("sin")(phi), np.sin(phi))
    assert np.allclose(density_preset("cos2")(phi), np.cos(2 * phi))
    ind = density_preset("indicator:0.5:0.2")
    assert ind(np.array([0.5]))[0] == pytest.approx(1.0)
    assert ind(np.array([0.8]))[0] == pytest.approx(0.0)
    assert ind.breakpoints == pytest.approx((0.3, 0.7))


def test_density_preset_rejects_unknown():
    with pytest.raises(ValueError):
        density_preset("gaussian")
    with pytest.raises(ValueError):
        density_preset("indicator:0:9")


def test_sawtooth_is_odd_and_breaks_at_pi():
    saw = density_preset("sawtooth")
    phi = np.array([0.4, -0.4])
    v = saw(phi)
    assert v[0] == pytest.approx(-v[1])
    assert len(saw.breakpoints) >= 1


def test_datum_json_round_trip():
    atoms = Atoms(((0.3, 1.0 - 2.0j), (-1.2, 0.5 + 0j)))
    fs = FourierSeq({0: 1.0, 2: 0.25j, -1: -0.5})
    mix = Mixture(density=density_preset("cos"), atoms=atoms)
    for datum in (density_preset("sawtooth"), atoms, fs, mix):
        back = datum_from_json(datum_to_json(datum))
        assert datum_to_json(back) == datum_to_json(datum)


def test_datum_json_rejects_mixed_fourier():
    with pytest.raises(ValueError):
        datum_from_json('{"fourier": {"0": [1, 0]}, "density": "cos"}')


def test_density_from_table_interpolates_between_nodes():
    # equispaced samples g(2 pi j / N); cosine is band-limited, so the
    # trigonometric interpolant reproduces it everywhere
    size = 32
    phi = 2 * math.pi * np.arange(size) / size
    d = density_from_table(np.cos(phi))
    probe = np.array([0.37, 2.9, -1.2])
    assert np.allclose(d(probe), np.cos(probe), atol=1e-12)


def test_harmonic_extension_of_cosine():
    # order 0, lam 0 reduces to the classical disk extension: r cos(theta)
    sp = make_spectral(0.0)
    g = density_preset("cos")
    for r, th in ((0.5, 0.0), (0.8, 1.1), (0.3, -2.0)):
        z = r * cmath.exp(1j * th)
        res = poisson_transform(0, sp, g, z)
        assert res.normalized == pytest.approx(r * math.cos(th), abs=1e-11)
        assert res.value == pytest.approx(r * math.cos(th), abs=1e-11)


def test_transform_of_unit_density_is_the_mean():
    sp = make_spectral(1j)
    g = density_preset("one")
    z = 0.6 * cmath.exp(0.4j)
    res = poisson_transform(0, sp, g, z)
    assert res.value == pytest.approx(spherical_function(0, 0.6, sp), rel=1e-11)
    assert res.normalized == pytest.approx(1.0, rel=1e-11)


def test_atom_transform_is_a_kernel_evaluation():
    sp = make_spectral(2.0)
    datum = Atoms(((0.9, 2.0 - 1.0j),))
    z = 0.45 * cmath.exp(-0.2j)
    res = poisson_transform(1, sp, datum, z, normalize=False)
    want = (2.0 - 1.0j) * polyharmonic_kernel(1, z, 0.9, sp)
    assert res.value == pytest.approx(want, rel=1e-12)


def test_fourier_datum_matches_density_transform():
    sp = make_spectral(0.0)
    fs = FourierSeq({1: 0.5, -1: 0.5})  # cos(phi)
    g = density_preset("cos")
    z = 0.7 * cmath.exp(0.9j)
    a = poisson_transform(0, sp, fs, z).normalized
    b = poisson_transform(0, sp, g, z).normalized
    assert a == pytest.approx(b, rel=1e-9)


def test_normalized_kernel_has_unit_circle_mean():
    sp = make_spectral(2.0)
    r = 0.5
    n_grid = 4096
    phi = 2 * math.pi * np.arange(n_grid) / n_grid
    vals = [normalized_kernel(0, sp, r + 0j, float(p)) for p in phi[::16]]
    assert np.mean(vals) == pytest.approx(1.0, rel=1e-6)


def test_dirichlet_recovery_sharpens_toward_boundary():
    sp = make_spectral(0.0)
    sol = dirichlet_solve(sp, density_preset("cos"))
    angs = np.linspace(-math.pi, math.pi, 8, endpoint=False)
    errs = []
    for r in (0.9, 0.99, 0.999):
        rows = sol.verify(angs, [r])
        errs.append(max(row.error for row in rows))
    assert errs[2] < errs[1] < errs[0]
    assert errs[2] < 5e-3


def test_dirichlet_refuses_forbidden_ray():
    with pytest.raises(ValueError):
        dirichlet_solve(make_spectral(-1.0), density_preset("cos"))
    with pytest.raises(ValueError):
        riquier_solve(make_spectral(-1.0), [density_preset("cos")])


def test_riquier_own_traces_recover_data():
    sp = make_spectral(0.0)
    sol = riquier_solve(sp, (density_preset("cos"), density_preset("one")))
    angs = np.linspace(-math.pi, math.pi, 6, endpoint=False)
    rep = sol.verify(angs, [0.9999])
    assert max(row.error for row in rep["own"]) < 5e-3
    z = 0.5 + 0j
    assert sol.layer(0, z) == pytest.approx(0.5, abs=1e-10)


def test_convergence_probe_uniform_shrinks():
    sp = make_spectral(0.0)
    rep = convergence_probe(0, sp, density_preset("cos"), "uniform", radii=(0.9, 0.99))
    sups = [row["sup_error"] for row in rep["rows"]]
    assert sups[1] < sups[0]


def test_convergence_probe_lp_handles_jumps():
    sp = make_spectral(0.0)
    rep = convergence_probe(
        0, sp, density_preset("sawtooth"), "Lp", radii=(0.9, 0.99), p=2.0
    )
    errs = [row["lp_error"] for row in rep["rows"]]
    assert errs[1] < errs[0]


def test_weak_star_pairings_of_a_unit_atom():
    # classical case: pairing against e^{ik phi} equals r^{|k|}
    sp = make_spectral(0.0)
    datum = Atoms(((0.0, 1.0),))
    rep = convergence_probe(0, sp, datum, "weak-star", radii=(0.99,))
    pairings = rep["rows"][0]["pairings"]
    for k, v in pairings.items():
        assert v == pytest.approx(0.99 ** abs(k), rel=1e-9)


def test_convergence_probe_rejects_bad_mode():
    with pytest.raises(ValueError):
        convergence_probe(0, make_spectral(0.0), density_preset("cos"), "L-infinity")


def test_kernel_decay_probe_band_sups_vanish():
    sp = make_spectral(0.0)
    # exponent must stay below 2 Re mu / (2 Re mu + 1) = 1/2 here
    rep = kernel_decay_probe(0, sp, (0.9, 0.99, 0.999), a=0.3)
    assert rep.band_sups[-1] < rep.band_sups[0]
    assert rep.band_sups[-1] < 0.1
    with pytest.raises(ValueError):
        kernel_decay_probe(0, sp, (0.9,), a=0.5)


def test_spherical_average_basics():
    assert spherical_average(lambda z: z * z, 0.7) == pytest.approx(0.0, abs=1e-10)
    assert spherical_average(lambda z: abs(z) ** 2, 0.7) == pytest.approx(
        0.49, rel=1e-11
    )


def test_pair_functional_conjugates_the_functional():
    import warnings as _w

    from hypolib.errors import TruncationWarning

    nu = FourierSeq({0: 1.0, 1: 2.0j})
    with pytest.warns(TruncationWarning):
        got = pair_functional(nu, {0: 3.0, 1: 1.0 + 1.0j})
    assert got == pytest.approx(3.0 + (1 + 1j) * (-2.0j), rel=1e-14)
    nu_wide = FourierSeq({0: 1.0, 1: 2.0j, 5: 0.0})
    with _w.catch_warnings():
        _w.simplefilter("error")
        pair_functional(nu_wide, {0: 3.0, 1: 1.0 + 1.0j})
