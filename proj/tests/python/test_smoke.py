import math

import pytest

import kummer


def test_potential_derivative_identity():
    # u phi'(u) = sqrt(a^2 + u^2) for the Eguchi-Hanson potential
    a, u = 0.5, 1.3
    coeffs = kummer.potential_jet("eh", a, 0.1, u, order=2)
    assert u * coeffs[1] == pytest.approx(math.sqrt(a * a + u * u), rel=1e-13)


def test_metric_and_curvature_reference_point():
    g = kummer.metric("eh", 1.0, 0.1, [1.0, 0.0, 0.0, 0.0])
    assert g[0][0].real == pytest.approx(2 ** -0.5, rel=1e-12)
    assert g[1][1].real == pytest.approx(2 ** 0.5, rel=1e-12)
    c = kummer.curvature("eh", 1.0, 0.1, [1.0, 0.0, 0.0, 0.0])
    assert c["kretschmann"] == pytest.approx(3.0, rel=1e-10)
    assert c["ricci_max"] < 1e-10
    assert c["kretschmann"] == pytest.approx(
        kummer.eh_kretschmann_closed_form(1.0, 1.0), rel=1e-10
    )


def test_sigma_trace_vanishes():
    s = kummer.sigma_invariants("eh", 0.7, 0.1, [0.9, 0.1, 0.2, -0.3], [1.0, 0.2, -0.4, 0.3])
    assert s["sII"] + s["sJJ"] + s["sKK"] == pytest.approx(0.0, abs=1e-10)
    recon = kummer.sectional_reconstruction(s, 1.0, 0.0, 0.0, 0.0)
    assert recon == pytest.approx(s["sII"], rel=1e-12)


def test_geodesic_energy_conservation():
    out = kummer.integrate_geodesic(
        "eh", 0.8, 0.1, [0.9, 0.1, 0.2, -0.3], [0.1, 0.4, -0.3, 0.2], 2.0, 1e-3
    )
    assert out["energy_drift"] < 1e-9


def test_orbifold_point_raises():
    with pytest.raises(kummer.KummerError):
        kummer.metric("eh", 0.5, 0.1, [0.0, 0.0, 0.0, 0.0])


def test_radial_ma_recovers_eguchi_hanson():
    a = 0.35
    out = kummer.solve_radial_ma(1.0, a, 0.0, 2.0, 81)
    for u, h in zip(out["grid"], out["h"]):
        assert h == pytest.approx(math.sqrt(a * a + u * u), abs=1e-12)


def test_surface_volumes_and_isometries():
    s = kummer.KummerSurface(8.0, [0.1], 0.1)
    vols = s.volumes()
    assert vols["A"] == pytest.approx(vols["A_closed_form"], abs=1e-10)
    expected = math.pi ** 2 * 0.01 / 4
    assert vols["neck_deficit"][0] == pytest.approx(expected, rel=1e-8)
    assert kummer.KummerSurface(8.0, [0.05], 0.1).isometry_count() == 512


def test_locate_charts():
    s = kummer.KummerSurface(8.0, [0.05], 0.1)
    assert s.locate([2.0, 2.0, 2.0, 2.0])["chart"] == "flat"
    p = s.locate([4.5, 0.0, 0.0, 0.0])
    assert p["chart"] == "eh"
    assert p["coords"][0] == pytest.approx(0.5)


def test_equator_is_unstable():
    rep = kummer.equator_stability(0.3, n_modes=12)
    assert rep["min_eigenvalue"] < 0
    assert rep["length"] == pytest.approx(math.pi * math.sqrt(0.3), rel=1e-12)
