import cmath
import math

import pytest

import soliton


def test_params_validation():
    p = soliton.Params([1.0, 2.0])
    assert p.n == 2
    assert p.b == [0.0, 0.0]
    with pytest.raises(soliton.SolitonError) as info:
        soliton.Params([2.0, 1.0])
    assert info.value.args[1] == "NonIncreasingA"
    with pytest.raises(ValueError):
        soliton.Params([-1.0])


def test_one_soliton_potential():
    p = soliton.Params([1.3])
    xs = [-1.0, 0.0, 0.7]
    for x, v in zip(xs, soliton.potential(p, xs)):
        assert v == pytest.approx(-2 * 1.3**2 / math.cosh(1.3 * x) ** 2, rel=1e-12)


def test_wronskian_routes_agree():
    p = soliton.Params([0.5, 1.0, 2.0], [0.1, -0.2, 0.3])
    det = soliton.wronskian_determinant(p, 0.7)
    assert math.log(abs(det)) == pytest.approx(soliton.log_wronskian(p, 0.7), rel=1e-10)


def test_bound_states_and_transmission():
    p = soliton.Params([1.0, 2.0])
    assert soliton.bound_state(p, 1, [0.0])[0] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(soliton.SolitonError):
        soliton.bound_state(p, 3, [0.0])
    t = soliton.transmission_coefficient(p, 0.8)
    assert abs(t) == pytest.approx(1.0, abs=1e-14)
    r, t_ode = soliton.scatter(p, 0.8)
    assert abs(r) < 1e-6
    assert abs(t_ode - t) < 1e-5


def test_coherent_states():
    z = 0.3 + 0.7j
    p1 = soliton.Params([1.0])
    closed = soliton.cs_eta_one_soliton(1.0, z, 0.5, 0.4)
    synth = soliton.synth_state(p1, "eta", z, 0.5, 0.4)
    assert abs(closed - synth) < 1e-7
    phi = soliton.cs_phi(p1, z, 0.5, 0.4)
    assert abs(phi - soliton.synth_state(p1, "phi", z, 0.5, 0.4)) < 1e-7
    assert abs(soliton.free_cs(0j, 0.0, 0.0)) == pytest.approx((2 * math.pi) ** -0.25, rel=1e-12)
    assert soliton.norm_eta(p1, z) > 0
    assert soliton.norm_phi(p1, z) > soliton.norm_eta(p1, z)
    with pytest.raises(ValueError):
        soliton.synth_state(p1, "chi", z, 0.0)


def test_overlaps_invert():
    import numpy as np

    p = soliton.Params([1.0])
    s = soliton.overlap_s(p, 24)
    s_inv = soliton.overlap_s_inverse(p, 24)
    assert isinstance(s, np.ndarray) and s.shape == (25, 25)
    assert np.allclose((s @ s_inv)[:8, :8], np.eye(8), atol=1e-10)


def test_measures():
    p = soliton.Params([1.0, 2.0])
    fr = soliton.partial_fractions(p)
    # N_p^{-2} at p = 0
    assert sum(r / a**2 for r, a in zip(fr, [1.0, 2.0])) == pytest.approx(1 / 4, rel=1e-12)
    assert len(soliton.eta_measure(p)) >= 1


def test_verify_suite():
    reports = soliton.verify(soliton.Params([0.7]), "wronskian", 3)
    assert reports and all(r["passed"] for r in reports)
    assert soliton.verify(soliton.Params([0.7]), "wronskian", 3) == reports
    with pytest.raises(ValueError):
        soliton.verify(soliton.Params([0.7]), "bogus")
