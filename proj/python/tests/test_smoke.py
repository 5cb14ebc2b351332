import math

import pytest

import kelab


def test_ball_gradient_length():
    p = kelab.ball_potential(2)
    z = [0.3 + 0j, 0.4 + 0j]
    assert p(z) == pytest.approx(-math.log(0.75))
    assert kelab.gradient_length_sq(p, z) == pytest.approx(0.25)


def test_rescaled_potential_and_vector_field():
    p = kelab.rescaled_ball_potential(2, 3.0)
    cert = kelab.certify_constant_length(p, 50, 3, 1e-8)
    assert cert.valid()
    assert cert.constant == pytest.approx(1.0)
    comps, norm = kelab.vector_field(cert, [0j, 0j])
    assert comps[0] == pytest.approx(1j)
    assert norm == pytest.approx(1.0)
    assert kelab.dbar_defect(p, [0.1 + 0.2j, -0.3j]) < 1e-12
    z = kelab.integrate_flow(p, [0j, 0j], 0.5)
    assert kelab.Domain.ball(2).contains(z)
    assert p(z) == pytest.approx(p([0j, 0j]), abs=1e-9)


def test_domains_and_json():
    d = kelab.Domain.type_one(2, 3)
    assert d.invariants().rc == pytest.approx(10.0)
    assert kelab.domain_from_dict(kelab.domain_to_dict(d)) == d
    pts = kelab.sample_points(d, 5, 7)
    assert len(pts) == 5 and all(d.contains(z) for z in pts)


def test_kai_ohsawa_and_cheng_yau():
    r = kelab.kai_ohsawa_constant(kelab.Domain.polydisc(2))
    assert r["L"] == pytest.approx(4.0)
    rp = kelab.shoot(2, 3.0)
    assert rp.phi0 == pytest.approx(0.0, abs=1e-8)
    limit, dev = kelab.boundary_limit_estimate(rp)
    assert abs(limit - 1.0) < 0.02


def test_suites():
    assert "cheng-yau" in kelab.suite_names()
    rep = kelab.run_suite("constant-length", {"domain": "ball", "n": 2, "K": 3, "samples": 20})
    assert rep["pass"] and rep["max_residual"] <= 1e-8
    assert set(rep) >= {"suite", "domain", "params", "samples", "max_residual", "pass", "runtime_ms"}


def test_errors():
    with pytest.raises(kelab.ConfigError):
        kelab.run_suite("einstein", {"tol": 0})
    with pytest.raises(kelab.MembershipError):
        kelab.ball_potential(1)([2 + 0j])
    with pytest.raises(kelab.NotEinsteinError):
        kelab.canonical_potential(kelab.Domain.flat(2), 1.0)
    with pytest.raises(kelab.KelabError):
        kelab.Domain.ball(0)
