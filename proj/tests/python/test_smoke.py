import cmath
import json
import math

import pytest

import deltoid

OMEGA = cmath.exp(2j * math.pi / 3)


def close(a, b, tol=1e-10):
    return all(abs(u - v) <= tol for u, v in zip(a, b))


def test_tangent_parameters_round_trip():
    x, y = 1 + 2j, -0.5 + 1j
    t = deltoid.tangent_parameters(x, y)
    assert len(t) == 3
    assert abs(t[0] * t[1] * t[2] - 1) < 1e-12
    assert close(deltoid.point_from_tangents(*t), (x, y))


def test_gamma_is_on_the_deltoid_and_f_maps_it():
    t = 0.7 + 0.4j
    x, y = deltoid.gamma(t)
    assert abs(deltoid.deltoid_residual(x, y)) < 1e-12
    assert close(deltoid.apply_f(x, y), deltoid.gamma(1 / t**2), 1e-9)


def test_green():
    assert deltoid.green(0, 0) == 0
    assert deltoid.green(10, 0) == pytest.approx(2.3035826022863281915, abs=1e-12)
    p = (1 + 2j, -0.5 + 1j)
    assert deltoid.green(*deltoid.apply_f(*p)) == pytest.approx(2 * deltoid.green(*p), abs=1e-10)
    assert deltoid.green_iterative(*p, n=40) == pytest.approx(deltoid.green(*p), abs=1e-9)


def test_julia_and_pedal():
    verdict = deltoid.julia_verdict(0, 0)
    assert verdict["green"] == 0
    assert deltoid.in_K(0, 0)
    assert not deltoid.in_K(5, 5)
    for p in deltoid.sample_pedal_cloud(1 + 1j, 64):
        x = 2 * p - (1 + 1j)
        assert deltoid.julia_verdict(x, 1 - 1j)["julia_distance"] < 1e-8


def test_preimages_of_basepoint():
    pts = deltoid.preimages(0, 0)
    for want in [(0, 0), (2, 2), (2 * OMEGA, 2 * OMEGA**2), (2 * OMEGA**2, 2 * OMEGA)]:
        assert any(close(p, want) for p in pts)


def test_monodromy():
    g1, g2, g3 = deltoid.generator_permutations(1)
    assert g3 == [0, 1, 3, 2]
    assert deltoid.word_permutation([3, 3], 2) == list(range(16))
    assert deltoid.word_permutation([1, 2, 1], 2) == deltoid.word_permutation([2, 1, 2], 2)
    report = deltoid.relation_report(2)
    assert report["coxeter_element_order"] == 8
    assert report["all_ok"]
    assert all(report[k] for k in ["involutions_ok", "inverses_ok", "braid_ok", "coxeter_ok", "generators_distinct"])


def test_chebyshev_lift():
    loop = [-2 + cmath.exp(2j * math.pi * k / 200) for k in range(201)]
    loop[-1] = loop[0]
    assert deltoid.chebyshev_lift(loop)["exchanged"]


def test_render():
    img = deltoid.render("julia", axis="x", alpha=0, half_width=2.5, resolution=32)
    assert img["width"] == img["height"] == 32
    assert len(img["gray"]) == 32 * 32
    assert any(img["marked"])
    far = deltoid.render("julia", center=40 + 40j, half_width=2, resolution=16)
    assert not any(far["marked"])
    ppm = deltoid.render_ppm(resolution=16)
    assert ppm.startswith(b"P6\n16 16\n255\n")
    assert len(ppm) == len(b"P6\n16 16\n255\n") + 16 * 16 * 3


def test_verify_is_deterministic():
    a = deltoid.verify("curve", 5)
    assert a["pass"]
    assert json.dumps(a) == json.dumps(deltoid.verify("curve", 5))


def test_errors():
    with pytest.raises(deltoid.ParseError):
        deltoid.parse_complex("1+")
    with pytest.raises(deltoid.DomainError):
        deltoid.render(resolution=8)
    with pytest.raises(deltoid.Error):
        deltoid.verify("nothing")
    with pytest.raises(ValueError):
        deltoid.gamma(0)
