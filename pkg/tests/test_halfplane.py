import math

import numpy as np
import pytest

from teichranders.core.errors import DegeneratePathError, DomainError, UsageError
from teichranders.core.halfplane import (
    GeodesicPath,
    GeodesicRay,
    HPoint,
    HTangent,
    Moebius,
    domain_check,
    format_boundary,
    format_complex,
    geodesic_check,
    geodesic_ray_check,
    hyp_dist,
    hyp_norm,
    metric_axioms_check,
    mobius_apply,
    mobius_invariance_check,
    parse_boundary,
    parse_complex,
    parse_point,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2+3i", 2 + 3j),
        ("3i", 3j),
        ("i", 1j),
        ("-i", -1j),
        ("1.5", 1.5 + 0j),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("1e-3+2e1i", 0.001 + 20j),
        (" 2 + i ", 2 + 1j),
    ],
)
def test_parse_complex(text, expected):
    assert parse_complex(text) == expected


@pytest.mark.parametrize("text", ["", "2+3j", "abc", "1+", "i2", "1.2.3"])
def test_parse_complex_rejects_malformed(text):
    with pytest.raises(UsageError):
        parse_complex(text)


def test_parse_point_requires_upper_half_plane():
    assert parse_point("0.5+2i") == HPoint(0.5, 2.0)
    with pytest.raises(DomainError):
        parse_point("0.5")
    with pytest.raises(DomainError):
        HPoint(0.0, -1.0)


def test_boundary_literals():
    assert math.isinf(parse_boundary("inf"))
    assert parse_boundary("-0.5") == -0.5
    assert format_boundary(math.inf) == "inf"
    with pytest.raises(UsageError):
        parse_boundary("nan")
    with pytest.raises(UsageError):
        parse_boundary("one")


def test_format_complex_round_trips_through_parser():
    z = 0.1 + 2.5j
    assert parse_complex(format_complex(z)) == z
    assert str(HPoint(1.0, 2.0)) == "1.0+2.0i"


def test_hyp_dist_is_half_the_poincare_distance(i_point):
    assert hyp_dist(i_point, HPoint(0.0, 2.0)) == pytest.approx(0.5 * math.log(2.0))
    assert hyp_dist(i_point, i_point) == 0.0


def test_hyp_norm_of_vertical_unit_vector(i_point):
    assert hyp_norm(HTangent(i_point, 2j)) == pytest.approx(1.0)


def test_moebius_normalization_inverse_and_compose():
    m = Moebius(2.0, 1.0, 1.0, 1.0)
    assert m.a * m.d - m.b * m.c == pytest.approx(1.0)
    z = 0.3 + 1.7j
    assert m.inverse()(m(z)) == pytest.approx(z)
    n = Moebius(1.0, 3.0, 0.0, 1.0)
    assert m.compose(n)(z) == pytest.approx(m(n(z)))
    assert math.isinf(Moebius.identity().apply_boundary(math.inf))
    assert m.apply_boundary(math.inf) == pytest.approx(m.a / m.c)
    with pytest.raises(DomainError):
        Moebius(1.0, 2.0, 2.0, 1.0)


def test_mobius_preserves_distance(i_point):
    m = Moebius(1.5, -0.2, 0.7, 0.9)
    q = HPoint(2.0, 0.5)
    assert hyp_dist(mobius_apply(m, i_point), mobius_apply(m, q)) == pytest.approx(
        hyp_dist(i_point, q), abs=1e-12
    )


def test_vertical_geodesic(i_point):
    g = GeodesicPath(i_point, HPoint(0.0, 4.0))
    assert g.vertical
    assert g.length == pytest.approx(math.log(2.0))
    assert g(0.5 * math.log(2.0)) == pytest.approx(2j)
    descending = GeodesicPath(HPoint(0.0, 4.0), i_point)
    assert descending(descending.length) == pytest.approx(1j)


def test_semicircle_geodesic_hits_endpoints(i_point):
    q = HPoint(1.0, 1.0)
    g = GeodesicPath(i_point, q)
    assert not g.vertical
    assert g.center == pytest.approx(0.5)
    assert g(0.0) == pytest.approx(1j, abs=1e-14)
    assert g(g.length) == pytest.approx(1 + 1j, abs=1e-13)
    s = np.linspace(0.0, g.length, 7)
    assert np.allclose(np.abs(g(s) - g.center), g.radius)


def test_nearly_vertical_geodesic_stays_accurate():
    p, q = HPoint(0.3, 0.5), HPoint(0.3 + 1e-9, 2.0)
    g = GeodesicPath(p, q)
    assert abs(g(g.length) - q.z) < 1e-12


def test_geodesic_between_equal_points():
    with pytest.raises(DegeneratePathError):
        GeodesicPath(HPoint(0.0, 1.0), HPoint(0.0, 1.0))


def test_geodesic_sample_rows(i_point):
    rows = GeodesicPath(i_point, HPoint(2.0, 1.0)).sample(5).rows()
    assert [set(r) for r in rows] == [{"s", "re", "im", "norm"}] * 5
    assert all(r["norm"] == pytest.approx(1.0) for r in rows)


@pytest.mark.parametrize("target", [0.0, 1.0, -2.5, math.inf])
def test_geodesic_rays_are_unit_speed(i_point, target):
    ray = GeodesicRay(i_point, target)
    t = np.linspace(0.0, 4.0, 9)
    assert np.allclose([hyp_dist(i_point, HPoint.from_complex(z)) for z in ray(t)], t)


def test_rays_toward_zero_and_infinity(i_point):
    assert GeodesicRay(i_point, 0.0)(1.0) == pytest.approx(1j * math.exp(-2.0))
    assert GeodesicRay(i_point, math.inf)(1.0) == pytest.approx(1j * math.exp(2.0))
    assert GeodesicRay(i_point, 1.0)(15.0) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(DomainError):
        GeodesicRay(i_point, -math.inf)


def test_property_checks_pass(sampler):
    assert metric_axioms_check(sampler, 300).passed
    assert mobius_invariance_check(sampler, 100).passed
    assert geodesic_check(sampler, 10).passed
    assert geodesic_ray_check(sampler, 10).passed


def test_domain_check_keeps_points_above_the_axis(sampler):
    report = domain_check(sampler, 200)
    assert report.passed
    assert report.cases == 404
    assert report.max_violation == 0.0
