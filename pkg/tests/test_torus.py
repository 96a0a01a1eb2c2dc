import math

import numpy as np
import pytest

from teichranders.core.errors import DegeneratePathError, DomainError, UsageError
from teichranders.core.halfplane import HPoint, Moebius
from teichranders.core.torus import (
    FoliationVec,
    boundary_point,
    boundary_point_check,
    chart_foliation,
    chart_identity_check,
    chart_ray_check,
    delta_omega,
    disc_chart,
    disc_tangent,
    disc_tangent_check,
    extremal_length,
    gardiner_check,
    incompleteness_check,
    incompleteness_witness,
    intersection,
    intersection_check,
    isometry_check,
    kerckhoff_rate_check,
    omega_form,
    omega_form_check,
    omega_norm,
    omega_symmetrization_check,
    ray_profile,
    ray_suite_check,
    reduction_check,
    separation_check,
    transport_foliation,
)
from teichranders.core.verdicts import RayVerdict
from teichranders.core.weakmetric import delta_t

HORIZONTAL = FoliationVec(1.0, 0.0)
VERTICAL = FoliationVec(0.0, 1.0)
TAU = HPoint(0.3, 0.7)


class TestFoliationVec:
    def test_sign_is_canonical(self):
        assert FoliationVec(-1.0, 2.0) == FoliationVec(1.0, -2.0)
        f = FoliationVec(0.0, -3.0)
        assert (f.a, f.b) == (0.0, 3.0)
        assert str(FoliationVec(-0.0, 1.0)) == "0.0,1.0"

    def test_zero_vector_is_a_domain_error(self):
        with pytest.raises(DomainError):
            FoliationVec(0.0, 0.0)
        with pytest.raises(DomainError):
            FoliationVec.parse("0,0")
        with pytest.raises(DomainError):
            FoliationVec.parse("nan,1")

    @pytest.mark.parametrize("text", ["1", "1,2,3", "a,b", ""])
    def test_malformed_text_is_a_usage_error(self, text):
        with pytest.raises(UsageError):
            FoliationVec.parse(text)

    def test_parse(self):
        assert FoliationVec.parse("2,-1") == FoliationVec(2.0, -1.0)


def test_intersection_and_extremal_length():
    assert intersection(HORIZONTAL, VERTICAL) == 1.0
    assert intersection(FoliationVec(1.0, 2.0), FoliationVec(2.0, 4.0)) == 0.0
    assert extremal_length(HPoint(0.0, 1.0), HORIZONTAL) == 1.0
    assert extremal_length(HPoint(0.0, 2.0), HORIZONTAL) == 0.5
    assert extremal_length(HPoint(0.0, 2.0), VERTICAL) == 2.0


def test_boundary_points():
    assert boundary_point(HORIZONTAL) == math.inf
    assert boundary_point(VERTICAL) == 0.0
    assert boundary_point(FoliationVec(1.0, 2.0)) == -0.5


def test_disc_chart_identity():
    f = FoliationVec(1.0, 2.0)
    lam = disc_chart(f)(TAU.z)
    assert extremal_length(TAU, f) * lam.imag == pytest.approx(1.0, rel=1e-12)


def test_transported_foliation_keeps_extremal_length():
    f = FoliationVec(1.0, 2.0)
    m = Moebius(2.0, 1.0, 1.0, 1.0)
    moved = HPoint.from_complex(m(TAU.z))
    assert extremal_length(moved, transport_foliation(f, m)) == pytest.approx(
        extremal_length(TAU, f), rel=1e-12
    )


@pytest.mark.parametrize("f", [HORIZONTAL, VERTICAL, FoliationVec(1.0, -2.5)])
def test_omega_on_the_disc_tangent(f):
    assert omega_form(TAU, disc_tangent(TAU, f), f) == pytest.approx(1.0, abs=1e-12)
    assert omega_norm(TAU, f, 0.5) == pytest.approx(0.5, abs=1e-12)


def test_horizontal_foliation_reduces_to_half_plane():
    p, q = HPoint(-0.4, 0.8), HPoint(1.3, 2.1)
    for t in (0.0, 0.5, 1.0):
        assert delta_omega(p, q, HORIZONTAL, t) == pytest.approx(delta_t(p, q, t))


class TestRayProfile:
    def test_transverse_ray_stays_bounded(self):
        report = ray_profile(HPoint(0.0, 1.0), VERTICAL, HORIZONTAL, 10.0, 51)
        assert report.verdict is RayVerdict.BOUNDED
        assert report.boundary == "0.0"
        assert report.limit_estimate == pytest.approx(1.0, abs=1e-9)
        assert report.walsh_value == 1.0
        assert report.intersection == 1.0
        assert max(np.abs(report.delta_values)) < 1e-9

    def test_parallel_ray_diverges(self):
        report = ray_profile(HPoint(0.0, 1.0), HORIZONTAL, HORIZONTAL, 10.0, 51)
        assert report.verdict is RayVerdict.DIVERGENT
        assert report.boundary == "inf"
        assert report.walsh_value == 0.0
        np.testing.assert_allclose(
            report.delta_values, 2.0 * np.array(report.t_grid), atol=1e-9
        )

    def test_decay_is_monotone(self):
        report = ray_profile(HPoint(0.5, 0.5), FoliationVec(1.0, 1.0), VERTICAL, 20.0, 201)
        assert all(b <= a + 1e-12 for a, b in zip(report.decay_values, report.decay_values[1:]))

    def test_arguments_are_validated(self):
        with pytest.raises(UsageError):
            ray_profile(HPoint(0.0, 1.0), VERTICAL, HORIZONTAL, 10.0, 1)
        with pytest.raises(DomainError):
            ray_profile(HPoint(0.0, 1.0), VERTICAL, HORIZONTAL, 0.0, 11)


class TestIncompleteness:
    def test_witness_is_forward_cauchy_and_leaves(self):
        report = incompleteness_witness(HPoint(0.0, 1.0), HORIZONTAL)
        assert report.g == [0.0, 1.0]
        assert report.forward_cauchy
        assert report.leaves_compacta
        assert report.im_values[-1] < 1e-20

    def test_witness_rejects_bad_rays(self):
        with pytest.raises(DomainError):
            incompleteness_witness(HPoint(0.0, 1.0), VERTICAL, VERTICAL)
        with pytest.raises(DomainError):
            incompleteness_witness(HPoint(0.0, 1.0), VERTICAL, HORIZONTAL)
        with pytest.raises(DegeneratePathError):
            incompleteness_witness(HPoint(0.0, 1.0), HORIZONTAL, terms=1)


def test_gardiner_formula_at_a_point():
    report = gardiner_check(TAU, FoliationVec(1.0, 2.0), 0.3 + 0.2j)
    assert report.passed
    assert report.finite_differences
    with pytest.raises(DomainError):
        gardiner_check(TAU, HORIZONTAL, 0j)


@pytest.mark.parametrize("f", [HORIZONTAL, VERTICAL, FoliationVec(1.2, -0.7)])
def test_per_foliation_checks(f):
    for t in (0.0, 0.5, 1.0):
        assert isometry_check(f, t, 100).passed
    assert chart_identity_check(f, 100).passed
    assert omega_symmetrization_check(f, 1.0, 100).passed
    assert kerckhoff_rate_check(f, 10).passed
    assert separation_check(f, 20).passed


def test_global_checks():
    assert reduction_check(200).passed
    assert intersection_check(5).passed
    assert omega_form_check(20).passed
    assert boundary_point_check(5).passed
    assert chart_ray_check(5).passed
    assert disc_tangent_check(5).passed
    assert all(report.passed for report in ray_suite_check(2, 20.0, 101))
    assert incompleteness_check(3).passed


class TestLongRays:
    OFF_AXIS = FoliationVec(1.40322, -0.23361)

    def test_chart_foliation_of_a_parallel_pair_has_no_cross_term(self):
        f = self.OFF_AXIS
        assert chart_foliation(f, f).b == 0.0
        assert chart_foliation(f, FoliationVec(2.0 * f.a, 2.0 * f.b)).b == 0.0
        assert chart_foliation(VERTICAL, HORIZONTAL) == VERTICAL

    def test_chart_foliation_keeps_extremal_length(self):
        g, f = self.OFF_AXIS, FoliationVec(0.4, 1.7)
        lam = HPoint.from_complex(disc_chart(g)(TAU.z))
        assert extremal_length(lam, chart_foliation(g, f)) == pytest.approx(
            extremal_length(TAU, f), rel=1e-12
        )

    def test_parallel_ray_off_the_axes_keeps_slope_two(self):
        x = HPoint(0.88314, 6.16176)
        report = ray_profile(x, self.OFF_AXIS, self.OFF_AXIS, 20.0, 201)
        assert report.verdict is RayVerdict.DIVERGENT
        drift = np.abs(np.array(report.delta_values) - 2.0 * np.array(report.t_grid))
        assert float(np.max(drift)) <= 1e-9

    def test_seed_zero_ray_suite(self):
        reports = ray_suite_check(50, 20.0, 201, seed=0)
        assert [r.name for r in reports] == [
            "ray_boundedness",
            "ray_decay_monotone",
            "ray_walsh_limit",
        ]
        assert all(report.passed for report in reports)
        assert reports[0].details["parallel_drift"] <= 1e-9

    def test_long_transverse_ray_stays_finite(self):
        f = FoliationVec(1.0, 1.0)
        report = ray_profile(HPoint(0.0, 1.0), VERTICAL, f, 200.0, 201)
        assert report.verdict is RayVerdict.BOUNDED
        assert np.all(np.isfinite(report.delta_values))
        assert np.all(np.isfinite(report.im_values))
        assert report.limit_estimate == pytest.approx(report.walsh_value, rel=0.02)

    def test_long_parallel_ray_is_exact(self):
        f = FoliationVec(1.0, 1.0)
        report = ray_profile(HPoint(0.0, 1.0), f, f, 200.0, 201)
        np.testing.assert_allclose(
            report.delta_values, 2.0 * np.array(report.t_grid), rtol=1e-12, atol=1e-9
        )

    def test_ray_past_the_float_range_is_a_domain_error(self):
        f = FoliationVec(1.0, 1.0)
        with pytest.raises(DomainError):
            ray_profile(HPoint(0.0, 1.0), f, f, 400.0, 5)


def test_verdict_has_two_states():
    assert list(RayVerdict) == [RayVerdict.BOUNDED, RayVerdict.DIVERGENT]
    short = ray_profile(HPoint(0.5, 0.5), FoliationVec(1.0, 1.0), VERTICAL, 0.5, 11)
    assert short.verdict in (RayVerdict.BOUNDED, RayVerdict.DIVERGENT)
