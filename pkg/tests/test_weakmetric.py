import math

import numpy as np
import pytest

from teichranders.core.errors import DegeneratePathError, DomainError
from teichranders.core.halfplane import GeodesicPath, HPoint, HTangent
from teichranders.core.weakmetric import (
    DESCENDING_NOTE,
    PathSample,
    WeightParam,
    as_weight,
    big_m,
    bounded_ray_check,
    bumped_path,
    c1_path_length_check,
    closed_form_agreement_check,
    delta_closed,
    delta_t,
    descending_sequence_check,
    exact_form_check,
    finsler_length_check,
    finsler_norm,
    geodesic_minimality_probe,
    hyp_path_length,
    non_separation_check,
    one_form_contribution,
    path_length,
    sup_closed_check,
    symmetrization_check,
    weak_axioms_check,
    weak_distance_check,
)

I, TWO_I = HPoint(0.0, 1.0), HPoint(0.0, 2.0)


def test_weight_must_lie_in_unit_interval():
    assert as_weight(WeightParam(0.5)) == 0.5
    with pytest.raises(DomainError):
        WeightParam(1.5)
    with pytest.raises(DomainError):
        as_weight(-0.1)


def test_ascending_costs_log_two():
    assert delta_t(I, TWO_I, 1.0) == pytest.approx(math.log(2.0))
    assert delta_closed(I, TWO_I) == pytest.approx(math.log(2.0))


def test_descending_is_free_at_weight_one():
    assert delta_t(TWO_I, I, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert delta_closed(TWO_I, I) == pytest.approx(0.0, abs=1e-15)


def test_weight_zero_is_symmetric():
    assert delta_t(I, TWO_I, 0.0) == pytest.approx(delta_t(TWO_I, I, 0.0))


def test_diagonal_vanishes():
    assert delta_t(I, I, 0.5) == 0.0
    assert delta_closed(I, I) == 0.0


def test_big_m_matches_closed_form():
    assert big_m(I, TWO_I) == pytest.approx(2.0, rel=1e-9)
    assert big_m(TWO_I, I) == 1.0
    p, q = HPoint(-0.7, 0.3), HPoint(1.9, 2.2)
    assert math.log(big_m(p, q)) == pytest.approx(delta_closed(p, q), abs=1e-7)


def test_finsler_norm_adds_the_one_form():
    v = HTangent(I, 2j)
    assert finsler_norm(v, 0.0) == pytest.approx(1.0)
    assert finsler_norm(v, 1.0) == pytest.approx(2.0)
    assert finsler_norm(HTangent(I, -2j), 1.0) == pytest.approx(0.0)


def test_geodesic_length_equals_delta_t():
    path = GeodesicPath(I, TWO_I).sample(2)
    assert path_length(path, 1.0) == pytest.approx(math.log(2.0), abs=1e-9)
    assert hyp_path_length(path) == pytest.approx(0.5 * math.log(2.0), abs=1e-9)


def test_one_form_contribution_depends_only_on_endpoints():
    a, b = 0.2 + 0.5j, 1.1 + 1.5j
    first = bumped_path(a, b, 1j, 0.2)
    second = bumped_path(a, b, 1.0, 0.1)
    expected = 0.25 * math.log(1.5 / 0.5)
    assert one_form_contribution(first, 0.5) == pytest.approx(expected, abs=1e-9)
    assert one_form_contribution(second, 0.5) == pytest.approx(expected, abs=1e-9)


def test_path_sample_validation():
    with pytest.raises(DegeneratePathError):
        PathSample.from_callables(lambda s: 1j + 0 * s, None, 0.0, 1.0, 1)
    with pytest.raises(ValueError):
        PathSample.from_points([0.0, 0.0, 1.0], [1j, 2j, 3j])
    with pytest.raises(DomainError):
        PathSample.from_points([0.0, 1.0], [1j, -1j])


def test_spline_path_of_a_vertical_segment():
    grid = np.linspace(0.0, 1.0, 9)
    path = PathSample.from_points(grid, 1j * (1.0 + grid))
    assert hyp_path_length(path) == pytest.approx(0.5 * math.log(2.0), abs=1e-9)
    assert path.start == 1j and path.end == 2j


def test_minimality_probe_on_imaginary_axis():
    report = geodesic_minimality_probe(I, HPoint(0.0, 4.0), 1.0, perturbations=8)
    assert report.passed
    assert report.min_margin > 0.0
    assert report.unperturbed_margin == pytest.approx(0.0, abs=1e-8)
    with pytest.raises(DomainError):
        geodesic_minimality_probe(I, TWO_I, 1.0, 3, amplitude=1.5)


def test_non_separation_report(sampler):
    report = non_separation_check(sampler, 200)
    assert report.passed
    assert DESCENDING_NOTE in report.notes


@pytest.mark.parametrize("t", [0.0, 0.5, 1.0])
def test_axioms_and_symmetrization(sampler, t):
    assert weak_axioms_check(sampler, t, 300).passed
    assert symmetrization_check(sampler, t, 300).passed


def test_sup_and_closed_forms_agree(sampler):
    report = sup_closed_check(sampler, 50)
    assert report.passed
    assert closed_form_agreement_check(sampler, 300).passed


def test_exact_form_and_finsler_lengths(sampler):
    assert exact_form_check(sampler, 1.0, 5).passed
    assert finsler_length_check(sampler, 0.5, 5).passed


def test_descending_sequence_is_forward_cauchy():
    report = descending_sequence_check(30)
    assert report.passed
    assert report.details["last_im"] < 1e-12


@pytest.mark.parametrize(
    "p, q",
    [
        # seed-0 pair whose sup sits near x = -4000, past the outermost grid point
        (HPoint(-0.62102, 7.08576), HPoint(-0.60851, 0.27073)),
        (HPoint(0.62102, 7.08576), HPoint(0.60851, 0.27073)),
    ],
)
def test_big_m_finds_a_sup_beyond_the_grid(p, q):
    m = big_m(p, q)
    assert m > 1.0
    assert abs(math.log(m) - delta_closed(p, q)) <= 1e-7


def test_minimality_margins_shrink_with_the_bump():
    q = HPoint(1.0, 2.0)
    reports = [
        geodesic_minimality_probe(I, q, 0.5, perturbations=6, seed=4, amplitude=a)
        for a in (0.4, 0.1, 0.025)
    ]
    largest = [max(report.margins) for report in reports]
    assert all(m > 0.0 for report in reports for m in report.margins)
    assert largest[0] > largest[1] > largest[2]
    assert largest[2] < 0.05 * largest[0]


def test_c1_path_length_ignores_the_pace(sampler):
    for t in (0.0, 0.5, 1.0):
        assert c1_path_length_check(sampler, t, 5).passed


def test_weak_distance_is_the_finsler_distance(sampler):
    report = weak_distance_check(sampler, 5)
    assert report.passed
    assert report.max_violation <= 1e-8


def test_rays_to_the_real_line_have_bounded_length(sampler):
    report = bounded_ray_check(sampler, 20)
    assert report.passed
    assert report.details["bounded"] <= 1e-9
    assert report.details["divergent"] <= 1e-9
