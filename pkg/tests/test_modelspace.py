import numpy as np
import pytest
from pydantic import ValidationError

from teichranders.core.errors import (
    DimensionMismatchError,
    DomainError,
    KernelUnavailableError,
)
from teichranders.core.modelspace import (
    ModelBeltrami,
    ModelSpace,
    basis_pairings,
    beltrami_check,
    compile_basis,
    default_space,
    derivative_check,
    dual_norm_brute_force,
    dual_norm_check,
    dual_norm_properties_check,
    holder_check,
    kernel_check,
    kernel_element,
    l1_integral_check,
    l1_norm,
    l1_norm_check,
    linf_norm,
    pairing,
    teich_dual_norm,
    teichmuller_beltrami,
)
from teichranders.models.space import ModelSpaceDescription


def _beltrami(space, seed):
    rng = np.random.default_rng(seed)
    values = rng.standard_normal(space.cells) + 1j * rng.standard_normal(space.cells)
    return ModelBeltrami(space, values / np.max(np.abs(values)))


class TestBasis:
    def test_compiles_on_the_grid(self):
        x = np.array([0.25, 0.75])
        y = np.array([0.5, 0.5])
        np.testing.assert_allclose(compile_basis("1 + x*y", x, y), [1.125, 1.375])
        np.testing.assert_allclose(compile_basis("2", x, y), [2.0, 2.0])

    @pytest.mark.parametrize("spec", ["x +", "z * x"])
    def test_rejects_bad_expressions(self, spec):
        with pytest.raises(DomainError):
            compile_basis(spec, np.array([0.5]), np.array([0.5]))

    def test_rejects_dependent_basis(self):
        with pytest.raises(DomainError):
            ModelSpace.from_description({"grid": {"nx": 8, "ny": 8}, "basis": ["x", "2*x"]})

    def test_description_limits_basis_size(self):
        with pytest.raises(ValidationError):
            ModelSpaceDescription(basis=["1", "x", "y", "x*y", "x**2"])
        with pytest.raises(ValidationError):
            ModelSpaceDescription(basis=[])


def test_space_shape(small_space):
    assert small_space.k == 2
    assert small_space.cells == 256
    assert small_space.weights.sum() == pytest.approx(1.0)
    with pytest.raises(DimensionMismatchError):
        small_space.qd([1.0, 2.0, 3.0])
    with pytest.raises(DimensionMismatchError):
        ModelBeltrami(small_space, np.zeros(10))


def test_normalized_basis_has_unit_norm(line_space):
    assert l1_norm(line_space.basis_qd(0)) == pytest.approx(1.0, rel=1e-12)


def test_norms_and_holder_equality(small_space):
    phi = small_space.qd([1.0 + 0.5j, -0.3j])
    assert l1_norm(phi * 2j) == pytest.approx(2.0 * l1_norm(phi))
    mu = teichmuller_beltrami(phi, 0.7)
    assert linf_norm(mu) == pytest.approx(0.7)
    assert pairing(mu, phi) == pytest.approx(0.7 * l1_norm(phi), rel=1e-12)
    assert linf_norm(small_space.zero_beltrami()) == 0.0


def test_one_dimensional_dual_norm_is_the_pairing(line_space):
    mu = _beltrami(line_space, 3)
    value, maximizer = teich_dual_norm(mu)
    assert value == pytest.approx(abs(basis_pairings(mu)[0]), rel=1e-12)
    assert l1_norm(maximizer) == pytest.approx(1.0, rel=1e-12)
    assert pairing(mu, maximizer).real == pytest.approx(value, rel=1e-9)


def test_dual_norm_agrees_with_brute_force(small_space):
    mu = _beltrami(small_space, 5)
    value, maximizer = teich_dual_norm(mu)
    assert value <= linf_norm(mu)
    assert dual_norm_brute_force(mu, 2000, 1) == pytest.approx(value, rel=1e-5)
    assert pairing(mu, maximizer).real == pytest.approx(value, rel=1e-6)


def test_teichmuller_differential_has_dual_norm_one(small_space):
    phi = small_space.qd([0.4 - 1j, 1.3])
    value, _ = teich_dual_norm(teichmuller_beltrami(phi))
    assert value == pytest.approx(1.0, abs=1e-6)


class TestKernel:
    def test_element_is_annihilated(self, small_space):
        nu = kernel_element(small_space, 7)
        assert linf_norm(nu) == pytest.approx(1.0)
        assert np.max(np.abs(basis_pairings(nu))) <= 1e-12
        assert abs(pairing(nu, small_space.qd([2.0, -1j]))) <= 1e-11

    def test_unavailable_without_room(self):
        space = ModelSpace(np.ones(2), np.eye(2))
        with pytest.raises(KernelUnavailableError):
            kernel_element(space)


class TestDerivative:
    def test_teichmuller_direction(self, small_space):
        v0 = small_space.qd([1.0, 0.5j])
        alpha0 = v0 / l1_norm(v0)
        report = derivative_check(v0, 0.5, teichmuller_beltrami(alpha0))
        assert report.passed
        assert report.analytic == pytest.approx(1.0, rel=1e-12)
        assert len(report.finite_differences) == 4

    def test_rejects_degenerate_inputs(self, small_space):
        v = small_space.zero_beltrami()
        with pytest.raises(DomainError):
            derivative_check(small_space.qd([0.0, 0.0]), 0.5, v)
        with pytest.raises(DomainError):
            derivative_check(small_space.qd([1.0, 0.0]), 0.0, v)


def test_property_checks(small_space):
    assert l1_norm_check(small_space, 20).passed
    assert holder_check(small_space, 20).passed
    assert dual_norm_check(small_space, 1000).passed
    assert all(r.passed for r in dual_norm_properties_check(small_space, 1))
    assert kernel_check(small_space, 2).passed


class TestDualNormProperties:
    def test_kernel_shift_leaves_the_norm(self, small_space):
        mu = _beltrami(small_space, 5)
        value, _ = teich_dual_norm(mu)
        for seed in (3, 8):
            shifted, _ = teich_dual_norm(mu + kernel_element(small_space, seed))
            assert abs(shifted - value) <= 1e-8

    @pytest.mark.parametrize("scale", [0.1, 7.3, 250.0])
    def test_positive_homogeneity(self, small_space, scale):
        mu = _beltrami(small_space, 6)
        value, _ = teich_dual_norm(mu)
        scaled, _ = teich_dual_norm(mu * scale)
        assert abs(scaled - scale * value) / scale <= 1e-10

    def test_each_property_reports_its_own_tolerance(self, small_space):
        reports = {r.name: r for r in dual_norm_properties_check(small_space, 1)}
        assert reports["dual_norm_kernel_invariance"].tolerance == 1e-8
        assert reports["dual_norm_homogeneity"].tolerance == 1e-10
        assert reports["dual_norm_subadditivity"].tolerance == 1e-8
        assert all(r.passed for r in reports.values())


class TestDerivativeDirections:
    def test_kernel_direction_is_flat(self, small_space):
        v0 = small_space.qd([1.0, 0.5j])
        report = derivative_check(v0, 0.5, kernel_element(small_space, 7))
        assert report.details["zero_direction"]
        assert abs(report.analytic) <= 1e-12
        assert report.passed
        assert report.best_error <= 1e-6

    @pytest.mark.parametrize("seed", [11, 12])
    def test_random_direction(self, small_space, seed):
        v0 = small_space.qd([0.3 - 1j, 0.8])
        report = derivative_check(v0, 0.5, _beltrami(small_space, seed))
        assert report.passed


def test_cell_sum_matches_the_integral(small_space):
    report = l1_integral_check(small_space)
    assert report.passed
    assert report.details["grid"] == [16, 16]
    assert l1_integral_check(default_space()).passed
    with pytest.raises(DomainError):
        l1_integral_check(ModelSpace(np.ones(2), np.eye(2)))


def test_beltrami_sup_norms(small_space):
    report = beltrami_check(small_space, 10)
    assert report.passed
    assert report.cases == 11
