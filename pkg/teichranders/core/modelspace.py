"""
Finite-dimensional model of the infinitesimal theory.

A ModelSpace is a midpoint grid on the unit square with positive cell weights and
a k-dimensional span of complex grid functions playing the role of quadratic
differentials (L1 norm). Beltrami differentials are arbitrary complex grid
functions (L-infinity norm); the two are paired by the weighted sum of products.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy as sp
from scipy.optimize import minimize

from teichranders.config import CONFIG, get_default_space_description
from teichranders.core.errors import (
    AssertionFailure,
    DimensionMismatchError,
    DomainError,
    KernelUnavailableError,
)
from teichranders.models.space import ModelSpaceDescription
from teichranders.schemas.reports import CheckReport, DerivativeReport

logger = logging.getLogger(__name__)

DERIVATIVE_ANCHOR = "Derivative of the Teichmüller norm"
DUAL_NORM_ANCHOR = "called the Teichmüller metric"
PAIRING_ANCHOR = "There is a natural pairing between Beltrami differentials"
L1_ANCHOR = "the Banach space of holomorphic quadratic differentials"
KERNEL_ANCHOR = "the subspace orthogonal to"
BELTRAMI_ANCHOR = "A form in L^∞(X) is called a Beltrami differential"
NORM_ANCHOR = "‖φ‖₁ = ∫_X |φ(z)| dxdy"

_X, _Y = sp.symbols("x y", real=True)


def compile_basis(spec: str, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Evaluate a symbolic expression in x, y on the grid."""
    try:
        expr = sp.sympify(spec, locals={"x": _X, "y": _Y})
    except (sp.SympifyError, SyntaxError, TypeError) as exc:
        raise DomainError(f"malformed basis expression {spec!r}: {exc}") from None
    stray = expr.free_symbols - {_X, _Y}
    if stray:
        names = ", ".join(sorted(str(s) for s in stray))
        raise DomainError(f"basis expression {spec!r} uses unknown symbols: {names}")
    fn = sp.lambdify((_X, _Y), expr, "numpy")
    values = np.broadcast_to(np.asarray(fn(x, y), dtype=complex), x.shape)
    if not np.all(np.isfinite(values)):
        raise DomainError(f"basis expression {spec!r} is not finite on the grid")
    return np.array(values)


@dataclass(frozen=True, eq=False)
class ModelSpace:
    weights: np.ndarray
    basis: np.ndarray  # shape (k, cells)
    specs: Tuple[str, ...] = ()
    shape: Tuple[int, int] = (0, 0)
    seed: int = 0
    gram_cond: float = field(init=False)

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=float)
        basis = np.atleast_2d(np.asarray(self.basis, dtype=complex))
        if weights.ndim != 1 or basis.shape[1] != weights.shape[0]:
            raise DimensionMismatchError(
                f"basis shape {basis.shape} does not match {weights.shape[0]} cells"
            )
        if basis.shape[0] < 1:
            raise DomainError("model space needs at least one basis function")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise DomainError("cell weights must be positive and finite")
        if not np.all(np.isfinite(basis)):
            raise DomainError("basis functions must be finite")
        gram = (basis * weights) @ basis.conj().T
        cond = float(np.linalg.cond(gram))
        if not math.isfinite(cond) or cond > 1.0 / np.finfo(float).eps:
            raise DomainError(f"basis is linearly dependent (Gram condition {cond:.3e})")
        weights.setflags(write=False)
        basis.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "gram_cond", cond)

    @property
    def k(self) -> int:
        return self.basis.shape[0]

    @property
    def cells(self) -> int:
        return self.weights.shape[0]

    @classmethod
    def from_description(
        cls, desc: Union[ModelSpaceDescription, Dict[str, Any]]
    ) -> "ModelSpace":
        if not isinstance(desc, ModelSpaceDescription):
            desc = ModelSpaceDescription.model_validate(desc)
        nx, ny = desc.grid.nx, desc.grid.ny
        xs = (np.arange(nx) + 0.5) / nx
        ys = (np.arange(ny) + 0.5) / ny
        x, y = (a.ravel() for a in np.meshgrid(xs, ys, indexing="ij"))
        weights = np.full(nx * ny, 1.0 / (nx * ny))
        basis = np.stack([compile_basis(spec, x, y) for spec in desc.basis])
        logger.debug("compiled %d basis functions on a %dx%d grid", len(desc.basis), nx, ny)
        return cls(weights, basis, tuple(desc.basis), (nx, ny), desc.seed)

    def normalized(self) -> "ModelSpace":
        """Same span with every basis function scaled to unit L1 norm."""
        norms = np.abs(self.basis) @ self.weights
        return ModelSpace(
            self.weights, self.basis / norms[:, None], self.specs, self.shape, self.seed
        )

    def qd(self, coeffs: Sequence[complex]) -> "ModelQD":
        return ModelQD(self, np.asarray(coeffs, dtype=complex))

    def basis_qd(self, j: int) -> "ModelQD":
        coeffs = np.zeros(self.k, dtype=complex)
        coeffs[j] = 1.0
        return ModelQD(self, coeffs)

    def zero_beltrami(self) -> "ModelBeltrami":
        return ModelBeltrami(self, np.zeros(self.cells, dtype=complex))


def default_space(k: Optional[int] = None) -> ModelSpace:
    """The settings-level default space, or its grid with the first k pooled basis functions."""
    desc = ModelSpaceDescription.model_validate(get_default_space_description())
    if k is not None:
        pool = CONFIG.space.BASIS_POOL
        if not 1 <= k <= len(pool):
            raise DomainError(f"default spaces have 1..{len(pool)} basis functions, got {k}")
        desc = desc.model_copy(update={"basis": list(pool[:k])})
    return ModelSpace.from_description(desc)


@dataclass(frozen=True, eq=False)
class ModelQD:
    space: ModelSpace
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if coeffs.shape != (self.space.k,):
            raise DimensionMismatchError(
                f"expected {self.space.k} coefficients, got {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def values(self) -> np.ndarray:
        return self.coeffs @ self.space.basis

    def __add__(self, other: "ModelQD") -> "ModelQD":
        _same_space(self.space, other.space)
        return ModelQD(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "ModelQD") -> "ModelQD":
        _same_space(self.space, other.space)
        return ModelQD(self.space, self.coeffs - other.coeffs)

    def __mul__(self, c: complex) -> "ModelQD":
        return ModelQD(self.space, self.coeffs * c)

    __rmul__ = __mul__

    def __truediv__(self, c: complex) -> "ModelQD":
        return ModelQD(self.space, self.coeffs / c)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)


@dataclass(frozen=True, eq=False)
class ModelBeltrami:
    space: ModelSpace
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.space.cells,):
            raise DimensionMismatchError(
                f"expected {self.space.cells} cell values, got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("Beltrami differential must be finite")
        object.__setattr__(self, "values", values)

    def __add__(self, other: "ModelBeltrami") -> "ModelBeltrami":
        _same_space(self.space, other.space)
        return ModelBeltrami(self.space, self.values + other.values)

    def __sub__(self, other: "ModelBeltrami") -> "ModelBeltrami":
        _same_space(self.space, other.space)
        return ModelBeltrami(self.space, self.values - other.values)

    def __mul__(self, c: complex) -> "ModelBeltrami":
        return ModelBeltrami(self.space, self.values * c)

    __rmul__ = __mul__

    def __neg__(self) -> "ModelBeltrami":
        return ModelBeltrami(self.space, -self.values)


def _same_space(a: ModelSpace, b: ModelSpace) -> None:
    if a is not b and (a.k != b.k or a.cells != b.cells):
        raise DimensionMismatchError("operands live on different model spaces")


# =============================================================================
# Norms and pairing
# =============================================================================


def l1_norm(phi: ModelQD) -> float:
    return float(np.abs(phi.values) @ phi.space.weights)


def linf_norm(mu: ModelBeltrami) -> float:
    return float(np.max(np.abs(mu.values), initial=0.0))


def gram_condition(space: ModelSpace) -> float:
    return space.gram_cond


def basis_pairings(mu: ModelBeltrami) -> np.ndarray:
    """<mu, b_j> for every basis function b_j."""
    return mu.space.basis @ (mu.space.weights * mu.values)


def pairing(mu: ModelBeltrami, phi: ModelQD) -> complex:
    if mu.values.shape[0] != phi.space.cells:
        raise DimensionMismatchError(
            f"Beltrami on {mu.values.shape[0]} cells paired with span on {phi.space.cells}"
        )
    value = complex(np.sum(phi.space.weights * mu.values * phi.values))
    bound = linf_norm(mu) * l1_norm(phi)
    if abs(value) > bound * (1.0 + 1e-12) + 1e-300:
        raise AssertionFailure(f"Hölder bound violated: |{value}| > {bound}")
    return value


def teichmuller_beltrami(phi: ModelQD, c: float = 1.0) -> ModelBeltrami:
    """c * conj(phi)/|phi|, zero on cells where |phi| is below the floor."""
    values = phi.values
    modulus = np.abs(values)
    floor = CONFIG.tolerances.zero_floor * float(np.max(modulus, initial=0.0))
    small = modulus <= floor
    if np.any(small):
        logger.warning(
            "quadratic differential nearly vanishes on %d cells; quotient set to 0 there",
            int(small.sum()),
        )
    quotient = np.zeros_like(values)
    np.divide(np.conj(values), modulus, out=quotient, where=~small)
    return ModelBeltrami(phi.space, c * quotient)


# =============================================================================
# Dual norm
# =============================================================================


def _real_to_coeffs(x: np.ndarray) -> np.ndarray:
    k = x.shape[-1] // 2
    return x[..., :k] + 1j * x[..., k:]


def _ratio_objective(space: ModelSpace, functional: np.ndarray):
    """-Re(sum_j c_j p_j) / ||phi_c||_1 and its gradient in (Re c, Im c)."""
    basis, weights = space.basis, space.weights

    def objective(x):
        c = _real_to_coeffs(x)
        phi = c @ basis
        modulus = np.abs(phi)
        norm = float(modulus @ weights)
        if norm == 0.0:
            return 0.0, np.zeros_like(x)
        linear = float(np.real(c @ functional))
        unit = np.zeros_like(phi)
        np.divide(np.conj(phi), modulus, out=unit, where=modulus > 0)
        dnorm = basis @ (weights * unit)  # d||phi||/d Re c = Re(dnorm), d/d Im c = -Im(dnorm)
        grad_norm = np.concatenate([np.real(dnorm), -np.imag(dnorm)])
        grad_linear = np.concatenate([np.real(functional), -np.imag(functional)])
        value = linear / norm
        grad = (grad_linear - value * grad_norm) / norm
        return -value, -grad

    return objective


def maximize_ratio(
    space: ModelSpace, functional: np.ndarray, starts: Optional[int] = None, seed: int = 0
) -> Tuple[float, np.ndarray]:
    """
    sup over nonzero c of Re(sum_j c_j p_j) / ||sum_j c_j b_j||_1 and a unit-L1 maximizer.

    The ratio is quasi-concave where positive, so every start that reaches the
    positive region climbs to the global value; the starts guard against kinks.
    """
    tol = CONFIG.tolerances
    functional = np.asarray(functional, dtype=complex)
    scale = float(np.max(np.abs(functional), initial=0.0))
    k = space.k
    if scale <= tol.zero_floor * tol.zero_floor:
        coeffs = np.zeros(k, dtype=complex)
        coeffs[0] = 1.0
        return 0.0, coeffs / l1_norm(space.qd(coeffs))

    if k == 1:
        norm = float(np.abs(space.basis[0]) @ space.weights)
        coeffs = np.array([np.conj(functional[0]) / abs(functional[0]) / norm])
        return abs(functional[0]) / norm, coeffs

    # the ratio is linear in the functional, so solve for the unit one and rescale
    unit = functional / scale
    objective = _ratio_objective(space, unit)
    rng = np.random.default_rng(seed)
    n_starts = starts or tol.dual_starts
    candidates = [np.concatenate([np.real(unit), -np.imag(unit)])]
    candidates += list(rng.standard_normal((n_starts - 1, 2 * k)))

    best_value, best_x = -math.inf, candidates[0]
    for x0 in candidates:
        result = minimize(
            objective, x0, jac=True, method="BFGS", options={"gtol": tol.dual_tol}
        )
        if -result.fun > best_value:
            best_value, best_x = -float(result.fun), result.x
    polish = minimize(
        lambda x: objective(x)[0],
        best_x / np.linalg.norm(best_x),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 2000 * k},
    )
    if -polish.fun > best_value:
        best_value, best_x = -float(polish.fun), polish.x
    logger.debug("dual sup %.15g after %d starts", best_value * scale, len(candidates))

    coeffs = _real_to_coeffs(best_x)
    coeffs = coeffs / l1_norm(space.qd(coeffs))
    return best_value * scale, coeffs


def teich_dual_norm(mu: ModelBeltrami) -> Tuple[float, ModelQD]:
    """sup of Re<mu, phi> over unit-L1 phi in the span, with the maximizer."""
    value, coeffs = maximize_ratio(mu.space, basis_pairings(mu))
    bound = linf_norm(mu)
    if value > bound * (1.0 + CONFIG.tolerances.dual_tol) + CONFIG.tolerances.dual_tol:
        raise AssertionFailure(f"dual norm {value} exceeds the sup norm {bound}")
    return value, mu.space.qd(coeffs)


def dual_norm_brute_force(mu: ModelBeltrami, samples: int, seed: int = 0) -> float:
    """Sample the unit sphere of coefficients, then refine the best few with Nelder-Mead."""
    space = mu.space
    functional = basis_pairings(mu)
    objective = _ratio_objective(space, functional)
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, 2 * space.k))
    ratios = np.empty(samples)
    for start in range(0, samples, 512):
        block = _real_to_coeffs(directions[start : start + 512])
        norms = np.abs(block @ space.basis) @ space.weights
        ratios[start : start + 512] = np.real(block @ functional) / norms
    best = float(np.max(ratios))
    for idx in np.argsort(ratios)[-4:]:
        result = minimize(
            lambda x: objective(x)[0],
            directions[idx],
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000 * space.k},
        )
        best = max(best, -float(result.fun))
    return best


# =============================================================================
# Kernel and derivative lemma
# =============================================================================


def kernel_element(space: ModelSpace, seed: int = 0) -> ModelBeltrami:
    """A nonzero grid function annihilated by every basis function, scaled to sup norm 1."""
    if space.cells <= space.k:
        raise KernelUnavailableError(
            f"{space.cells} cells cannot host a kernel for {space.k} constraints"
        )
    rng = np.random.default_rng(seed)
    nu = rng.standard_normal(space.cells) + 1j * rng.standard_normal(space.cells)
    constraints = space.basis * space.weights  # row j: nu -> <nu, b_j>
    # the pairing is bilinear, so the annihilator is the Hermitian complement of conj rows
    q, _ = np.linalg.qr(constraints.conj().T)
    for _ in range(2):
        nu = nu - q @ (q.conj().T @ nu)
    nu = nu / np.max(np.abs(nu))
    residual = float(np.max(np.abs(constraints @ nu)))
    if residual > CONFIG.tolerances.kernel_residual:
        raise AssertionFailure(f"kernel projection residual {residual:.3e}")
    return ModelBeltrami(space, nu)


def derivative_check(v0_qd: ModelQD, beta: float, v: ModelBeltrami) -> DerivativeReport:
    """Finite differences of the dual norm at a Teichmüller point against Re<v, alpha0>."""
    if v0_qd.is_zero():
        raise DomainError("base quadratic differential must be nonzero")
    if not beta > 0:
        raise DomainError(f"beta must be positive, got {beta}")
    tol = CONFIG.tolerances
    alpha0 = v0_qd / l1_norm(v0_qd)
    mu0 = teichmuller_beltrami(alpha0, beta)
    analytic = float(np.real(pairing(v, alpha0)))

    finite: Dict[str, float] = {}
    errors = []
    zero_case = abs(analytic) <= tol.derivative_zero
    for h in tol.fd_steps:
        plus, _ = teich_dual_norm(mu0 + v * h)
        minus, _ = teich_dual_norm(mu0 + v * (-h))
        fd = (plus - minus) / (2.0 * h)
        finite[repr(h)] = fd
        gap = abs(fd - analytic)
        errors.append(gap if zero_case else gap / abs(analytic))
    best = min(errors)
    threshold = tol.derivative_zero if zero_case else tol.derivative_rel
    return DerivativeReport(
        name="dual_norm_derivative",
        anchor=DERIVATIVE_ANCHOR,
        cases=len(errors),
        max_violation=best,
        tolerance=threshold,
        passed=bool(best <= threshold),
        analytic=analytic,
        finite_differences=finite,
        best_error=best,
        details={"beta": beta, "zero_direction": zero_case},
    )


# =============================================================================
# Property checks
# =============================================================================


def _random_qd(space: ModelSpace, rng: np.random.Generator) -> ModelQD:
    return space.qd(rng.standard_normal(space.k) + 1j * rng.standard_normal(space.k))


def _random_beltrami(space: ModelSpace, rng: np.random.Generator) -> ModelBeltrami:
    values = rng.standard_normal(space.cells) + 1j * rng.standard_normal(space.cells)
    return ModelBeltrami(space, values / np.max(np.abs(values)))


def l1_norm_check(space: ModelSpace, samples: int, seed: int = 0) -> CheckReport:
    """Homogeneity, the triangle inequality and definiteness of the L1 norm on the span."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        phi, psi = _random_qd(space, rng), _random_qd(space, rng)
        c = complex(rng.standard_normal(), rng.standard_normal())
        scale = l1_norm(phi)
        worst = max(
            worst,
            abs(l1_norm(phi * c) - abs(c) * scale) / (abs(c) * scale),
            max(0.0, l1_norm(phi + psi) - scale - l1_norm(psi)),
        )
    zero_ok = l1_norm(space.qd(np.zeros(space.k))) == 0.0
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="l1_norm",
        anchor=L1_ANCHOR,
        cases=samples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(zero_ok and worst <= tol),
        seed=seed,
        details={"k": space.k, "gram_condition": space.gram_cond},
    )


def holder_check(space: ModelSpace, samples: int, seed: int = 0) -> CheckReport:
    """|<mu, phi>| <= ||mu||_inf ||phi||_1, with equality for mu = conj(phi)/|phi|."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        phi = _random_qd(space, rng)
        pairing(_random_beltrami(space, rng), phi)
        equality = pairing(teichmuller_beltrami(phi), phi)
        worst = max(worst, abs(equality - l1_norm(phi)) / l1_norm(phi))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="holder_pairing",
        anchor=PAIRING_ANCHOR,
        cases=samples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
    )


def l1_integral_check(space: ModelSpace, refine: int = 4) -> CheckReport:
    """
    The cell sum ||phi||_1 against the integral of |phi| on a grid `refine` times finer.
    Needs a space compiled from its description, unnormalized.
    """
    if not space.specs or space.shape == (0, 0):
        raise DomainError("the integral check needs a space built from basis expressions")
    nx, ny = (refine * n for n in space.shape)
    xs = (np.arange(nx) + 0.5) / nx
    ys = (np.arange(ny) + 0.5) / ny
    x, y = (a.ravel() for a in np.meshgrid(xs, ys, indexing="ij"))
    worst = 0.0
    for j, spec in enumerate(space.specs):
        integral = float(np.mean(np.abs(compile_basis(spec, x, y))))
        worst = max(worst, abs(l1_norm(space.basis_qd(j)) - integral) / integral)
    tol = CONFIG.tolerances.l1_resolution
    return CheckReport(
        name="l1_norm_integral",
        anchor=NORM_ANCHOR,
        cases=space.k,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        details={"grid": list(space.shape), "refine": refine},
    )


def beltrami_check(space: ModelSpace, samples: int, seed: int = 0) -> CheckReport:
    """Sup norms: c conj(phi)/|phi| has norm c, kernel elements are scaled to norm 1."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        c = float(rng.uniform(0.05, 1.0))
        mu = teichmuller_beltrami(_random_qd(space, rng), c)
        worst = max(worst, abs(linf_norm(mu) - c))
    worst = max(worst, abs(linf_norm(kernel_element(space, seed)) - 1.0))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="beltrami_sup_norm",
        anchor=BELTRAMI_ANCHOR,
        cases=samples + 1,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
    )


def dual_norm_check(space: ModelSpace, samples: int, seed: int = 0) -> CheckReport:
    """The solver's dual norm against random sampling of the unit sphere."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    trials = 5
    for j in range(trials):
        mu = _random_beltrami(space, rng)
        value, _ = teich_dual_norm(mu)
        brute = dual_norm_brute_force(mu, samples, seed + j)
        worst = max(worst, abs(value - brute) / value)
    tol = CONFIG.tolerances.brute_force_rel
    return CheckReport(
        name="dual_norm_vs_brute_force",
        anchor=DUAL_NORM_ANCHOR,
        cases=trials,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
        details={"samples": samples, "k": space.k},
    )


def dual_norm_properties_check(
    space: ModelSpace, trials: int, seed: int = 0
) -> List[CheckReport]:
    """
    Kernel invariance, positive homogeneity, subadditivity, the sup-norm bound
    and norm one on Teichmüller differentials, each against its own tolerance.
    """
    tol = CONFIG.tolerances
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(
        ("kernel_invariance", "homogeneity", "subadditivity", "sup_bound", "teichmuller"),
        0.0,
    )
    for j in range(trials):
        mu, nu = _random_beltrami(space, rng), _random_beltrami(space, rng)
        kappa, _ = teich_dual_norm(mu)
        shifted, _ = teich_dual_norm(mu + kernel_element(space, seed + j))
        scale = float(rng.uniform(0.1, 10.0))
        scaled, _ = teich_dual_norm(mu * scale)
        other, _ = teich_dual_norm(nu)
        total, _ = teich_dual_norm(mu + nu)
        teich, _ = teich_dual_norm(teichmuller_beltrami(_random_qd(space, rng)))
        observed = {
            "kernel_invariance": abs(shifted - kappa),
            "homogeneity": abs(scaled - scale * kappa) / scale,
            "subadditivity": max(0.0, total - kappa - other),
            "sup_bound": max(0.0, kappa - linf_norm(mu)),
            "teichmuller": abs(teich - 1.0),
        }
        for key, value in observed.items():
            worst[key] = max(worst[key], value)

    limits = {
        "kernel_invariance": tol.kernel_invariance,
        "homogeneity": tol.homogeneity,
        "subadditivity": tol.subadditivity,
        "sup_bound": tol.dual_tol,
        "teichmuller": tol.dual_tol,
    }
    return [
        CheckReport(
            name=f"dual_norm_{key}",
            anchor=DUAL_NORM_ANCHOR,
            cases=trials,
            max_violation=worst[key],
            tolerance=limit,
            passed=bool(worst[key] <= limit),
            seed=seed,
        )
        for key, limit in limits.items()
    ]


def kernel_check(space: ModelSpace, trials: int, seed: int = 0) -> CheckReport:
    """Kernel elements pair to zero with the span, so their dual norm vanishes."""
    tol = CONFIG.tolerances
    residual = norm = 0.0
    for j in range(trials):
        nu = kernel_element(space, seed + j)
        residual = max(residual, float(np.max(np.abs(basis_pairings(nu)))))
        norm = max(norm, teich_dual_norm(nu)[0])
    return CheckReport(
        name="kernel_annihilator",
        anchor=KERNEL_ANCHOR,
        cases=trials,
        max_violation=residual,
        tolerance=tol.kernel_residual,
        passed=bool(residual <= tol.kernel_residual and norm <= tol.extremality),
        seed=seed,
        details={"max_dual_norm": norm},
    )
