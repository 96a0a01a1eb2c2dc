"""
Weak metric on the upper half-plane.

``delta_t`` is the distance of the Finsler norm ``ds_hyp + (t/2) d log Im``.
At ``t = 1`` it coincides with the sup form ``log M(z1, z2)`` and its closed form;
descending the imaginary axis costs nothing in that case.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import minimize_scalar

from teichranders.config import CONFIG
from teichranders.core.errors import DegeneratePathError, DomainError
from teichranders.core.halfplane import (
    ComplexLike,
    GeodesicPath,
    GeodesicRay,
    HPoint,
    HTangent,
    PointSampler,
    hyp_dist,
    hyp_dist_array,
    hyp_norm,
    hyp_norm_array,
)
from teichranders.core.quadrature import integrate
from teichranders.schemas.reports import CheckReport, MinimalityReport

logger = logging.getLogger(__name__)

PathFunction = Callable[[np.ndarray], np.ndarray]

AXIOMS_ANCHOR = "A weak metric δ on a set"
SUP_FORM_ANCHOR = "is explicitly given by"
NON_SEPARATION_ANCHOR = "does not separate points of"
EXACT_FORM_ANCHOR = "taking the infimum on the lengths of paths"
MINIMALITY_ANCHOR = "any Teichmüller geodesic is a unique geodesic"
SYMMETRIZATION_ANCHOR = "symmetrisation of the weak metric"
FINSLER_ANCHOR = "we define δ_t be the weak metric defined by the Finsler norm"
INTRODUCED_ANCHOR = "the following weak metric was introduced on"
PATH_LENGTH_ANCHOR = "the length of any C¹-path"
WEAK_DISTANCE_ANCHOR = "coincides with the weak distance"
BOUNDED_RAY_ANCHOR = "geodesic ray tending to"

DESCENDING_NOTE = (
    "zero distance occurs for descending pairs (y1 >= y2); the prose statement "
    "'with y1 < y2' contradicts the closed and sup forms and is treated as a typo"
)


@dataclass(frozen=True, slots=True)
class WeightParam:
    t: float

    def __post_init__(self):
        if not (0.0 <= self.t <= 1.0):
            raise DomainError(f"weight t must lie in [0, 1], got {self.t}")


Weight = Union[float, WeightParam]


def as_weight(t: Weight) -> float:
    return t.t if isinstance(t, WeightParam) else WeightParam(float(t)).t


@dataclass(frozen=True, eq=False)
class PathSample:
    """A C1 path sampled on a strictly increasing grid, with position and derivative oracles."""

    grid: np.ndarray
    points: np.ndarray
    position: PathFunction
    derivative: PathFunction

    def __post_init__(self):
        if len(self.grid) < 2:
            raise DegeneratePathError(f"path needs at least 2 samples, got {len(self.grid)}")
        if np.any(np.diff(self.grid) <= 0):
            raise DomainError("path parameter grid must be strictly increasing")
        if np.any(~np.isfinite(self.points)) or np.any(np.imag(self.points) <= 0):
            raise DomainError("path leaves the upper half-plane")

    @classmethod
    def from_callables(
        cls,
        position: PathFunction,
        derivative: Optional[PathFunction],
        s0: float,
        s1: float,
        n: int,
    ) -> "PathSample":
        if n < 2:
            raise DegeneratePathError(f"path needs at least 2 samples, got {n}")
        grid = np.linspace(s0, s1, n)
        if derivative is None:
            derivative = _central_difference(position, 1e-6 * max(s1 - s0, 1.0))
        return cls(grid, np.asarray(position(grid), dtype=complex), position, derivative)

    @classmethod
    def from_points(cls, grid, points) -> "PathSample":
        """Interpolate samples with a cubic spline; the derivative is the spline's."""
        grid = np.asarray(grid, dtype=float)
        points = np.asarray(points, dtype=complex)
        if len(grid) < 2:
            raise DegeneratePathError(f"path needs at least 2 samples, got {len(grid)}")
        if len(grid) != len(points):
            raise DomainError("grid and points differ in length")
        re = CubicSpline(grid, points.real)
        im = CubicSpline(grid, points.imag)

        def position(s):
            return re(s) + 1j * im(s)

        def derivative(s):
            return re(s, 1) + 1j * im(s, 1)

        return cls(grid, points, position, derivative)

    @property
    def start(self) -> complex:
        return complex(self.points[0])

    @property
    def end(self) -> complex:
        return complex(self.points[-1])

    def hpoints(self) -> List[HPoint]:
        return [HPoint.from_complex(z) for z in self.points]

    def rows(self) -> List[dict]:
        """Plot-ready rows: s, re, im and the hyperbolic speed."""
        speed = hyp_norm_array(self.points, self.derivative(self.grid))
        return [
            {"s": float(s), "re": float(z.real), "im": float(z.imag), "norm": float(v)}
            for s, z, v in zip(self.grid, self.points, speed)
        ]


def _central_difference(position: PathFunction, h: float) -> PathFunction:
    def derivative(s):
        s = np.asarray(s, dtype=float)
        return (position(s + h) - position(s - h)) / (2.0 * h)

    return derivative


# =============================================================================
# Distances
# =============================================================================


@lru_cache(maxsize=8)
def _theta_grid(n: int) -> np.ndarray:
    theta = -0.5 * math.pi + math.pi * (np.arange(n) + 0.5) / n
    return theta


def _refine_cell(a: complex, b: complex, lo: float, hi: float) -> float:
    """Bounded search for the largest ratio with theta in [lo, hi]."""
    center = 0.5 * (lo + hi)

    # shift so the refined variable stays near 1 and the relative xatol acts absolutely
    def objective(u):
        x = math.tan(center + (u - 1.0))
        return -abs(b - x) / abs(a - x)

    result = minimize_scalar(
        objective,
        bounds=(lo - center + 1.0, hi - center + 1.0),
        method="bounded",
        options={"xatol": CONFIG.tolerances.sup_refine_tol},
    )
    return -float(result.fun)


def big_m(z1: HPoint, z2: HPoint) -> float:
    """sup over real x of |(z2 - x) / (z1 - x)|, the limit 1 at infinity included."""
    if z1 == z2:
        return 1.0
    a, b = z1.z, z2.z
    tol = CONFIG.tolerances
    theta = _theta_grid(tol.sup_grid)
    ratio = np.abs(b - np.tan(theta)) / np.abs(a - np.tan(theta))
    step = theta[1] - theta[0]
    edge = 0.5 * math.pi - 1e-15

    # the tail cells hold maxima at large |x| that no grid point sees
    cells = [(-edge, float(theta[0])), (float(theta[-1]), edge)]
    for k in np.argsort(ratio)[-tol.sup_candidates :]:
        center = float(theta[k])
        cells.append((max(-edge, center - step), min(edge, center + step)))
    refined = max(_refine_cell(a, b, lo, hi) for lo, hi in cells)
    return max(1.0, float(np.max(ratio)), refined)


def delta_closed_array(z1: ComplexLike, z2: ComplexLike) -> ComplexLike:
    return np.log(
        (np.abs(z2 - np.conj(z1)) + np.abs(z2 - z1)) / (2.0 * np.imag(z1))
    )


def delta_closed(z1: HPoint, z2: HPoint) -> float:
    return float(delta_closed_array(z1.z, z2.z))


def delta_t_array(z1: ComplexLike, z2: ComplexLike, t: float) -> ComplexLike:
    return hyp_dist_array(z1, z2) + 0.5 * t * (
        np.log(np.imag(z2)) - np.log(np.imag(z1))
    )


def delta_t(z1: HPoint, z2: HPoint, t: Weight) -> float:
    w = as_weight(t)
    return hyp_dist(z1, z2) + 0.5 * w * (math.log(z2.im) - math.log(z1.im))


def finsler_norm_array(base: ComplexLike, v: ComplexLike, t: float) -> ComplexLike:
    return hyp_norm_array(base, v) + 0.5 * t * np.imag(v) / np.imag(base)


def finsler_norm(v: HTangent, t: Weight) -> float:
    return hyp_norm(v) + 0.5 * as_weight(t) * v.v.imag / v.base.im


# =============================================================================
# Path lengths
# =============================================================================


def path_length(p: PathSample, t: Weight) -> float:
    w = as_weight(t)

    def integrand(s):
        return finsler_norm_array(p.position(s), p.derivative(s), w)

    return integrate(integrand, float(p.grid[0]), float(p.grid[-1]))


def hyp_path_length(p: PathSample) -> float:
    def integrand(s):
        return hyp_norm_array(p.position(s), p.derivative(s))

    return integrate(integrand, float(p.grid[0]), float(p.grid[-1]))


def one_form_contribution(p: PathSample, t: Weight) -> float:
    """Integral of (t/2) d log Im along the path, i.e. path_length minus hyp_path_length."""
    w = as_weight(t)

    def integrand(s):
        return 0.5 * w * np.imag(p.derivative(s)) / np.imag(p.position(s))

    return integrate(integrand, float(p.grid[0]), float(p.grid[-1]))


def bumped_path(
    z1: complex, z2: complex, direction: complex, amplitude: float, n: int = 33
) -> PathSample:
    """Straight segment z1 -> z2 plus a sine bump; keeps Im > 0 while amplitude < min Im."""
    c = amplitude * direction

    def position(s):
        s = np.asarray(s, dtype=float)
        return z1 + (z2 - z1) * s + c * np.sin(math.pi * s)

    def derivative(s):
        s = np.asarray(s, dtype=float)
        return (z2 - z1) + c * math.pi * np.cos(math.pi * s) + 0.0 * s

    return PathSample.from_callables(position, derivative, 0.0, 1.0, n)


def geodesic_minimality_probe(
    z1: HPoint,
    z2: HPoint,
    t: Weight,
    perturbations: int,
    seed: int = 0,
    amplitude: float = 0.5,
) -> MinimalityReport:
    """
    Perturb the hyperbolic geodesic z1 -> z2 with random sine bumps (endpoints fixed)
    and record path_length minus delta_t for each; every margin must be positive.
    ``amplitude`` is the largest bump as a fraction of the smallest Im on the geodesic.
    """
    if not 0.0 < amplitude < 1.0:
        raise DomainError(f"bump amplitude must lie in (0, 1), got {amplitude}")
    w = as_weight(t)
    rng = np.random.default_rng(seed)
    g = GeodesicPath(z1, z2)
    target = delta_t(z1, z2, w)
    length = g.length
    ceiling = amplitude * min(z1.im, z2.im)

    unperturbed = path_length(g.sample(2), w) - target
    margins = []
    for _ in range(perturbations):
        mode = int(rng.integers(1, 4))
        phase = rng.uniform(0.0, 2.0 * math.pi)
        c = ceiling * rng.uniform(0.2, 1.0) * complex(math.cos(phase), math.sin(phase))
        k = mode * math.pi / length

        def position(s, c=c, k=k):
            s = np.asarray(s, dtype=float)
            return g(s) + c * np.sin(k * s)

        def derivative(s, c=c, k=k):
            s = np.asarray(s, dtype=float)
            return g.derivative(s) + c * k * np.cos(k * s)

        bumped = PathSample.from_callables(position, derivative, 0.0, length, 33)
        margins.append(path_length(bumped, w) - target)

    min_margin = min(margins) if margins else math.inf
    tol = CONFIG.tolerances.path_vs_closed
    passed = abs(unperturbed) <= tol and all(m > tol for m in margins)
    logger.debug(
        "minimality probe %s -> %s: min margin %.3e over %d bumps",
        z1,
        z2,
        min_margin,
        perturbations,
    )
    return MinimalityReport(
        name="geodesic_minimality",
        anchor=MINIMALITY_ANCHOR,
        cases=perturbations + 1,
        max_violation=abs(unperturbed) + max(0.0, tol - min_margin),
        tolerance=tol,
        passed=passed,
        seed=seed,
        margins=margins,
        min_margin=min_margin,
        unperturbed_margin=unperturbed,
        details={"t": w, "from": str(z1), "to": str(z2), "amplitude": amplitude},
    )


# =============================================================================
# Property checks
# =============================================================================


def sup_closed_check(sampler: PointSampler, pairs: int) -> CheckReport:
    z1, z2 = sampler.pairs(pairs)
    closed = delta_closed_array(z1, z2)
    worst = 0.0
    for a, b, c in zip(z1, z2, closed):
        sup = math.log(big_m(HPoint.from_complex(a), HPoint.from_complex(b)))
        worst = max(worst, abs(sup - c))
    tol = CONFIG.tolerances.sup_vs_closed
    return CheckReport(
        name="sup_form_vs_closed_form",
        anchor=SUP_FORM_ANCHOR,
        cases=pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
    )


def symmetrization_check(sampler: PointSampler, t: Weight, pairs: int) -> CheckReport:
    w = as_weight(t)
    x, y = sampler.pairs(pairs)
    sym = 0.5 * (delta_t_array(x, y, w) + delta_t_array(y, x, w))
    worst = float(np.max(np.abs(sym - hyp_dist_array(x, y)), initial=0.0))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="symmetrization",
        anchor=SYMMETRIZATION_ANCHOR,
        cases=pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
        details={"t": w},
    )


def weak_axioms_check(sampler: PointSampler, t: Weight, triples: int) -> CheckReport:
    """Diagonal zero, nonnegativity and the triangle inequality on random and axis triples."""
    w = as_weight(t)
    x, y, z = sampler.triples(triples)
    ax, ay, az = (sampler.imaginary_axis(triples) for _ in range(3))
    x, y, z = (np.concatenate(pair) for pair in ((x, ax), (y, ay), (z, az)))

    diagonal = float(np.max(np.abs(delta_t_array(x, x, w))))
    negative = float(
        max(0.0, -np.min(np.concatenate([delta_t_array(x, y, w), delta_t_array(y, x, w)])))
    )
    excess = delta_t_array(x, z, w) - delta_t_array(x, y, w) - delta_t_array(y, z, w)
    triangle = float(max(0.0, np.max(excess)))
    worst = max(diagonal, negative, triangle)
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="weak_metric_axioms",
        anchor=AXIOMS_ANCHOR,
        cases=len(x),
        max_violation=worst,
        tolerance=tol,
        passed=bool(diagonal == 0.0 and worst <= tol),
        seed=sampler.seed,
        details={"t": w, "diagonal": diagonal, "negative": negative, "triangle": triangle},
    )


def non_separation_check(sampler: PointSampler, samples: int) -> CheckReport:
    """At t = 1, descending the imaginary axis is free and ascending costs log(y2/y1)."""
    y1 = np.imag(sampler.imaginary_axis(samples))
    y2 = np.imag(sampler.imaginary_axis(samples))
    values = delta_t_array(1j * y1, 1j * y2, 1.0)
    descending = y1 >= y2
    expected = np.where(descending, 0.0, np.log(y2 / y1))
    worst = float(np.max(np.abs(values - expected), initial=0.0))
    ascending_positive = bool(np.all(values[~descending] > 0.0))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="non_separation",
        anchor=NON_SEPARATION_ANCHOR,
        cases=samples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol and ascending_positive),
        seed=sampler.seed,
        notes=[DESCENDING_NOTE],
        details={"descending_pairs": int(descending.sum())},
    )


def exact_form_check(sampler: PointSampler, t: Weight, paths: int) -> CheckReport:
    """
    Two different bumped paths per endpoint pair must carry the same one-form
    contribution, equal to (t/2) log(Im end / Im start); closed loops carry none.
    """
    w = as_weight(t)
    rng = sampler.rng
    z1, z2 = sampler.pairs(paths)
    worst = 0.0
    for a, b in zip(z1, z2):
        ceiling = 0.5 * min(a.imag, b.imag)
        contributions = []
        for _ in range(2):
            phase = rng.uniform(0.0, 2.0 * math.pi)
            p = bumped_path(
                complex(a),
                complex(b),
                complex(math.cos(phase), math.sin(phase)),
                ceiling * rng.uniform(0.1, 1.0),
            )
            contributions.append(path_length(p, w) - hyp_path_length(p))
        expected = 0.5 * w * math.log(b.imag / a.imag)
        loop = bumped_path(complex(a), complex(a), 1j, ceiling)
        worst = max(
            worst,
            abs(contributions[0] - contributions[1]),
            abs(contributions[0] - expected),
            abs(one_form_contribution(loop, w)),
        )
    tol = CONFIG.tolerances.quadrature
    return CheckReport(
        name="exact_form_identity",
        anchor=EXACT_FORM_ANCHOR,
        cases=paths,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
        details={"t": w},
    )


def descending_sequence_check(terms: int) -> CheckReport:
    """
    y_n = e^-n i is forward Cauchy for delta_1 (every forward distance vanishes)
    while Im -> 0, so (H, delta_1) is not forward complete.
    """
    points = np.exp(-np.arange(terms, dtype=float)) * 1j
    forward = delta_t_array(points[:, None], points[None, :], 1.0)
    upper = np.triu(np.ones((terms, terms), dtype=bool), k=1)
    worst = float(np.max(np.abs(forward[upper]), initial=0.0))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="forward_incompleteness",
        anchor=NON_SEPARATION_ANCHOR,
        cases=int(upper.sum()),
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol and bool(np.all(np.diff(points.imag) < 0))),
        details={"last_im": float(points[-1].imag)},
    )


def closed_form_agreement_check(sampler: PointSampler, pairs: int) -> CheckReport:
    """delta_t at t = 1 against the closed form of the sup metric."""
    x, y = sampler.pairs(pairs)
    worst = float(
        np.max(np.abs(delta_t_array(x, y, 1.0) - delta_closed_array(x, y)), initial=0.0)
    )
    tol = CONFIG.tolerances.quadrature
    return CheckReport(
        name="weight_one_vs_closed_form",
        anchor=INTRODUCED_ANCHOR,
        cases=pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
    )


def finsler_length_check(sampler: PointSampler, t: Weight, paths: int) -> CheckReport:
    """The Finsler length of the hyperbolic geodesic between two points is delta_t."""
    w = as_weight(t)
    z1, z2 = sampler.pairs(paths)
    worst = 0.0
    for a, b in zip(z1, z2):
        p, q = HPoint.from_complex(a), HPoint.from_complex(b)
        length = path_length(GeodesicPath(p, q).sample(2), w)
        worst = max(worst, abs(length - delta_t(p, q, w)))
    tol = CONFIG.tolerances.path_vs_closed
    return CheckReport(
        name="finsler_geodesic_length",
        anchor=FINSLER_ANCHOR,
        cases=paths,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
        details={"t": w},
    )


def c1_path_length_check(sampler: PointSampler, t: Weight, paths: int) -> CheckReport:
    """
    Vertical paths y1 -> y2 with the unevenly paced parameter y1 r^(s^2), r = y2/y1.
    Their length does not depend on the pace: |log r|/2 + (t/2) log r.
    """
    w = as_weight(t)
    z1, z2 = sampler.pairs(paths)
    worst = 0.0
    for a, b in zip(z1, z2):
        x, y1 = a.real, a.imag
        log_r = math.log(b.imag / y1)

        def position(s, x=x, y1=y1, log_r=log_r):
            s = np.asarray(s, dtype=float)
            return x + 1j * y1 * np.exp(log_r * s * s)

        def derivative(s, y1=y1, log_r=log_r):
            s = np.asarray(s, dtype=float)
            return 2j * y1 * log_r * s * np.exp(log_r * s * s)

        sample = PathSample.from_callables(position, derivative, 0.0, 1.0, 9)
        exact = 0.5 * abs(log_r) + 0.5 * w * log_r
        worst = max(worst, abs(path_length(sample, w) - exact))
    tol = CONFIG.tolerances.quadrature
    return CheckReport(
        name="c1_path_length",
        anchor=PATH_LENGTH_ANCHOR,
        cases=paths,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
        details={"t": w},
    )


def weak_distance_check(sampler: PointSampler, paths: int) -> CheckReport:
    """At t = 1 the Finsler length of the hyperbolic geodesic is the closed-form distance."""
    z1, z2 = sampler.pairs(paths)
    worst = 0.0
    for a, b in zip(z1, z2):
        p, q = HPoint.from_complex(a), HPoint.from_complex(b)
        length = path_length(GeodesicPath(p, q).sample(2), 1.0)
        worst = max(worst, abs(length - delta_closed(p, q)))
    tol = CONFIG.tolerances.path_vs_closed
    return CheckReport(
        name="finsler_distance_vs_weak_distance",
        anchor=WEAK_DISTANCE_ANCHOR,
        cases=paths,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
    )


def bounded_ray_check(sampler: PointSampler, rays: int, s_max: float = 15.0) -> CheckReport:
    """
    Rays toward a real point x keep bounded length: delta_1(z, r(s)) tends to
    log(|x - z| / Im z). The ray toward infinity has length 2s instead.
    """
    points = sampler.points(rays)
    lo, hi = CONFIG.sampling.RE_RANGE
    targets = sampler.rng.uniform(lo, hi, rays)
    s = np.linspace(0.0, s_max, 16)
    bounded = divergent = 0.0
    for z, x in zip(points, targets):
        p = HPoint.from_complex(z)
        end = GeodesicRay(p, float(x))(s_max)
        limit = math.log(abs(x - z) / z.imag)
        bounded = max(bounded, abs(float(delta_closed_array(z, end)) - limit))
        upward = GeodesicRay(p, math.inf)(s)
        divergent = max(
            divergent, float(np.max(np.abs(delta_t_array(z, upward, 1.0) - 2.0 * s)))
        )
    tol = CONFIG.tolerances.isometry
    worst = max(bounded, divergent)
    return CheckReport(
        name="bounded_rays_to_real_line",
        anchor=BOUNDED_RAY_ANCHOR,
        cases=2 * rays,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
        details={"s_max": s_max, "bounded": bounded, "divergent": divergent},
    )
