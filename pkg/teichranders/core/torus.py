"""
Torus Teichmüller space.

Points are marked flat tori tau in the upper half-plane, measured foliations are
nonzero real pairs (a, b) up to sign, and the extremal length of (a, b) at tau is
|a + b tau|^2 / Im tau. The 1-form omega = -(1/2) d log Ext(F) deforms the
Teichmüller metric into a weak one; in the disc chart of F it becomes the
half-plane weak metric.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from teichranders.config import CONFIG
from teichranders.core.errors import (
    AssertionFailure,
    DegeneratePathError,
    DomainError,
    UsageError,
)
from teichranders.core.halfplane import (
    ComplexLike,
    GeodesicRay,
    HPoint,
    Moebius,
    PointSampler,
    format_boundary,
    hyp_dist,
    hyp_dist_array,
    hyp_norm_array,
)
from teichranders.core.verdicts import RayVerdict
from teichranders.core.weakmetric import (
    SYMMETRIZATION_ANCHOR,
    Weight,
    as_weight,
    delta_t_array,
)
from teichranders.schemas.reports import (
    CheckReport,
    GardinerReport,
    IncompletenessReport,
    RayReport,
)

logger = logging.getLogger(__name__)

ISOMETRY_ANCHOR = "coincides with the image of an isometric embedding"
CHART_ANCHOR = "The extremal length function satisfies"
BOUNDED_ANCHOR = "has bounded length with respect to"
DECAY_ANCHOR = "is non-increasing and tends to"
WALSH_ANCHOR = "the limit function E is expressed"
GARDINER_ANCHOR = "called the Gardiner formula"
KERCKHOFF_ANCHOR = "from the Kerckhoff formula, we have"
INCOMPLETE_ANCHOR = "every Teichmüller disc is incomplete"
OMEGA_ANCHOR = "ω = −(1/2) d log Ext_{(·)}(F)"
UNIQUELY_GEODESIC_ANCHOR = "uniquely geodesic space such that"
EXTREMAL_LENGTH_ANCHOR = "called the extremal length"
INTERSECTION_ANCHOR = "which satisfies i(F,G)=i(G,F)"
THURSTON_ANCHOR = "naturally thought of as the Thurston boundary"
CHART_RAY_ANCHOR = (
    "Teichmüller geodesic ray defined by q_{G,x} with arclength parameterisation"
)
UNIT_TANGENT_ANCHOR = "the unit tangent vector v_λ"


@dataclass(frozen=True, slots=True)
class FoliationVec:
    """Measured foliation (a, b), stored with its first nonzero coordinate positive."""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"foliation must be finite, got ({self.a}, {self.b})")
        if self.a == 0 and self.b == 0:
            raise DomainError("foliation vector must be nonzero")
        sign = -1.0 if self.a < 0 or (self.a == 0 and self.b < 0) else 1.0
        # adding 0.0 turns -0.0 into 0.0
        object.__setattr__(self, "a", sign * self.a + 0.0)
        object.__setattr__(self, "b", sign * self.b + 0.0)

    @classmethod
    def parse(cls, text: str) -> "FoliationVec":
        parts = text.split(",")
        if len(parts) != 2:
            raise UsageError(f"foliation must be 'a,b', got {text!r}")
        try:
            a, b = (float(part) for part in parts)
        except ValueError:
            raise UsageError(f"malformed foliation: {text!r}") from None
        return cls(a, b)

    def as_list(self) -> List[float]:
        return [self.a, self.b]

    def __str__(self) -> str:
        return f"{self.a!r},{self.b!r}"


def intersection(f: FoliationVec, g: FoliationVec) -> float:
    return abs(f.a * g.b - f.b * g.a)


def extremal_length_array(tau: ComplexLike, f: FoliationVec) -> ComplexLike:
    return np.abs(f.a + f.b * tau) ** 2 / np.imag(tau)


def extremal_length(tau: HPoint, f: FoliationVec) -> float:
    return abs(f.a + f.b * tau.z) ** 2 / tau.im


def boundary_point(f: FoliationVec) -> float:
    """Point of the real line (or inf) toward which Ext(F) shrinks to zero."""
    if f.b == 0:
        return math.inf
    return -f.a / f.b + 0.0


def omega_form_array(tau: ComplexLike, v: ComplexLike, f: FoliationVec) -> ComplexLike:
    return -np.real(f.b * v / (f.a + f.b * tau)) + np.imag(v) / (2.0 * np.imag(tau))


def omega_form(tau: HPoint, v: complex, f: FoliationVec) -> float:
    return float(omega_form_array(tau.z, v, f))


def delta_omega_array(
    tau1: ComplexLike, tau2: ComplexLike, f: FoliationVec, t: float
) -> ComplexLike:
    return hyp_dist_array(tau1, tau2) + 0.5 * t * (
        np.log(extremal_length_array(tau1, f)) - np.log(extremal_length_array(tau2, f))
    )


def delta_omega(tau1: HPoint, tau2: HPoint, f: FoliationVec, t: Weight) -> float:
    w = as_weight(t)
    return hyp_dist(tau1, tau2) + 0.5 * w * (
        math.log(extremal_length(tau1, f)) - math.log(extremal_length(tau2, f))
    )


# =============================================================================
# Disc chart
# =============================================================================


def disc_chart(f: FoliationVec) -> Moebius:
    """lambda = (p tau + r) / (b tau + a) with Ext(tau, F) * Im(lambda) = 1."""
    norm2 = f.a * f.a + f.b * f.b
    return Moebius(f.a / norm2, -f.b / norm2, f.b, f.a)


def transport_foliation(f: FoliationVec, m: Moebius) -> FoliationVec:
    """Foliation F' with Ext(m(tau), F') = Ext(tau, F) for every tau."""
    alpha, beta, gamma, delta = m.as_tuple()
    return FoliationVec(alpha * f.a - beta * f.b, delta * f.b - gamma * f.a)


def _chart_inverse(m: Moebius, lam: ComplexLike) -> ComplexLike:
    """m^-1(lam) with Im taken from Im(lam)/|c' lam + d'|^2 to avoid cancellation."""
    inv = m.inverse()
    denominator = inv.c * lam + inv.d
    re = np.real(inv(lam))
    return re + 1j * np.imag(lam) / np.abs(denominator) ** 2


def disc_tangent(tau: HPoint, f: FoliationVec) -> complex:
    """Unit vector at tau along which Ext(F) shrinks fastest; omega of it is +1."""
    m = disc_chart(f)
    lam = m(tau.z)
    inv = m.inverse()
    return complex(2j * lam.imag / (inv.c * lam + inv.d) ** 2)


def omega_norm(tau: HPoint, f: FoliationVec, t: Weight) -> float:
    """Hyperbolic dual norm of t * omega at tau."""
    w = as_weight(t)
    covector = -f.b / (f.a + f.b * tau.z) - 0.5j / tau.im
    return w * 2.0 * tau.im * abs(covector)


# =============================================================================
# Sampling
# =============================================================================


def random_foliations(rng: np.random.Generator, n: int) -> List[FoliationVec]:
    lo, hi = CONFIG.sampling.FOLIATION_RANGE
    floor = CONFIG.sampling.MIN_FOLIATION_NORM
    out: List[FoliationVec] = []
    while len(out) < n:
        a, b = rng.uniform(lo, hi, 2)
        if math.hypot(a, b) >= floor:
            out.append(FoliationVec(float(a), float(b)))
    return out


def random_transverse_pair(rng: np.random.Generator) -> Tuple[FoliationVec, FoliationVec]:
    """Two foliations whose angle has |sin| at least MIN_CROSS_RATIO."""
    while True:
        f, g = random_foliations(rng, 2)
        if intersection(f, g) >= CONFIG.sampling.MIN_CROSS_RATIO * math.hypot(
            f.a, f.b
        ) * math.hypot(g.a, g.b):
            return f, g


def transverse_to(f: FoliationVec) -> FoliationVec:
    """A foliation G with i(F, G) > 0 and a finite boundary point."""
    g = FoliationVec(-f.b, f.a)
    return g if g.b != 0 else FoliationVec(1.0, 1.0)


# =============================================================================
# Rays
# =============================================================================


def chart_foliation(g: FoliationVec, f: FoliationVec) -> FoliationVec:
    """
    F transported into the disc chart of G, built from the vectors themselves.

    b' is the cross product of G and F, so it vanishes exactly when F = G and
    the ray toward boundary_point(G) keeps its slope 2.
    """
    norm2 = g.a * g.a + g.b * g.b
    a = (g.a * f.a + g.b * f.b) / norm2
    b = g.a * f.b - g.b * f.a
    # below the rounding of the cross product the two foliations are parallel
    if abs(b) <= 4.0 * np.finfo(float).eps * math.hypot(g.a, g.b) * math.hypot(f.a, f.b):
        b = 0.0
    return FoliationVec(a, b)


@dataclass(frozen=True)
class _ChartRay:
    """Unit-speed ray from x toward boundary_point(G), evaluated in the chart of G."""

    x: HPoint
    g: FoliationVec
    chart: Moebius
    lam0: complex

    @classmethod
    def build(cls, x: HPoint, g: FoliationVec) -> "_ChartRay":
        chart = disc_chart(g)
        return cls(x, g, chart, complex(chart(x.z)))

    def chart_points(self, t: np.ndarray) -> np.ndarray:
        return self.lam0.real + 1j * self.lam0.imag * np.exp(2.0 * np.asarray(t))

    def points(self, t: np.ndarray) -> np.ndarray:
        return _chart_inverse(self.chart, self.chart_points(t))

    def log_extremal_length(self, f: FoliationVec, t: np.ndarray) -> np.ndarray:
        """log Ext(r(t), F) without forming lambda, so long rays stay finite."""
        t = np.asarray(t, dtype=float)
        f_chart = chart_foliation(self.g, f)
        log_im = math.log(self.lam0.imag) + 2.0 * t
        # |a' + b' lam| with lam = Re lam0 + i Im lam0 e^{2t}
        u = abs(f_chart.a + f_chart.b * self.lam0.real)
        v = abs(f_chart.b) * self.lam0.imag
        log_u = math.log(u) if u > 0 else -math.inf
        if v == 0:
            log_modulus = np.full_like(t, log_u)
        else:
            log_modulus = 0.5 * np.logaddexp(2.0 * log_u, 2.0 * (math.log(v) + 2.0 * t))
        return 2.0 * log_modulus - log_im

    def delta_from_base(self, f: FoliationVec, t: np.ndarray) -> np.ndarray:
        """delta_omega(x, r(t), F, 1); the hyperbolic part of a unit-speed ray is t."""
        t = np.asarray(t, dtype=float)
        return t + 0.5 * (
            math.log(extremal_length(self.x, f)) - self.log_extremal_length(f, t)
        )


def _classify(t_grid: np.ndarray, values: np.ndarray) -> RayVerdict:
    tol = CONFIG.tolerances
    tail = slice(min(len(t_grid) // 2, len(t_grid) - 2), None)
    slope = np.polyfit(t_grid[tail], values[tail], 1)[0]
    if slope > tol.ray_slope:
        return RayVerdict.DIVERGENT
    spread = float(np.ptp(values[tail]))
    if spread >= tol.ray_oscillation:
        logger.debug("ray tail still moves by %.3g; verdict from slope %.3g", spread, slope)
    return RayVerdict.BOUNDED


def ray_profile(
    x: HPoint, g: FoliationVec, f: FoliationVec, t_max: float, samples: int
) -> RayReport:
    """delta_omega lengths (t = 1) along the unit ray from x toward boundary_point(G)."""
    if samples < 2:
        raise UsageError(f"ray profile needs at least 2 samples, got {samples}")
    if not (math.isfinite(t_max) and t_max > 0):
        raise DomainError(f"t_max must be positive, got {t_max}")

    ray = _ChartRay.build(x, g)
    t_grid = np.linspace(0.0, t_max, samples)
    values = ray.delta_from_base(f, t_grid)
    decay = np.exp(-values)
    with np.errstate(over="ignore", invalid="ignore"):
        im_values = np.imag(ray.points(t_grid))
    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(im_values))):
        raise DomainError(
            f"ray from {x} leaves the floating-point range before t_max={t_max}"
        )
    verdict = _classify(t_grid, values)
    walsh = intersection(g, f) / math.sqrt(extremal_length(x, g))
    limit = float(decay[-1]) * math.sqrt(extremal_length(x, f))
    logger.debug(
        "ray %s -> %s: verdict %s, limit %.6g, walsh %.6g",
        x,
        format_boundary(boundary_point(g)),
        verdict.value,
        limit,
        walsh,
    )
    try:
        return RayReport(
            base=str(x),
            g=g.as_list(),
            f=f.as_list(),
            boundary=format_boundary(boundary_point(g)),
            t_grid=t_grid.tolist(),
            delta_values=values.tolist(),
            decay_values=decay.tolist(),
            im_values=im_values.tolist(),
            verdict=verdict,
            limit_estimate=limit,
            walsh_value=walsh,
            intersection=intersection(g, f),
        )
    except ValidationError as e:
        raise AssertionFailure(f"ray profile from {x}: {e.errors()[0]['msg']}") from e


def incompleteness_witness(
    x: HPoint,
    f: FoliationVec,
    g: Optional[FoliationVec] = None,
    terms: int = 30,
    step: float = 1.0,
) -> IncompletenessReport:
    """
    Points x_n = r(n * step) on a ray toward boundary_point(G), i(F, G) != 0.
    The sequence is forward Cauchy for delta_omega yet runs off to the boundary.
    """
    g = g or transverse_to(f)
    if intersection(f, g) == 0:
        raise DomainError("witness ray needs i(F, G) != 0")
    if math.isinf(boundary_point(g)):
        raise DomainError("witness ray must end at a real boundary point")
    if terms < 2:
        raise DegeneratePathError(f"witness needs at least 2 terms, got {terms}")

    ray = _ChartRay.build(x, g)
    t_n = step * np.arange(terms, dtype=float)
    from_base = ray.delta_from_base(f, t_n)
    # along one geodesic the hyperbolic part is additive and the 1-form part telescopes
    forward = from_base[None, :] - from_base[:, None]
    successive = np.diff(from_base)
    upper = np.triu(np.ones((terms, terms), dtype=bool), k=1)
    tail = np.zeros_like(upper)
    tail[terms // 2 :, terms // 2 :] = True
    tail_bound = float(np.max(np.abs(forward[upper & tail]), initial=0.0))

    points = ray.points(t_n)
    im_values = np.imag(points)
    half = im_values[terms // 2 :]
    leaves = bool(
        np.all(np.diff(half) < 0) and half[-1] < x.im * math.exp(-t_n[-1])
    )
    return IncompletenessReport(
        base=str(x),
        f=f.as_list(),
        g=g.as_list(),
        points=[str(HPoint.from_complex(z)) for z in points],
        im_values=im_values.tolist(),
        successive_deltas=successive.tolist(),
        tail_bound=tail_bound,
        forward_cauchy=bool(tail_bound <= CONFIG.tolerances.isometry),
        leaves_compacta=leaves,
    )


# =============================================================================
# Property checks
# =============================================================================


def isometry_check(f: FoliationVec, t: Weight, pairs: int, seed: int = 0) -> CheckReport:
    """delta_omega(tau1, tau2) against delta_t of the chart images."""
    w = as_weight(t)
    sampler = PointSampler(seed)
    tau1, tau2 = sampler.pairs(pairs)
    chart = disc_chart(f)
    lhs = delta_omega_array(tau1, tau2, f, w)
    rhs = delta_t_array(chart(tau1), chart(tau2), w)
    worst = float(np.max(np.abs(lhs - rhs), initial=0.0))
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="disc_isometry",
        anchor=ISOMETRY_ANCHOR,
        cases=pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
        details={"f": f.as_list(), "t": w},
    )


def chart_identity_check(f: FoliationVec, samples: int, seed: int = 0) -> CheckReport:
    sampler = PointSampler(seed)
    tau = sampler.points(samples)
    chart = disc_chart(f)
    worst = float(
        np.max(np.abs(extremal_length_array(tau, f) * np.imag(chart(tau)) - 1.0))
    )
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="disc_chart_identity",
        anchor=CHART_ANCHOR,
        cases=samples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
        details={"f": f.as_list()},
    )


def omega_symmetrization_check(
    f: FoliationVec, t: Weight, pairs: int, seed: int = 0
) -> CheckReport:
    w = as_weight(t)
    sampler = PointSampler(seed)
    x, y = sampler.pairs(pairs)
    total = delta_omega_array(x, y, f, w) + delta_omega_array(y, x, f, w)
    worst = float(np.max(np.abs(total - 2.0 * hyp_dist_array(x, y))))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="omega_symmetrization",
        anchor=SYMMETRIZATION_ANCHOR,
        cases=pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
        details={"f": f.as_list(), "t": w},
    )


def reduction_check(pairs: int, seed: int = 0) -> CheckReport:
    """With F = (1, 0) delta_omega is the half-plane delta_t."""
    sampler = PointSampler(seed)
    x, y = sampler.pairs(pairs)
    f = FoliationVec(1.0, 0.0)
    worst = 0.0
    for w in (0.0, 0.5, 1.0):
        diff = delta_omega_array(x, y, f, w) - delta_t_array(x, y, w)
        worst = max(worst, float(np.max(np.abs(diff))))
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="horizontal_foliation_reduction",
        anchor=EXTREMAL_LENGTH_ANCHOR,
        cases=3 * pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
    )


def intersection_check(foliations: int, seed: int = 0) -> CheckReport:
    """Symmetric, and zero exactly on parallel pairs."""
    rng = np.random.default_rng(seed)
    fs = random_foliations(rng, foliations)
    worst = 0.0
    parallel_ok = True
    for f in fs:
        for g in fs:
            worst = max(worst, abs(intersection(f, g) - intersection(g, f)))
        scaled = FoliationVec(-2.0 * f.a, -2.0 * f.b)
        parallel_ok = parallel_ok and intersection(f, scaled) == 0.0
    distinct_ok = all(
        intersection(f, g) > 0 for i, f in enumerate(fs) for g in fs[i + 1 :]
    )
    return CheckReport(
        name="intersection_number",
        anchor=INTERSECTION_ANCHOR,
        cases=len(fs) ** 2,
        max_violation=worst,
        tolerance=CONFIG.tolerances.exact,
        passed=bool(worst == 0.0 and parallel_ok and distinct_ok),
        seed=seed,
    )


def omega_form_check(samples: int, seed: int = 0) -> CheckReport:
    """Analytic omega against central differences of -(1/2) log Ext."""
    rng = np.random.default_rng(seed)
    sampler = PointSampler(seed)
    tau = sampler.points(samples)
    fs = random_foliations(rng, samples)
    h = 1e-5
    worst = 0.0
    for z, f in zip(tau, fs):
        phase = rng.uniform(0.0, 2.0 * math.pi)
        v = z.imag * complex(math.cos(phase), math.sin(phase))
        fd = -0.25 * (
            math.log(extremal_length_array(z + h * v, f))
            - math.log(extremal_length_array(z - h * v, f))
        ) / h
        worst = max(worst, abs(fd - float(omega_form_array(z, v, f))))
    tol = CONFIG.tolerances.kerckhoff
    return CheckReport(
        name="omega_form_differential",
        anchor=OMEGA_ANCHOR,
        cases=samples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
    )


def gardiner_check(tau: HPoint, f: FoliationVec, v: complex) -> GardinerReport:
    """Analytic dExt(F)[v] against a sweep of central differences."""
    if v == 0:
        raise DomainError("direction v must be nonzero")
    tol = CONFIG.tolerances
    ext = extremal_length(tau, f)
    analytic = -2.0 * ext * omega_form(tau, v, f)
    limit = 0.5 * tau.im / abs(v)

    finite: dict = {}
    errors = []
    for h in tol.fd_steps:
        if h >= limit:
            continue
        plus = extremal_length(HPoint.from_complex(tau.z + h * v), f)
        minus = extremal_length(HPoint.from_complex(tau.z - h * v), f)
        fd = (plus - minus) / (2.0 * h)
        finite[repr(h)] = fd
        gap = abs(fd - analytic)
        errors.append(gap / abs(analytic) if abs(analytic) > tol.zero_floor else gap)
    if not errors:
        raise DomainError(f"direction {v} too long for finite differences at {tau}")
    best = min(errors)
    return GardinerReport(
        name="gardiner_formula",
        anchor=GARDINER_ANCHOR,
        cases=len(errors),
        max_violation=best,
        tolerance=tol.gardiner_rel,
        passed=bool(best <= tol.gardiner_rel),
        analytic=analytic,
        finite_differences=finite,
        min_rel_error=best,
        details={"tau": str(tau), "f": f.as_list(), "d_log_ext": analytic / ext},
    )


def boundary_point_check(foliations: int, seed: int = 0) -> CheckReport:
    """
    Ext(F) decays like exp(-2t) along rays toward boundary_point(F) and grows
    without bound toward the boundary point of a transverse foliation.
    """
    rng = np.random.default_rng(seed)
    sampler = PointSampler(seed)
    t = np.linspace(0.0, 5.0, 11)
    worst = 0.0
    grows = True
    for z, f in zip(sampler.points(foliations), random_foliations(rng, foliations)):
        x = HPoint.from_complex(z)
        base = math.log(extremal_length(x, f))
        toward = np.log(extremal_length_array(GeodesicRay(x, boundary_point(f))(t), f))
        worst = max(worst, float(np.max(np.abs(toward - base + 2.0 * t))))
        away_ray = GeodesicRay(x, boundary_point(transverse_to(f)))
        away = extremal_length_array(away_ray(np.array([0.0, 15.0])), f)
        grows = grows and float(away[-1]) > float(away[0])
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="foliation_boundary_point",
        anchor=THURSTON_ANCHOR,
        cases=foliations,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol and grows),
        seed=seed,
    )


def kerckhoff_rate_check(f: FoliationVec, samples: int, seed: int = 0) -> CheckReport:
    """d log Ext(F)/dt = -2 along unit rays toward boundary_point(F)."""
    sampler = PointSampler(seed)
    x = boundary_point(f)
    h = 1e-4
    worst = 0.0
    for z in sampler.points(samples):
        tau = HPoint.from_complex(z)
        ray = GeodesicRay(tau, x)
        fd = (
            math.log(extremal_length_array(ray(h), f))
            - math.log(extremal_length_array(ray(-h), f))
        ) / (2.0 * h)
        analytic = -2.0 * omega_form(tau, complex(ray.derivative(0.0)), f)
        tangent = -2.0 * omega_form(tau, disc_tangent(tau, f), f)
        worst = max(worst, abs(fd + 2.0), abs(analytic + 2.0), abs(tangent + 2.0))
    tol = CONFIG.tolerances.kerckhoff
    return CheckReport(
        name="kerckhoff_rate",
        anchor=KERCKHOFF_ANCHOR,
        cases=samples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
        details={"f": f.as_list(), "boundary": format_boundary(x)},
    )


def separation_check(f: FoliationVec, pairs: int, seed: int = 0) -> CheckReport:
    """
    delta_omega is positive on generic distinct pairs and vanishes when the first
    point lies on the F-shrinking ray issued from the second.
    """
    sampler = PointSampler(seed)
    rng = sampler.rng
    x, y = sampler.pairs(pairs)
    generic = delta_omega_array(x, y, f, 1.0)
    zero_cases = int(np.sum(generic <= 0.0))

    target = boundary_point(f)
    worst = 0.0
    for z in y:
        start = HPoint.from_complex(z)
        s = rng.uniform(0.1, 3.0)
        ahead = HPoint.from_complex(complex(GeodesicRay(start, target)(s)))
        worst = max(worst, abs(delta_omega(ahead, start, f, 1.0)))
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="omega_separation",
        anchor=UNIQUELY_GEODESIC_ANCHOR,
        cases=2 * pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol and zero_cases == 0),
        seed=seed,
        notes=["moving away from boundary_point(F) is free"],
        details={"f": f.as_list(), "generic_zero_cases": zero_cases},
    )


def ray_suite_check(
    rays: int, t_max: float, samples: int, seed: int = 0
) -> List[CheckReport]:
    """Verdicts, decay monotonicity and the Walsh limit over random transverse rays."""
    rng = np.random.default_rng(seed)
    sampler = PointSampler(seed)
    tol = CONFIG.tolerances
    walsh = drift = rise = 0.0
    verdicts_ok = True
    for z in sampler.points(rays):
        x = HPoint.from_complex(z)
        f, g = random_transverse_pair(rng)
        report = ray_profile(x, g, f, t_max, samples)
        verdicts_ok = verdicts_ok and report.verdict is RayVerdict.BOUNDED
        walsh = max(walsh, abs(report.limit_estimate / report.walsh_value - 1.0))
        rise = max(rise, float(np.max(np.diff(report.decay_values), initial=0.0)))

        parallel = ray_profile(x, f, f, t_max, samples)
        verdicts_ok = verdicts_ok and parallel.verdict is RayVerdict.DIVERGENT
        slope_two = np.array(parallel.delta_values) - 2.0 * np.array(parallel.t_grid)
        drift = max(drift, float(np.max(np.abs(slope_two))))
    details = {"t_max": t_max, "samples": samples}
    return [
        CheckReport(
            name="ray_boundedness",
            anchor=BOUNDED_ANCHOR,
            cases=2 * rays,
            max_violation=drift,
            tolerance=tol.isometry,
            passed=bool(verdicts_ok and drift <= tol.isometry),
            seed=seed,
            notes=["parallel rays: delta_omega = 2t"],
            details=details,
        ),
        CheckReport(
            name="ray_decay_monotone",
            anchor=DECAY_ANCHOR,
            cases=rays,
            max_violation=rise,
            tolerance=tol.ray_monotone,
            passed=bool(rise <= tol.ray_monotone),
            seed=seed,
            details=details,
        ),
        CheckReport(
            name="ray_walsh_limit",
            anchor=WALSH_ANCHOR,
            cases=rays,
            max_violation=walsh,
            tolerance=tol.walsh_rel,
            passed=bool(walsh <= tol.walsh_rel),
            seed=seed,
            details=details,
        ),
    ]


def chart_ray_check(rays: int, seed: int = 0, t_max: float = 5.0) -> CheckReport:
    """
    The chart ray toward boundary_point(G) is the hyperbolic ray from x at unit
    speed: it matches geodesic_ray pointwise and hyp_dist(x, r(t)) = t.
    """
    rng = np.random.default_rng(seed)
    sampler = PointSampler(seed)
    t = np.linspace(0.0, t_max, 11)
    worst = 0.0
    for z, g in zip(sampler.points(rays), random_foliations(rng, rays)):
        x = HPoint.from_complex(z)
        chart_points = _ChartRay.build(x, g).points(t)
        reference = GeodesicRay(x, boundary_point(g))(t)
        worst = max(
            worst,
            float(np.max(hyp_dist_array(chart_points, reference))),
            float(np.max(np.abs(hyp_dist_array(z, chart_points) - t))),
        )
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="chart_ray_arclength",
        anchor=CHART_RAY_ANCHOR,
        cases=rays,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
        details={"t_max": t_max},
    )


def disc_tangent_check(foliations: int, seed: int = 0) -> CheckReport:
    """The disc tangent has unit hyperbolic length and omega(v) = 1."""
    rng = np.random.default_rng(seed)
    sampler = PointSampler(seed)
    worst = 0.0
    for z, f in zip(sampler.points(foliations), random_foliations(rng, foliations)):
        tau = HPoint.from_complex(z)
        v = disc_tangent(tau, f)
        worst = max(
            worst,
            abs(float(hyp_norm_array(z, v)) - 1.0),
            abs(omega_form(tau, v, f) - 1.0),
        )
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="disc_unit_tangent",
        anchor=UNIT_TANGENT_ANCHOR,
        cases=foliations,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=seed,
    )


def incompleteness_check(foliations: int, seed: int = 0) -> CheckReport:
    rng = np.random.default_rng(seed)
    sampler = PointSampler(seed)
    worst = 0.0
    ok = True
    for z, f in zip(sampler.points(foliations), random_foliations(rng, foliations)):
        report = incompleteness_witness(HPoint.from_complex(z), f)
        worst = max(worst, report.tail_bound)
        ok = ok and report.forward_cauchy and report.leaves_compacta
    return CheckReport(
        name="disc_incompleteness",
        anchor=INCOMPLETE_ANCHOR,
        cases=foliations,
        max_violation=worst,
        tolerance=CONFIG.tolerances.isometry,
        passed=ok,
        seed=seed,
    )
