"""
Upper half-plane with the curvature -4 hyperbolic metric.

All distances are half of the usual Poincaré (curvature -1) values, so that
``hyp_dist`` is literally the Teichmüller distance of the torus model.
Boundary points are plain floats; ``math.inf`` stands for the point at infinity.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from teichranders.config import CONFIG
from teichranders.core.errors import DegeneratePathError, DomainError, UsageError
from teichranders.schemas.reports import CheckReport

logger = logging.getLogger(__name__)

CURVATURE_ANCHOR = "hyperbolic metric on ℍ of constant curvature −4"
COINCIDES_ANCHOR = "the Teichmüller metric coincides with the hyperbolic metric in this setting"
GEODESIC_RAY_ANCHOR = "contitutes a geodesic ray with respect to d_T"
QUASICONFORMAL_ANCHOR = "ranges over all quasi-conformal maps"
UPPER_HALF_PLANE_ANCHOR = "upper-half plane"

ComplexLike = Union[complex, np.ndarray]

_NUMBER = r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?"
_COMPLEX_LITERAL = re.compile(
    rf"^(?P<re>[+-]?{_NUMBER})?(?P<im>[+-]({_NUMBER})?i)?$"
)
_IMAGINARY_LITERAL = re.compile(rf"^(?P<im>[+-]?({_NUMBER})?i)$")


@dataclass(frozen=True, slots=True)
class HPoint:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"point must be finite, got {self.re}+{self.im}i")
        if self.im <= 0:
            raise DomainError(f"point must lie in the upper half-plane, got Im={self.im}")

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(float(z.real), float(z.imag))

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        return format_complex(self.z)


@dataclass(frozen=True, slots=True)
class HTangent:
    base: HPoint
    v: complex


@dataclass(frozen=True)
class Moebius:
    """Real Möbius map tau -> (a*tau + b) / (c*tau + d), stored with ad - bc = 1."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det > 0:
            raise DomainError(f"Möbius map needs ad - bc > 0, got {det}")
        scale = math.sqrt(det)
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) / scale)

    @classmethod
    def identity(cls) -> "Moebius":
        return cls(1.0, 0.0, 0.0, 1.0)

    def inverse(self) -> "Moebius":
        return Moebius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Moebius") -> "Moebius":
        """Return self o other."""
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __call__(self, z: ComplexLike) -> ComplexLike:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_boundary(self, x: float) -> float:
        if math.isinf(x):
            return math.inf if self.c == 0 else self.a / self.c
        denominator = self.c * x + self.d
        if denominator == 0:
            return math.inf
        return (self.a * x + self.b) / denominator

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return self.a, self.b, self.c, self.d


# =============================================================================
# Literals
# =============================================================================


def parse_complex(text: str) -> complex:
    """Parse 'x+yi' style literals: optional real part, optional signed imaginary part."""
    literal = text.strip().replace(" ", "")
    match = _IMAGINARY_LITERAL.match(literal) or _COMPLEX_LITERAL.match(literal)
    if not literal or match is None:
        raise UsageError(f"malformed complex literal: {text!r}")
    groups = match.groupdict()
    real = float(groups["re"]) if groups.get("re") else 0.0
    imag_text = match.group("im")
    if not imag_text:
        return complex(real, 0.0)
    mantissa = imag_text[:-1]
    if mantissa in ("", "+", "-"):
        mantissa += "1"
    return complex(real, float(mantissa))


def parse_point(text: str) -> HPoint:
    return HPoint.from_complex(parse_complex(text))


def parse_boundary(text: str) -> float:
    """Parse a boundary point: a real literal or 'inf'."""
    literal = text.strip().lower()
    if literal in ("inf", "+inf", "∞"):
        return math.inf
    try:
        value = float(literal)
    except ValueError:
        raise UsageError(f"malformed boundary point: {text!r}") from None
    if not math.isfinite(value):
        raise UsageError(f"malformed boundary point: {text!r}")
    return value


def format_complex(z: complex) -> str:
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def format_boundary(x: float) -> str:
    return "inf" if math.isinf(x) else repr(float(x))


# =============================================================================
# Metric
# =============================================================================


def hyp_norm_array(base: ComplexLike, v: ComplexLike) -> ComplexLike:
    return np.abs(v) / (2.0 * np.imag(base))


def hyp_norm(t: HTangent) -> float:
    return abs(t.v) / (2.0 * t.base.im)


def hyp_dist_array(z: ComplexLike, w: ComplexLike) -> ComplexLike:
    # sinh of the curvature -1 half-distance is |z - w| / (2 sqrt(Im z Im w))
    return np.arcsinh(np.abs(z - w) / (2.0 * np.sqrt(np.imag(z) * np.imag(w))))


def hyp_dist(p: HPoint, q: HPoint) -> float:
    return float(hyp_dist_array(p.z, q.z))


def mobius_apply(m: Moebius, p: HPoint) -> HPoint:
    return HPoint.from_complex(m(p.z))


# =============================================================================
# Geodesics
# =============================================================================


def _frame(p: HPoint, theta: float) -> Moebius:
    """Isometry sending i to p, rotated by theta about i; the imaginary axis maps onto the geodesic."""
    c, s = math.cos(theta), math.sin(theta)
    return Moebius(p.im * c + p.re * s, p.re * c - p.im * s, s, c)


class _FramedGeodesic:
    """Unit-speed geodesic s -> frame(i exp(2s)), evaluated without circle centres."""

    frame: Moebius

    def __call__(self, s: ComplexLike) -> ComplexLike:
        return self.frame(1j * np.exp(2.0 * np.asarray(s, dtype=float)))

    def derivative(self, s: ComplexLike) -> ComplexLike:
        w = 1j * np.exp(2.0 * np.asarray(s, dtype=float))
        return 2.0 * w / (self.frame.c * w + self.frame.d) ** 2


class GeodesicPath(_FramedGeodesic):
    """Unit-speed hyperbolic geodesic from p to q, parameter s in [0, length]."""

    def __init__(self, p: HPoint, q: HPoint):
        if p == q:
            raise DegeneratePathError(f"geodesic between equal points {p}")
        self.p = p
        self.q = q
        self.length = hyp_dist(p, q)
        self.vertical = p.re == q.re
        if self.vertical:
            self.center, self.radius = p.re, math.inf
        else:
            self.center = (abs(q.z) ** 2 - abs(p.z) ** 2) / (2.0 * (q.re - p.re))
            self.radius = abs(p.z - self.center)
        q_local = complex((q.re - p.re) / p.im, q.im / p.im)
        disc = (q_local - 1j) / (q_local + 1j)
        self.frame = _frame(p, -0.5 * math.atan2(disc.imag, disc.real))

    def sample(self, n: int):
        from teichranders.core.weakmetric import PathSample

        return PathSample.from_callables(self, self.derivative, 0.0, self.length, n)


class GeodesicRay(_FramedGeodesic):
    """Unit-speed hyperbolic ray from p toward a boundary point x (real or inf)."""

    def __init__(self, p: HPoint, x: float):
        if math.isinf(x) and x < 0:
            raise DomainError("the point at infinity is spelled +inf")
        self.p = p
        self.boundary = x
        self.vertical = math.isinf(x) or x == p.re
        theta = 0.0 if math.isinf(x) else math.atan2(p.im, x - p.re)
        self.frame = _frame(p, theta)


def geodesic(p: HPoint, q: HPoint) -> GeodesicPath:
    return GeodesicPath(p, q)


def geodesic_ray(p: HPoint, x: float) -> GeodesicRay:
    return GeodesicRay(p, x)


# =============================================================================
# Sampling
# =============================================================================


class PointSampler:
    """Seeded source of random half-plane points; one generator per sampler."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def points(self, n: int) -> np.ndarray:
        lo, hi = CONFIG.sampling.RE_RANGE
        ulo, uhi = CONFIG.sampling.LOG_IM_RANGE
        re = self.rng.uniform(lo, hi, n)
        im = np.exp(self.rng.uniform(ulo, uhi, n))
        return re + 1j * im

    def pairs(self, n: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.points(n), self.points(n)

    def triples(self, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.points(n), self.points(n), self.points(n)

    def imaginary_axis(self, n: int) -> np.ndarray:
        ulo, uhi = CONFIG.sampling.LOG_IM_RANGE
        return 1j * np.exp(self.rng.uniform(ulo, uhi, n))


# =============================================================================
# Property checks
# =============================================================================


def _random_isometry(rng: np.random.Generator) -> Tuple[Moebius, ...]:
    """Rotation about i, dilation, translation; applied one after another."""
    theta = rng.uniform(0.0, math.pi)
    k = math.exp(rng.uniform(-2.0, 2.0))
    b = rng.uniform(-5.0, 5.0)
    return (
        Moebius(math.cos(theta), -math.sin(theta), math.sin(theta), math.cos(theta)),
        Moebius(k, 0.0, 0.0, 1.0),
        Moebius(1.0, b, 0.0, 1.0),
    )


def metric_axioms_check(sampler: PointSampler, triples: int) -> CheckReport:
    """hyp_dist vanishes on the diagonal, is symmetric and obeys the triangle inequality."""
    x, y, z = sampler.triples(triples)
    diagonal = float(np.max(np.abs(hyp_dist_array(x, x))))
    symmetry = float(np.max(np.abs(hyp_dist_array(x, y) - hyp_dist_array(y, x))))
    excess = hyp_dist_array(x, z) - hyp_dist_array(x, y) - hyp_dist_array(y, z)
    triangle = float(max(0.0, np.max(excess)))
    worst = max(diagonal, symmetry, triangle)
    tol = CONFIG.tolerances.exact
    return CheckReport(
        name="hyperbolic_metric_axioms",
        anchor=CURVATURE_ANCHOR,
        cases=triples,
        max_violation=worst,
        tolerance=tol,
        passed=bool(diagonal == 0.0 and worst <= tol),
        seed=sampler.seed,
        details={"symmetry": symmetry, "triangle": triangle},
    )


def mobius_invariance_check(sampler: PointSampler, pairs: int) -> CheckReport:
    x, y = sampler.pairs(pairs)
    worst = 0.0
    for a, b in zip(x, y):
        ma, mb = complex(a), complex(b)
        for piece in _random_isometry(sampler.rng):
            ma, mb = piece(ma), piece(mb)
        worst = max(worst, abs(float(hyp_dist_array(ma, mb) - hyp_dist_array(a, b))))
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="mobius_invariance",
        anchor=QUASICONFORMAL_ANCHOR,
        cases=pairs,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
    )


def geodesic_check(sampler: PointSampler, paths: int) -> CheckReport:
    """
    Geodesics hit both endpoints, run at unit hyperbolic speed, and their
    integrated length agrees with hyp_dist.
    """
    from teichranders.core.weakmetric import hyp_path_length

    x, y = sampler.pairs(paths)
    endpoint = speed = length = 0.0
    for a, b in zip(x, y):
        g = GeodesicPath(HPoint.from_complex(a), HPoint.from_complex(b))
        sample = g.sample(33)
        endpoint = max(
            endpoint,
            float(hyp_dist_array(complex(g(0.0)), a)),
            float(hyp_dist_array(complex(g(g.length)), b)),
        )
        norms = hyp_norm_array(sample.points, sample.derivative(sample.grid))
        speed = max(speed, float(np.max(np.abs(norms - 1.0))))
        length = max(length, abs(hyp_path_length(sample) - g.length))
    tol = CONFIG.tolerances
    return CheckReport(
        name="geodesic_paths",
        anchor=COINCIDES_ANCHOR,
        cases=paths,
        max_violation=max(endpoint, speed, length),
        tolerance=tol.isometry,
        passed=bool(
            endpoint <= tol.isometry and speed <= tol.isometry and length <= tol.quadrature
        ),
        seed=sampler.seed,
        details={"endpoint": endpoint, "speed": speed, "length": length},
    )


def geodesic_ray_check(sampler: PointSampler, rays: int, t_max: float = 5.0) -> CheckReport:
    """hyp_dist(p, r(t)) = t along rays toward random boundary points and infinity."""
    points = sampler.points(rays)
    lo, hi = CONFIG.sampling.RE_RANGE
    targets = list(sampler.rng.uniform(lo, hi, rays - 1)) + [math.inf]
    t = np.linspace(0.0, t_max, 11)
    worst = 0.0
    for z, target in zip(points, targets):
        ray = GeodesicRay(HPoint.from_complex(z), float(target))
        worst = max(worst, float(np.max(np.abs(hyp_dist_array(z, ray(t)) - t))))
    tol = CONFIG.tolerances.isometry
    return CheckReport(
        name="geodesic_rays",
        anchor=GEODESIC_RAY_ANCHOR,
        cases=rays,
        max_violation=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        seed=sampler.seed,
        details={"t_max": t_max},
    )


def domain_check(sampler: PointSampler, samples: int) -> CheckReport:
    """Sampled points and their isometric images stay in the half-plane; Im <= 0 is refused."""
    points = sampler.points(samples)
    moved = points.copy()
    for piece in _random_isometry(sampler.rng):
        moved = piece(moved)
    outside = int(np.sum(np.imag(points) <= 0) + np.sum(np.imag(moved) <= 0))
    accepted = 0
    for literal in ("2", "1-0.5i", "-i", "0.3+0i"):
        try:
            parse_point(literal)
            accepted += 1
        except DomainError:
            pass
    return CheckReport(
        name="upper_half_plane",
        anchor=UPPER_HALF_PLANE_ANCHOR,
        cases=2 * samples + 4,
        max_violation=float(outside + accepted),
        tolerance=0.0,
        passed=outside + accepted == 0,
        seed=sampler.seed,
    )
