"""
Verification Service
Runs the property suites and aggregates their reports
"""

import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np

from teichranders.config import CONFIG, SuiteSizes
from teichranders.core import halfplane, modelspace, randers, torus, weakmetric
from teichranders.core.errors import UsageError
from teichranders.core.halfplane import HPoint, PointSampler
from teichranders.core.modelspace import default_space, kernel_element
from teichranders.core.randers import RandersForm
from teichranders.schemas.reports import CheckReport, SuiteSummary

logger = logging.getLogger(__name__)

SUITES = ("halfplane", "weakmetric", "torus", "modelspace", "randers")
WEIGHTS = (0.0, 0.5, 1.0)

# every quoted claim a full `verify all` run must exercise
ANCHORS = (
    halfplane.UPPER_HALF_PLANE_ANCHOR,
    halfplane.CURVATURE_ANCHOR,
    halfplane.COINCIDES_ANCHOR,
    halfplane.QUASICONFORMAL_ANCHOR,
    halfplane.GEODESIC_RAY_ANCHOR,
    weakmetric.AXIOMS_ANCHOR,
    weakmetric.SUP_FORM_ANCHOR,
    weakmetric.NON_SEPARATION_ANCHOR,
    weakmetric.EXACT_FORM_ANCHOR,
    weakmetric.MINIMALITY_ANCHOR,
    weakmetric.SYMMETRIZATION_ANCHOR,
    weakmetric.FINSLER_ANCHOR,
    weakmetric.INTRODUCED_ANCHOR,
    weakmetric.PATH_LENGTH_ANCHOR,
    weakmetric.WEAK_DISTANCE_ANCHOR,
    weakmetric.BOUNDED_RAY_ANCHOR,
    torus.ISOMETRY_ANCHOR,
    torus.CHART_ANCHOR,
    torus.CHART_RAY_ANCHOR,
    torus.UNIT_TANGENT_ANCHOR,
    torus.BOUNDED_ANCHOR,
    torus.DECAY_ANCHOR,
    torus.WALSH_ANCHOR,
    torus.GARDINER_ANCHOR,
    torus.KERCKHOFF_ANCHOR,
    torus.INCOMPLETE_ANCHOR,
    torus.OMEGA_ANCHOR,
    torus.UNIQUELY_GEODESIC_ANCHOR,
    torus.EXTREMAL_LENGTH_ANCHOR,
    torus.INTERSECTION_ANCHOR,
    torus.THURSTON_ANCHOR,
    modelspace.L1_ANCHOR,
    modelspace.NORM_ANCHOR,
    modelspace.BELTRAMI_ANCHOR,
    modelspace.PAIRING_ANCHOR,
    modelspace.DUAL_NORM_ANCHOR,
    modelspace.KERNEL_ANCHOR,
    modelspace.DERIVATIVE_ANCHOR,
    randers.RANDERS_ANCHOR,
    randers.ONE_FORM_ANCHOR,
    randers.BETA_ANCHOR,
    randers.INVARIANCE_ANCHOR,
    randers.HAMILTON_ANCHOR,
    randers.EQUIVALENCE_ANCHOR,
    randers.COMETRIC_ANCHOR,
    randers.BOUNDARY_ANCHOR,
    randers.ZERO_FORM_ANCHOR,
)


class VerificationService:
    """Builds every suite from the property checks of the core modules."""

    def __init__(self, sizes: SuiteSizes = CONFIG.suites):
        self.sizes = sizes
        self._runners: Dict[str, Callable[[int, SuiteSizes], List[CheckReport]]] = {
            "halfplane": self.halfplane_checks,
            "weakmetric": self.weakmetric_checks,
            "torus": self.torus_checks,
            "modelspace": self.modelspace_checks,
            "randers": self.randers_checks,
        }

    @staticmethod
    def suite_names() -> tuple:
        return ("all",) + SUITES

    def run(
        self, suite: str, seed: int = 0, sizes: Optional[SuiteSizes] = None
    ) -> SuiteSummary:
        if suite not in self.suite_names():
            raise UsageError(
                f"unknown suite {suite!r}; expected one of {self.suite_names()}"
            )
        sizes = sizes or self.sizes
        names = SUITES if suite == "all" else (suite,)
        checks: List[CheckReport] = []
        for name in names:
            logger.info("running suite %s with seed %d", name, seed)
            reports = self._runners[name](seed, sizes)
            failed = [r.name for r in reports if not r.passed]
            if failed:
                logger.warning("suite %s: failed checks %s", name, ", ".join(failed))
            else:
                logger.info("suite %s: %d checks passed", name, len(reports))
            checks.extend(reports)
        return SuiteSummary.from_checks(suite, seed, checks)

    # =========================================================================
    # Suites
    # =========================================================================

    def halfplane_checks(self, seed: int, sizes: SuiteSizes) -> List[CheckReport]:
        sampler = PointSampler(seed)
        return [
            halfplane.metric_axioms_check(sampler, sizes.TRIPLES),
            halfplane.mobius_invariance_check(sampler, sizes.ISOMETRY_PAIRS),
            halfplane.geodesic_check(sampler, sizes.PATHS),
            halfplane.geodesic_ray_check(sampler, sizes.RAYS),
            halfplane.domain_check(sampler, sizes.ISOMETRY_PAIRS),
        ]

    def weakmetric_checks(self, seed: int, sizes: SuiteSizes) -> List[CheckReport]:
        sampler = PointSampler(seed)
        checks = [weakmetric.sup_closed_check(sampler, sizes.PAIRS)]
        for t in WEIGHTS:
            checks.append(weakmetric.weak_axioms_check(sampler, t, sizes.TRIPLES))
            checks.append(weakmetric.symmetrization_check(sampler, t, sizes.PAIRS))
        checks += [
            weakmetric.non_separation_check(sampler, sizes.PAIRS),
            weakmetric.exact_form_check(sampler, 1.0, sizes.PATHS),
            weakmetric.exact_form_check(sampler, 0.5, sizes.PATHS),
            weakmetric.finsler_length_check(sampler, 0.5, sizes.PATHS),
            weakmetric.closed_form_agreement_check(sampler, sizes.PAIRS),
            weakmetric.weak_distance_check(sampler, sizes.PATHS),
            weakmetric.c1_path_length_check(sampler, 0.5, sizes.PATHS),
            weakmetric.bounded_ray_check(sampler, sizes.RAYS),
            weakmetric.descending_sequence_check(30),
            weakmetric.geodesic_minimality_probe(
                HPoint(0.0, 1.0), HPoint(0.0, 4.0), 1.0, sizes.PERTURBATIONS, seed
            ),
        ]
        z1, z2 = sampler.pairs(3)
        for j, (a, b) in enumerate(zip(z1, z2)):
            checks.append(
                weakmetric.geodesic_minimality_probe(
                    HPoint.from_complex(a),
                    HPoint.from_complex(b),
                    WEIGHTS[j],
                    sizes.PERTURBATIONS,
                    seed + j + 1,
                )
            )
        return checks

    def torus_checks(self, seed: int, sizes: SuiteSizes) -> List[CheckReport]:
        rng = np.random.default_rng(seed)
        checks: List[CheckReport] = []
        for j, f in enumerate(torus.random_foliations(rng, sizes.FOLIATIONS)):
            s = seed + j
            for t in WEIGHTS:
                checks.append(torus.isometry_check(f, t, sizes.ISOMETRY_PAIRS, s))
            checks += [
                torus.chart_identity_check(f, sizes.ISOMETRY_PAIRS, s),
                torus.omega_symmetrization_check(f, 1.0, sizes.ISOMETRY_PAIRS, s),
                torus.kerckhoff_rate_check(f, sizes.PATHS, s),
                torus.separation_check(f, sizes.PATHS, s),
            ]
        checks += [
            torus.reduction_check(sizes.PAIRS, seed),
            torus.intersection_check(sizes.FOLIATIONS, seed),
            torus.omega_form_check(sizes.PATHS, seed),
            torus.boundary_point_check(sizes.FOLIATIONS, seed),
            self._gardiner_sweep(rng, sizes.GARDINER, seed),
            torus.chart_ray_check(sizes.RAYS, seed),
            torus.disc_tangent_check(sizes.FOLIATIONS, seed),
            torus.incompleteness_check(sizes.FOLIATIONS, seed),
        ]
        checks += torus.ray_suite_check(
            sizes.RAYS, sizes.RAY_TMAX, sizes.RAY_SAMPLES, seed
        )
        return checks

    def modelspace_checks(self, seed: int, sizes: SuiteSizes) -> List[CheckReport]:
        space = default_space()
        rng = np.random.default_rng(seed)
        checks = [
            modelspace.l1_norm_check(space, sizes.PATHS, seed),
            modelspace.l1_integral_check(space),
            modelspace.holder_check(space, sizes.PATHS, seed),
            modelspace.beltrami_check(space, sizes.PATHS, seed),
            modelspace.dual_norm_check(space, sizes.DUAL_SAMPLES, seed),
            modelspace.kernel_check(space, sizes.KERNEL_TRIALS, seed),
        ]
        checks += modelspace.dual_norm_properties_check(space, sizes.NORM_TRIALS, seed)
        v0 = space.qd(rng.standard_normal(space.k) + 1j * rng.standard_normal(space.k))
        alpha0 = v0 / modelspace.l1_norm(v0)
        values = rng.standard_normal(space.cells) + 1j * rng.standard_normal(space.cells)
        directions = {
            "teichmuller": modelspace.teichmuller_beltrami(alpha0),
            "kernel": kernel_element(space, seed),
            "random": modelspace.ModelBeltrami(space, values / np.max(np.abs(values))),
        }
        for label, v in directions.items():
            report = modelspace.derivative_check(v0, 0.5, v)
            report.details["direction"] = label
            checks.append(report)
        return checks

    def randers_checks(self, seed: int, sizes: SuiteSizes) -> List[CheckReport]:
        space = default_space()
        rng = np.random.default_rng(seed)

        def random_qd(target_norm: float):
            phi = space.qd(rng.standard_normal(space.k) + 1j * rng.standard_normal(space.k))
            return phi * (target_norm / modelspace.l1_norm(phi))

        phi0 = random_qd(0.4)
        teich = modelspace.teichmuller_beltrami(random_qd(1.0), 0.7)
        kernel = kernel_element(space, seed)
        cases = {
            "teichmuller": teich,
            "kernel": kernel,
            "teichmuller_plus_kernel": teich + kernel * 0.3,
        }
        checks = [
            randers.beta_bound_check(phi0, sizes.NORM_TRIALS, seed),
            randers.beta_invariance_check(teich, phi0, sizes.KERNEL_TRIALS, seed),
            randers.beta_invariance_check(
                teich, phi0, sizes.KERNEL_TRIALS, seed, amplitude=10.0
            ),
            randers.hamilton_check(space, sizes.NORM_TRIALS, seed),
        ]
        for label, mu in cases.items():
            report = randers.extremality_equivalence_check(mu, phi0, seed)
            report.details["case"] = label
            checks.append(report)

        form = RandersForm(random_qd(0.5))
        phi = random_qd(1.0)
        space_1 = default_space(1)
        form_1 = RandersForm(space_1.qd([0.3 + 0.2j]))
        checks += [
            randers.cometric_boundary_check(form, sizes.COMETRIC_SAMPLES, seed),
            randers.cometric_dual_check(phi, form, sizes.DUAL_SAMPLES, seed),
            randers.cometric_dual_check(
                space_1.qd([1.0 - 0.5j]), form_1, sizes.DUAL_SAMPLES, seed
            ),
            randers.cometric_uniqueness_check(phi, form),
            randers.one_dimensional_cometric_check(space_1.normalized()),
            randers.cometric_domain_check(space, seed),
            randers.null_direction_check(space, seed),
            randers.zero_form_cometric_check(space, sizes.NORM_TRIALS, seed),
        ]
        return checks

    # =========================================================================
    # Helpers
    # =========================================================================

    @staticmethod
    def _gardiner_sweep(rng: np.random.Generator, cases: int, seed: int) -> CheckReport:
        """Aggregate Gardiner reports over random points, foliations and directions."""
        sampler = PointSampler(seed)
        worst = 0.0
        passed = True
        foliations = torus.random_foliations(rng, cases)
        for z, f in zip(sampler.points(cases), foliations):
            phase = rng.uniform(0.0, 2.0 * math.pi)
            v = z.imag * complex(math.cos(phase), math.sin(phase))
            report = torus.gardiner_check(HPoint.from_complex(z), f, v)
            worst = max(worst, report.min_rel_error)
            passed = passed and report.passed
        return CheckReport(
            name="gardiner_formula_sweep",
            anchor=torus.GARDINER_ANCHOR,
            cases=cases,
            max_violation=worst,
            tolerance=CONFIG.tolerances.gardiner_rel,
            passed=passed,
            seed=seed,
        )


verification_service = VerificationService()
