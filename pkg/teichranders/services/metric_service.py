"""
Metric Service
Single-shot computations behind the `dist`, `geodesic`, `ray` and `cometric`
commands and their HTTP routes
"""

import logging
from typing import Optional, Sequence

from teichranders.config import CONFIG
from teichranders.core.errors import UsageError
from teichranders.core.halfplane import HPoint, geodesic, hyp_dist
from teichranders.core.modelspace import ModelSpace, l1_norm
from teichranders.core.randers import (
    RandersForm,
    boundary_residual,
    cometric,
    cometric_dual_estimate,
)
from teichranders.core.torus import FoliationVec, delta_omega, ray_profile
from teichranders.core.weakmetric import as_weight, delta_t
from teichranders.schemas.reports import (
    CometricRecord,
    DistRecord,
    GeodesicRecord,
    RayReport,
)

logger = logging.getLogger(__name__)


class MetricService:
    def distance(
        self,
        z1: HPoint,
        z2: HPoint,
        t: float,
        foliation: Optional[FoliationVec] = None,
    ) -> DistRecord:
        w = as_weight(t)
        return DistRecord(
            from_point=str(z1),
            to_point=str(z2),
            t=w,
            foliation=foliation.as_list() if foliation else None,
            d_teich=hyp_dist(z1, z2),
            delta_t=delta_t(z1, z2, w),
            delta_omega=delta_omega(z1, z2, foliation, w) if foliation else None,
        )

    def geodesic(self, z1: HPoint, z2: HPoint, samples: int) -> GeodesicRecord:
        path = geodesic(z1, z2)
        return GeodesicRecord(
            from_point=str(z1),
            to_point=str(z2),
            length=path.length,
            points=path.sample(samples).rows(),
        )

    def ray(
        self,
        base: HPoint,
        g: FoliationVec,
        f: FoliationVec,
        t_max: float,
        samples: int,
    ) -> RayReport:
        report = ray_profile(base, g, f, t_max, samples)
        logger.info(
            "ray from %s toward %s: %s", base, report.boundary, report.verdict.value
        )
        return report

    def cometric(
        self,
        space: ModelSpace,
        phi: Sequence[complex],
        psi: Sequence[complex],
        check_dual: bool = False,
        samples: int = CONFIG.suites.DUAL_SAMPLES,
        seed: int = 0,
    ) -> CometricRecord:
        if check_dual and samples < 1:
            raise UsageError(f"dual check needs at least 1 sample, got {samples}")
        phi_qd = space.qd(phi)
        form = RandersForm(space.qd(psi))
        g = cometric(phi_qd, form)
        record = CometricRecord(
            g_omega=g, boundary_residual=boundary_residual(phi_qd, form, g)
        )
        if check_dual:
            estimate = cometric_dual_estimate(phi_qd, form, samples, seed)
            record.dual_estimate = estimate
            record.rel_err = abs(estimate - g) / g if g > 0 else abs(estimate)
        logger.info(
            "cometric %.17g for ||phi||_1 = %.6g, ||psi||_1 = %.6g",
            g,
            l1_norm(phi_qd),
            form.psi_norm,
        )
        return record


metric_service = MetricService()
