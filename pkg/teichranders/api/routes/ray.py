from fastapi import APIRouter, Query

from ...config import CONFIG
from ...core.halfplane import parse_point
from ...core.torus import FoliationVec
from ...schemas.reports import RayReport
from ...services.metric_service import metric_service
from ..errors import to_http_exception

router = APIRouter(tags=["ray"])


@router.get("/ray", response_model=RayReport)
def get_ray(
    base: str = Query(..., examples=["i"]),
    g: str = Query(..., description="Ray foliation as 'a,b'"),
    f: str = Query(..., description="Measuring foliation as 'a,b'"),
    tmax: float = Query(CONFIG.suites.RAY_TMAX),
    samples: int = Query(CONFIG.suites.RAY_SAMPLES),
):
    """
    Randers lengths along the ray from base toward the boundary point of g
    """
    try:
        return metric_service.ray(
            parse_point(base), FoliationVec.parse(g), FoliationVec.parse(f), tmax, samples
        )
    except Exception as e:
        raise to_http_exception(e)
