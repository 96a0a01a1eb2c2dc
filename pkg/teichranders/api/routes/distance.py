"""
Distance API Routes
Teichmüller distance, weighted weak metric and its torus deformation between two points
"""

from typing import Optional

from fastapi import APIRouter, Query

from ...core.halfplane import parse_point
from ...core.torus import FoliationVec
from ...schemas.reports import DistRecord, GeodesicRecord
from ...services.metric_service import metric_service
from ..errors import to_http_exception

router = APIRouter(tags=["distance"])


@router.get("/distance", response_model=DistRecord)
def get_distance(
    from_: str = Query(..., alias="from", examples=["i"]),
    to: str = Query(..., examples=["2i"]),
    t: float = Query(1.0),
    f: Optional[str] = Query(None, description="Foliation as 'a,b'"),
):
    """
    d_teich, delta_t and, when a foliation is given, delta_omega
    """
    try:
        foliation = FoliationVec.parse(f) if f else None
        return metric_service.distance(parse_point(from_), parse_point(to), t, foliation)
    except Exception as e:
        raise to_http_exception(e)


@router.get("/geodesic", response_model=GeodesicRecord)
def get_geodesic(
    from_: str = Query(..., alias="from"),
    to: str = Query(...),
    samples: int = Query(33),
):
    try:
        return metric_service.geodesic(parse_point(from_), parse_point(to), samples)
    except Exception as e:
        raise to_http_exception(e)
