from fastapi import APIRouter

from ...core.modelspace import ModelSpace, default_space
from ...models.requests import CometricRequest
from ...schemas.reports import CometricRecord
from ...services.metric_service import metric_service
from ...services.space_file_service import space_file_service
from ..errors import to_http_exception

router = APIRouter(tags=["cometric"])


@router.post("/cometric", response_model=CometricRecord)
def post_cometric(request: CometricRequest):
    """
    Randers cometric of phi for the 1-form psi, optionally checked against a dual estimate
    """
    try:
        space = (
            ModelSpace.from_description(request.space)
            if request.space
            else default_space()
        )
        phi = space_file_service.parse_coefficients(request.phi, space.k)
        psi = space_file_service.parse_coefficients(request.psi, space.k)
        return metric_service.cometric(
            space, phi, psi, request.check_dual, request.samples, request.seed
        )
    except Exception as e:
        raise to_http_exception(e)
