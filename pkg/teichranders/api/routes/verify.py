import logging
from typing import Optional

from fastapi import APIRouter, Query

from ...config import RunSettings
from ...schemas.reports import SuiteSummary
from ...services.verification_service import verification_service
from ..errors import to_http_exception

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/verify", tags=["verify"])


@router.get("/suites")
async def get_suites():
    return {"suites": list(verification_service.suite_names())}


@router.post("/{suite}", response_model=SuiteSummary)
def run_suite(suite: str, seed: Optional[int] = Query(None)):
    """
    Run a property suite; the summary is returned whether or not it passed
    """
    try:
        seed = RunSettings().seed if seed is None else seed
        summary = verification_service.run(suite, seed)
    except Exception as e:
        raise to_http_exception(e)
    if not summary.passed:
        logger.warning("suite %s failed with seed %d", suite, seed)
    return summary
