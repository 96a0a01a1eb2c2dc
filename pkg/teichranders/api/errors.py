from fastapi import HTTPException

from teichranders.core.errors import (
    AssertionFailure,
    DegeneratePathError,
    DimensionMismatchError,
    DomainError,
    UsageError,
)


def to_http_exception(error: Exception) -> HTTPException:
    """Usage problems are 400, out-of-domain inputs 422, anything else 500."""
    if isinstance(error, (UsageError, DegeneratePathError, DimensionMismatchError)):
        return HTTPException(status_code=400, detail=str(error))
    if isinstance(error, DomainError):
        return HTTPException(status_code=422, detail=str(error))
    if isinstance(error, AssertionFailure):
        return HTTPException(status_code=500, detail=f"Check failed: {error}")
    return HTTPException(status_code=500, detail=f"Computation failed: {error}")
