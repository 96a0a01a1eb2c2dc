from typing import List, Optional, Union

from pydantic import BaseModel, Field

from teichranders.config import CONFIG
from teichranders.models.space import ModelSpaceDescription

Coefficient = Union[float, str]


class CometricRequest(BaseModel):
    """Body of POST /cometric; coefficients are numbers or 'x+yi' literals."""

    space: Optional[ModelSpaceDescription] = None
    phi: List[Coefficient] = Field(..., min_length=1)
    psi: List[Coefficient] = Field(..., min_length=1)
    check_dual: bool = False
    samples: int = Field(CONFIG.suites.DUAL_SAMPLES, ge=1)
    seed: int = 0

    model_config = {
        "json_schema_extra": {
            "example": {
                "phi": ["1", "0.5+0.2i"],
                "psi": ["0.1", "-0.05i"],
                "check_dual": True,
                "samples": 4000,
                "seed": 0,
            }
        }
    }
