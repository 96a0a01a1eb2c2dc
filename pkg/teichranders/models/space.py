from typing import List

from pydantic import BaseModel, Field, field_validator

from teichranders.config import CONFIG


class GridSpec(BaseModel):
    nx: int = Field(CONFIG.space.NX, gt=0)
    ny: int = Field(CONFIG.space.NY, gt=0)


class ModelSpaceDescription(BaseModel):
    """JSON description of a model space: midpoint grid on the unit square plus basis expressions."""

    grid: GridSpec = Field(default_factory=GridSpec)
    basis: List[str] = Field(
        default_factory=lambda: list(CONFIG.space.BASIS_POOL[:2]), min_length=1
    )
    seed: int = 0

    @field_validator("basis")
    @classmethod
    def check_basis_size(cls, value: List[str]) -> List[str]:
        if len(value) > CONFIG.space.MAX_BASIS:
            raise ValueError(
                f"at most {CONFIG.space.MAX_BASIS} basis functions, got {len(value)}"
            )
        if any(not spec.strip() for spec in value):
            raise ValueError("basis expressions must be non-empty")
        return value

    model_config = {
        "json_schema_extra": {
            "example": {
                "grid": {"nx": 64, "ny": 64},
                "basis": ["(2 + x) * exp(I*pi*y)", "(1.5 + y) * exp(I*pi*x/2)"],
                "seed": 0,
            }
        }
    }
