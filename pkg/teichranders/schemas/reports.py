# Report and response models shared by the CLI, the HTTP routes and the suites
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from teichranders.config import CONFIG
from teichranders.core.verdicts import PredicateStatus, RayVerdict


class Record(BaseModel):
    """Base for everything emitted as JSON; carries the top-level schema version."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(
        default=CONFIG.schema.VERSION, serialization_alias="schema"
    )

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


class CheckReport(Record):
    """Outcome of one property check."""

    name: str
    anchor: str = Field(..., description="Quoted phrase of the claim under test")
    cases: int
    max_violation: float
    tolerance: float
    passed: bool
    seed: Optional[int] = None
    notes: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)


class MinimalityReport(CheckReport):
    margins: List[float]
    min_margin: float
    unperturbed_margin: float


class GardinerReport(CheckReport):
    analytic: float
    finite_differences: Dict[str, float]
    min_rel_error: float


class DerivativeReport(CheckReport):
    analytic: float
    finite_differences: Dict[str, float]
    best_error: float


class ExtremalityReport(CheckReport):
    beta_extremal: bool
    hamilton: bool
    teichmuller_extremal: PredicateStatus
    agree: bool


class DualCheckReport(CheckReport):
    g_omega: float
    dual_estimate: float
    rel_err: float


class RayReport(Record):
    """Sampled Randers lengths along a Teichmüller ray."""

    base: str
    g: List[float]
    f: List[float]
    boundary: str
    t_grid: List[float]
    delta_values: List[float]
    decay_values: List[float]
    im_values: List[float]
    verdict: RayVerdict
    limit_estimate: float
    walsh_value: float
    intersection: float

    @model_validator(mode="after")
    def check_decay_monotone(self) -> "RayReport":
        """The decay e^-delta must be non-increasing along the ray."""
        slack = CONFIG.tolerances.ray_monotone
        values = self.decay_values
        for k in range(1, len(values)):
            if values[k] > values[k - 1] + slack:
                raise ValueError(
                    f"decay increased at sample {k}: {values[k - 1]} -> {values[k]}"
                )
        return self

    def rows(self) -> List[Dict[str, float]]:
        return [
            {"t": t, "delta_omega": d, "decay": e, "im": y}
            for t, d, e, y in zip(
                self.t_grid, self.delta_values, self.decay_values, self.im_values
            )
        ]


class IncompletenessReport(Record):
    base: str
    f: List[float]
    g: List[float]
    points: List[str]
    im_values: List[float]
    successive_deltas: List[float]
    tail_bound: float
    forward_cauchy: bool
    leaves_compacta: bool


class DistRecord(Record):
    from_point: str = Field(..., serialization_alias="from")
    to_point: str = Field(..., serialization_alias="to")
    t: float
    foliation: Optional[List[float]] = None
    d_teich: float
    delta_t: float
    delta_omega: Optional[float] = None


class CometricRecord(Record):
    g_omega: float
    boundary_residual: float
    dual_estimate: Optional[float] = None
    rel_err: Optional[float] = None


class SuiteSummary(Record):
    suite: str
    seed: int
    passed: bool
    cases: int
    max_violation: float
    checks: List[CheckReport]

    @classmethod
    def from_checks(
        cls, suite: str, seed: int, checks: List[CheckReport]
    ) -> "SuiteSummary":
        return cls(
            suite=suite,
            seed=seed,
            passed=all(check.passed for check in checks),
            cases=sum(check.cases for check in checks),
            max_violation=max((check.max_violation for check in checks), default=0.0),
            checks=checks,
        )


class GeodesicRecord(Record):
    from_point: str = Field(..., serialization_alias="from")
    to_point: str = Field(..., serialization_alias="to")
    length: float
    points: List[Dict[str, float]]
