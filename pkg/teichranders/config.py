from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from pydantic import model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


# Default model space if settings.py is not available
DEFAULT_SPACE_DESCRIPTION: Dict[str, Any] = {
    "grid": {"nx": 64, "ny": 64},
    "basis": ["(2 + x) * exp(I*pi*y)", "(1.5 + y) * exp(I*pi*x/2)"],
    "seed": 0,
}


def get_default_space_description() -> Dict[str, Any]:
    """
    Get the default model-space description from settings.py or use defaults.
    """
    try:
        from settings import default_space

        return default_space
    except ImportError:
        return DEFAULT_SPACE_DESCRIPTION


# =============================================================================
# APP CONFIGURATION : Add any constants here or update existing
# =============================================================================


@dataclass(frozen=True)
class SchemaConstants:
    """Output schema versioning."""

    VERSION: int = 1
    CSV_FLOAT_FORMAT: str = ".17g"


@dataclass(frozen=True)
class ExitCodes:
    """Process exit codes used by the CLI."""

    SUCCESS: int = 0
    ASSERTION_FAILURE: int = 1
    USAGE: int = 2
    DOMAIN: int = 3


@dataclass(frozen=True)
class SamplingConstants:
    """Boxes that random points and foliations are drawn from."""

    RE_RANGE: Tuple[float, float] = (-3.0, 3.0)
    LOG_IM_RANGE: Tuple[float, float] = (-2.0, 2.0)  # Im = exp(u)
    FOLIATION_RANGE: Tuple[float, float] = (-3.0, 3.0)
    MIN_FOLIATION_NORM: float = 0.2
    MIN_CROSS_RATIO: float = 0.05  # |sin| between non-parallel sampled foliations


@dataclass(frozen=True)
class ModelSpaceDefaults:
    """Grid and basis used when no description file is given."""

    NX: int = 64
    NY: int = 64
    MAX_BASIS: int = 4
    # nonvanishing on the unit square, so Teichmüller quotients need no floor
    BASIS_POOL: Tuple[str, ...] = (
        "(2 + x) * exp(I*pi*y)",
        "(1.5 + y) * exp(I*pi*x/2)",
        "1 + x*y",
        "(1 + x**2) * exp(2*I*pi*x*y)",
    )


@dataclass(frozen=True)
class SuiteSizes:
    """Sample counts used by `verify`."""

    PAIRS: int = 10_000
    TRIPLES: int = 10_000
    PATHS: int = 100
    PERTURBATIONS: int = 50
    FOLIATIONS: int = 10
    ISOMETRY_PAIRS: int = 1_000
    RAYS: int = 50
    GARDINER: int = 100
    KERNEL_TRIALS: int = 20
    DUAL_SAMPLES: int = 4_000
    NORM_TRIALS: int = 5
    COMETRIC_SAMPLES: int = 20
    RAY_TMAX: float = 20.0
    RAY_SAMPLES: int = 201


class Tolerances(BaseSettings):
    """Central numeric configuration; every value can be overridden via TRM_TOL_*."""

    model_config = SettingsConfigDict(env_prefix="TRM_TOL_", frozen=True)

    # quadrature
    quad_panels: int = 64
    quad_nodes: int = 8
    # sup solver for M(z1, z2)
    sup_grid: int = 2048
    sup_refine_tol: float = 1e-10
    sup_candidates: int = 3
    # root finding
    bisection_rtol: float = 1e-10
    # finite differences
    fd_steps: Tuple[float, ...] = (1e-3, 1e-4, 1e-5, 1e-6)
    # dual norm solver
    dual_starts: int = 32
    dual_tol: float = 1e-8
    zero_floor: float = 1e-12
    kernel_residual: float = 1e-12
    # ray classifier
    ray_slope: float = 0.05
    ray_oscillation: float = 1e-3
    ray_monotone: float = 1e-9
    # property thresholds
    exact: float = 1e-12
    sup_vs_closed: float = 1e-7
    quadrature: float = 1e-9
    path_vs_closed: float = 1e-8
    isometry: float = 1e-9
    walsh_rel: float = 0.02
    gardiner_rel: float = 1e-6
    kerckhoff: float = 1e-7
    derivative_rel: float = 1e-4
    derivative_zero: float = 1e-6
    beta_invariance: float = 1e-7
    beta_invariance_large: float = 1e-6
    beta_slack: float = 1e-9
    extremality: float = 1e-6
    kernel_invariance: float = 1e-8
    homogeneity: float = 1e-10
    subadditivity: float = 1e-8
    l1_resolution: float = 1e-3
    cometric_boundary: float = 1e-9
    brute_force_rel: float = 1e-5
    null_direction: float = 1e-8

    @model_validator(mode="after")
    def check_positive(self) -> "Tolerances":
        """Reject any non-positive knob."""
        for name, value in self:
            values = value if isinstance(value, tuple) else (value,)
            if not values or any(v <= 0 for v in values):
                raise ValueError(f"tolerance {name} must be strictly positive")
        return self


class RunSettings(BaseSettings):
    """Process-level defaults; TRM_SEED overrides the default seed."""

    model_config = SettingsConfigDict(env_prefix="TRM_", frozen=True)

    seed: int = 0


@dataclass(frozen=True)
class AppConfig:
    """Main application configuration container."""

    schema: SchemaConstants = SchemaConstants()
    exit_codes: ExitCodes = ExitCodes()
    sampling: SamplingConstants = SamplingConstants()
    space: ModelSpaceDefaults = ModelSpaceDefaults()
    suites: SuiteSizes = SuiteSizes()
    tolerances: Tolerances = field(default_factory=Tolerances)


# Global configuration instance
CONFIG = AppConfig()
