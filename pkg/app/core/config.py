"""Toolkit configuration management with Pydantic v2."""

from functools import lru_cache
from typing import Literal, Tuple

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings with environment variable support (prefix ``ARGSHIFT_``)."""

    model_config = SettingsConfigDict(
        env_prefix="ARGSHIFT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=False,
    )

    # Environment
    environment: Literal["development", "testing", "production"] = "production"
    debug: bool = Field(default=False, description="Enable debug mode")

    app_name: str = "argshift"
    app_version: str = "0.1.0"

    # Logging
    log_level: str = Field(default="WARNING", description="Logging level")
    log_format: Literal["json", "console"] = "json"

    # Numeric tolerances
    rank_tol: float = Field(default=1e-9, ge=0, description="Relative SVD rank threshold")
    closure_tol: float = Field(default=1e-7, ge=0, description="Subalgebra closure residual")
    root_residual_tol: float = Field(default=1e-9, ge=0, description="Relative root residual")
    zero_tol: float = Field(default=1e-10, ge=0, description="|p_g| bound at numeric samples")
    smooth_tol: float = Field(default=1e-8, ge=0, description="Gradient norm for smoothness")
    identity_tol: float = Field(default=1e-8, ge=0, description="Residual for numeric identities")
    cluster_tol: float = Field(
        default=1e-6, ge=0, description="Relative radius merging numeric eigenvalues"
    )

    # Stability windows
    index_window: int = Field(default=8, ge=1, description="Points without rank increase")
    trdeg_window: int = Field(default=8, ge=1, description="Points without Jacobian increase")
    corank_window: int = Field(default=5, ge=1, description="Samples without corank decrease")
    core_window: int = Field(default=3, ge=1, description="Kernels without growth of L")
    heights: Tuple[int, ...] = Field(default=(10, 100, 1000), description="Coefficient heights")

    # Sampling
    default_samples: int = Field(default=20, ge=1, description="Samples per component")
    default_seed: int = Field(default=0, description="Seed for all randomized choices")
    retry_factor: int = Field(default=10, ge=1, description="Retry budget multiplier")
    min_valid_samples: int = Field(default=5, ge=1, description="Confidence floor per component")
    b2_threshold: float = Field(default=1.0, ge=0, le=1, description="Required b2 fraction")

    @field_validator("heights")
    @classmethod
    def _heights_positive(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        if not value or any(h < 1 for h in value):
            raise ValueError("Coefficient heights must be positive")
        return value

    @property
    def is_development(self) -> bool:
        """Check if running in development mode."""
        return self.environment == "development"

    @property
    def is_testing(self) -> bool:
        """Check if running in testing mode."""
        return self.environment == "testing"

    def height(self, step: int) -> int:
        """Coefficient height for the ``step``-th random point (grows, then saturates)."""
        return self.heights[min(step, len(self.heights) - 1)]

    def with_tolerance(self, tol: float) -> "Settings":
        """Copy with every numeric tolerance replaced by ``tol``."""
        if tol < 0:
            raise ValueError("Tolerance overrides must be non-negative")
        return self.model_copy(
            update={
                "rank_tol": tol,
                "root_residual_tol": tol,
                "zero_tol": tol,
                "smooth_tol": tol,
                "identity_tol": tol,
            }
        )


@lru_cache
def get_settings() -> Settings:
    """Get cached toolkit settings."""
    return Settings()
