"""
Configuration module for cone-tutte.
Handles environment variables and numerical defaults.
"""

from typing import Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from CONE_TUTTE_* environment variables."""

    # Application
    APP_NAME: str = "cone-tutte"
    APP_VERSION: str = "1.0.0"

    # Logging
    LOG: str = "WARNING"
    LOG_FORMAT: Literal["console", "json"] = "console"

    # Tolerances (absolute tolerance is scaled by the target diameter)
    TOL_ABS_FACTOR: float = 1e-12
    TOL_REL: float = 1e-10
    RESIDUAL_CHECK_TOL: float = 1e-9

    # Linear solves
    DIRECT_SOLVER_MAX_N: int = 20000
    ITERATIVE_RTOL: float = 1e-12
    ITERATIVE_MAXITER: int = 20000

    # Combinatorics
    CHECK_THREE_CONNECTED: bool = True
    EAR_ORDER: Literal["lowest_index", "highest_index"] = "lowest_index"

    # Positive combinations: floor relative to the largest coefficient
    ALPHA_MIN: float = 1e-6

    # Disk quadrature
    QUADRATURE_M0: int = 1024
    QUADRATURE_M_MAX: int = 262144
    DERIVATIVE_STEP: float = 1e-2
    KERNEL_DERIVATIVE_MIN_NU: float = 0.05
    DISK_GRID_ANGLES: int = 256
    DISK_GRID_RADII: int = 64

    # Rendering
    ARROW_SCALE: float = 0.25
    PASS_COLOR: str = "#2ca02c"
    FAIL_COLOR: str = "#d62728"

    # Randomness
    SEED: int = 0

    @field_validator("LOG", mode="before")
    @classmethod
    def normalize_level(cls, v: str) -> str:
        """Accept lower-case level names."""
        if isinstance(v, str):
            return v.strip().upper()
        return v

    def tol_abs(self, diameter: float) -> float:
        """Absolute tolerance for a target of the given diameter."""
        return self.TOL_ABS_FACTOR * max(diameter, 1.0)

    model_config = SettingsConfigDict(
        env_prefix="CONE_TUTTE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )


# Create global settings instance
settings = Settings()


def validate_settings(current: Settings = settings) -> None:
    """Validate numeric settings before a run."""
    errors = []

    if current.LOG not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
        errors.append(f"LOG must be a logging level name, got {current.LOG!r}")

    for name in ("TOL_ABS_FACTOR", "TOL_REL", "RESIDUAL_CHECK_TOL", "ITERATIVE_RTOL"):
        if getattr(current, name) <= 0:
            errors.append(f"{name} must be positive")

    if not 0 < current.ALPHA_MIN < 1:
        errors.append("ALPHA_MIN must lie in (0, 1)")

    if current.QUADRATURE_M0 < 64:
        errors.append("QUADRATURE_M0 must be at least 64")

    if current.QUADRATURE_M_MAX < current.QUADRATURE_M0:
        errors.append("QUADRATURE_M_MAX must not be below QUADRATURE_M0")

    if current.DISK_GRID_ANGLES < 8 or current.DISK_GRID_RADII < 2:
        errors.append("Disk sample grid is too coarse")

    if errors:
        raise ValueError("Configuration errors: " + "; ".join(errors))
