"""
Common schemas used across artifacts.
Provides the versioned base every JSON artifact derives from.
"""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

Point = Tuple[float, float]
SCHEMA_VERSION = 1


class BaseSchema(BaseModel):
    """Base schema with common configuration."""

    model_config = ConfigDict(
        populate_by_name=True,
        validate_assignment=True,
        extra="forbid",
        allow_inf_nan=False,
    )


class VersionedSchema(BaseSchema):
    """Top-level artifact carrying the interchange format version."""

    v: int = Field(SCHEMA_VERSION, ge=SCHEMA_VERSION, le=SCHEMA_VERSION, description="Format version")
