"""
Run configuration accepted by the CLI through --config.
"""

from typing import Dict, Literal, Optional

from pydantic import Field, field_validator

from cone_tutte.schemas.common import BaseSchema

Subcommand = Literal["embed", "certify", "cones", "extend", "recover-weights", "disk", "render"]

INPUT_KEYS = {
    "mesh",
    "polygon",
    "weights",
    "drawing",
    "source",
    "target",
    "cones",
    "extension",
    "boundary_map",
}
OUTPUT_KEYS = {"out", "svg", "csv", "report"}


class ToleranceOverrides(BaseSchema):
    """Settings overrides applied for one run."""

    tol_abs_factor: Optional[float] = Field(None, gt=0)
    tol_rel: Optional[float] = Field(None, gt=0)
    residual_check_tol: Optional[float] = Field(None, gt=0)
    alpha_min: Optional[float] = Field(None, gt=0)


class RenderOptions(BaseSchema):
    arrow_scale: Optional[float] = Field(None, gt=0)
    pass_color: Optional[str] = Field(None, pattern=r"^#[0-9a-fA-F]{6}$")
    fail_color: Optional[str] = Field(None, pattern=r"^#[0-9a-fA-F]{6}$")


class RunConfig(BaseSchema):
    """One CLI run; explicit command-line flags take precedence."""

    subcommand: Optional[Subcommand] = None
    inputs: Dict[str, str] = Field(default_factory=dict)
    outputs: Dict[str, str] = Field(default_factory=dict)
    weights: Optional[str] = Field(None, description="uniform, random_positive[:lo:hi] or a weights file")
    seed: Optional[int] = Field(None, ge=0)
    tolerances: ToleranceOverrides = Field(default_factory=ToleranceOverrides)
    render: RenderOptions = Field(default_factory=RenderOptions)

    @field_validator("inputs")
    @classmethod
    def known_inputs(cls, v: Dict[str, str]) -> Dict[str, str]:
        unknown = set(v) - INPUT_KEYS
        if unknown:
            raise ValueError(f"Unknown input keys: {sorted(unknown)}")
        return v

    @field_validator("outputs")
    @classmethod
    def known_outputs(cls, v: Dict[str, str]) -> Dict[str, str]:
        unknown = set(v) - OUTPUT_KEYS
        if unknown:
            raise ValueError(f"Unknown output keys: {sorted(unknown)}")
        return v
