"""
Simulation Schemas
==================
Scenario configuration for the synthetic generators and the experiment
specifications that drive repeated simulation studies.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from albscreen.schemas.screening_schemas import CutoffRule, TTestMode


class Scenario(str, Enum):
    """How an important feature's class distributions differ"""
    LOCATION = "location"   # N(0,1) vs N(1,1)
    SCALE = "scale"         # N(0,1) vs N(0,3^2)
    SHAPE = "shape"         # t(4) vs 1/2 N(-2.5,1) + 1/2 N(2.5,1)


class ScenarioConfig(BaseModel):
    """One synthetic two-class dataset; unimportant features are N(0,1) in both classes"""
    model_config = ConfigDict(frozen=True)

    scenario: Scenario
    m: int = Field(..., ge=2, description="Label-1 sample count")
    n: int = Field(..., ge=2, description="Label-0 sample count")
    p: int = Field(..., ge=1, description="Feature count")
    r: float = Field(..., ge=0.0, le=1.0, description="Probability a feature is important")
    seed: int = Field(0, ge=0, lt=2 ** 64)
    mean_shift: float = Field(1.0, description="Location: class-1 mean")
    scale_sd: float = Field(3.0, gt=0, description="Scale: class-1 standard deviation")
    t_df: float = Field(4.0, gt=0, description="Shape: class-0 Student-t degrees of freedom")
    mixture_offset: float = Field(2.5, description="Shape: class-1 mixture component means are +/- this")


class ExperimentSpec(BaseModel):
    """
    A repeated simulation study

    Each replication uses m = n = size for training and a balanced test set
    of test_size per class (defaults to the training size).
    """
    model_config = ConfigDict(frozen=True)

    scenario: Scenario = Scenario.SHAPE
    p: int = Field(500, ge=1)
    r: float = Field(0.5, ge=0.0, le=1.0)
    sizes: List[int] = Field(default_factory=lambda: [10, 20, 40])
    replications: int = Field(1, ge=1)
    test_size: Optional[int] = Field(None, ge=1)
    cutoff_rules: List[CutoffRule] = Field(default_factory=list)
    ttest_modes: List[TTestMode] = Field(default_factory=list)
    null_permutations: int = Field(3, ge=1, description="Permutations per feature for the CDF study")
    seed: int = Field(0, ge=0, lt=2 ** 64)

    @field_validator("sizes")
    @classmethod
    def check_sizes(cls, v):
        if not v:
            raise ValueError("sizes must not be empty")
        if any(size < 2 for size in v):
            raise ValueError("every size must be >= 2")
        return v

    def scenario_config(self, size: int, seed: int) -> ScenarioConfig:
        return ScenarioConfig(scenario=self.scenario, m=size, n=size, p=self.p, r=self.r, seed=seed)


class HoldoutSpec(BaseModel):
    """Nested-split comparison on a user-supplied labeled dataset"""
    model_config = ConfigDict(frozen=True)

    replications: int = Field(1, ge=1)
    validation_fraction: float = Field(0.5, gt=0.0, lt=1.0)
    alpha: float = Field(0.05, gt=0.0, lt=1.0, description="Permutation null level")
    null_covariates: Optional[int] = Field(None, ge=1, description="Defaults to every non-constant feature")
    null_permutations: int = Field(2, ge=1)
    ttest_alpha: float = Field(0.05, gt=0.0, lt=1.0)
    seed: int = Field(0, ge=0, lt=2 ** 64)
