"""
Classifier Model Schemas
========================
Versioned JSON document for the KDE Bayes classifier, written by
`classify --model-out` and read back by `predict`.
"""

import math
from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from albscreen.core.kernel import KernelId

MODEL_SCHEMA_VERSION = 1


class FeatureDensity(BaseModel):
    """Per-class training values and bandwidths for one screened feature"""
    model_config = ConfigDict(frozen=True)

    feature_index: int = Field(..., ge=0, description="Column index in the training data")
    feature_name: str
    class0_values: List[float] = Field(..., min_length=2)
    class1_values: List[float] = Field(..., min_length=2)
    class0_bandwidth: float = Field(..., gt=0)
    class1_bandwidth: float = Field(..., gt=0)


class DroppedFeature(BaseModel):
    model_config = ConfigDict(frozen=True)

    feature_index: int
    feature_name: str
    reason: str


class BayesKdeModel(BaseModel):
    """
    KDE Bayes classifier under feature independence.

    prior0 belongs to the class with n samples (label 0).
    """
    model_config = ConfigDict(frozen=True)

    schema_version: int = MODEL_SCHEMA_VERSION
    kernel: KernelId = KernelId.HALL
    prior0: float = Field(..., gt=0.0, lt=1.0)
    prior1: float = Field(..., gt=0.0, lt=1.0)
    n: int = Field(..., ge=2, description="Label-0 training count")
    m: int = Field(..., ge=2, description="Label-1 training count")
    label_mapping: Dict[str, int] = Field(default_factory=dict)
    feature_names: List[str] = Field(..., description="All training columns, in order")
    features: List[FeatureDensity] = Field(default_factory=list)
    dropped: List[DroppedFeature] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_model(self):
        if not math.isclose(self.prior0 + self.prior1, 1.0, abs_tol=1e-12):
            raise ValueError("priors must sum to 1")
        indices = [f.feature_index for f in self.features]
        if indices != sorted(set(indices)):
            raise ValueError("model features must be sorted and unique")
        if indices and indices[-1] >= len(self.feature_names):
            raise ValueError("model feature index outside the training columns")
        return self

    @property
    def selected(self) -> List[int]:
        return [f.feature_index for f in self.features]
