"""
Evaluation Schemas
==================
Confusion counts and screening-quality records.
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ConfusionCounts(BaseModel):
    """Two-class confusion counts for a declared positive label"""
    model_config = ConfigDict(frozen=True)

    tp: int = Field(..., ge=0)
    fp: int = Field(..., ge=0)
    fn: int = Field(..., ge=0)
    tn: int = Field(..., ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


class ScreeningQuality(BaseModel):
    """How well a selected feature set recovers the truly important set"""
    model_config = ConfigDict(frozen=True)

    recall: float = Field(..., ge=0.0, le=1.0, description="Fraction of important features kept")
    precision: float = Field(..., ge=0.0, le=1.0, description="Fraction of kept features that are important")
    unimportant_surviving: float = Field(..., ge=0.0, le=1.0, description="Fraction of unimportant features kept")
    counts: ConfusionCounts

    @model_validator(mode="after")
    def check_counts(self):
        if self.counts.total == 0:
            raise ValueError("Screening quality needs at least one feature")
        return self
