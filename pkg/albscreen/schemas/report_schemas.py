"""
Run Report Schemas
==================
JSON documents written by the CLI. Everything needed to reproduce a run
lives outside `timing`, so two runs with the same inputs and seed differ
only inside that block.
"""

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field

from albscreen.schemas.evaluation_schemas import ConfusionCounts
from albscreen.schemas.model_schemas import DroppedFeature
from albscreen.schemas.screening_schemas import (
    CutoffRule,
    CvCandidateScore,
    NullSummary,
    TTestMode,
)

REPORT_SCHEMA_VERSION = 1


class RunTiming(BaseModel):
    started_at: str
    finished_at: str
    elapsed_seconds: float


class InputRecord(BaseModel):
    """A data file consumed by the run"""
    path: str
    sha256: str
    rows: int
    features: int
    n: Optional[int] = Field(None, description="Label-0 rows")
    m: Optional[int] = Field(None, description="Label-1 rows")
    label_column: Optional[str] = None
    label_mapping: Dict[str, int] = Field(default_factory=dict)


class FeatureStat(BaseModel):
    """Per-feature statistics as reported (also written as the .features.csv table)"""
    feature_index: int
    feature_name: str
    alb: Optional[float] = None
    bandwidth: Optional[float] = None
    scale_source: Optional[str] = None
    degenerate: Optional[bool] = None
    underflow_count: Optional[int] = None
    t: Optional[float] = None
    df: Optional[float] = None
    p_value: Optional[float] = None
    selected: bool = False


class ScreeningSection(BaseModel):
    method: str
    rule: Union[CutoffRule, TTestMode, None] = None
    rule_label: str
    threshold: Optional[float] = None
    selected: List[int] = Field(default_factory=list)
    selected_names: List[str] = Field(default_factory=list)
    null_summary: Optional[NullSummary] = None
    cv_scores: List[CvCandidateScore] = Field(default_factory=list)


class ClassificationSection(BaseModel):
    kernel: str
    prior0: float
    prior1: float
    model_features: List[int] = Field(default_factory=list)
    dropped: List[DroppedFeature] = Field(default_factory=list)
    test_rows: int
    rand_index: Optional[float] = None
    confusion: Optional[ConfusionCounts] = None
    positive_label: Optional[str] = None


class RunReport(BaseModel):
    """Top-level report for one CLI invocation"""
    schema_version: int = REPORT_SCHEMA_VERSION
    tool_version: str
    command: str
    seed: Optional[int] = None
    inputs: List[InputRecord] = Field(default_factory=list)
    parameters: Dict[str, Union[str, int, float, bool, None, List[int], List[str]]] = Field(default_factory=dict)
    screening: Optional[ScreeningSection] = None
    features: List[FeatureStat] = Field(default_factory=list)
    classification: Optional[ClassificationSection] = None
    outputs: Dict[str, str] = Field(default_factory=dict)
    warnings: List[str] = Field(default_factory=list)
    timing: Optional[RunTiming] = None
