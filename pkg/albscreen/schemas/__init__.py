"""Pydantic schemas for screening results, models, simulations and reports"""

from albscreen.schemas.evaluation_schemas import ConfusionCounts, ScreeningQuality
from albscreen.schemas.model_schemas import BayesKdeModel, DroppedFeature, FeatureDensity
from albscreen.schemas.report_schemas import RunReport
from albscreen.schemas.screening_schemas import (
    AlbResult,
    BandwidthSpec,
    CutoffKind,
    CutoffRule,
    NullSample,
    ScreeningReport,
    TTestMode,
    TTestResult,
)
from albscreen.schemas.simulation_schemas import ExperimentSpec, HoldoutSpec, Scenario, ScenarioConfig

__all__ = [
    "AlbResult",
    "BandwidthSpec",
    "BayesKdeModel",
    "ConfusionCounts",
    "CutoffKind",
    "CutoffRule",
    "DroppedFeature",
    "ExperimentSpec",
    "FeatureDensity",
    "HoldoutSpec",
    "NullSample",
    "RunReport",
    "Scenario",
    "ScenarioConfig",
    "ScreeningQuality",
    "ScreeningReport",
    "TTestMode",
    "TTestResult",
]
