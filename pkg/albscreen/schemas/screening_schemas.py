"""
Screening Schemas
=================
Pydantic models for per-feature statistics, cutoff rules, permutation null
samples and the screening reports built from them.
"""

from enum import Enum
from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


# ============================================================================
# ENUMS
# ============================================================================

class ScaleSource(str, Enum):
    ROBUST_IQR = "robust_iqr"
    SAMPLE_SD = "sample_sd"
    DEGENERATE = "degenerate"


class CutoffKind(str, Enum):
    TOP_D = "top_d"
    PERCENTILE = "percentile"
    CROSS_VALIDATED = "cross_validated"
    ZERO = "zero"


class TTestModeKind(str, Enum):
    P_VALUE_BELOW = "p_value_below"
    TOP_K = "top_k"


# ============================================================================
# PER-FEATURE STATISTICS
# ============================================================================

class BandwidthSpec(BaseModel):
    """Plug-in bandwidth for one feature; value is None when degenerate"""
    model_config = ConfigDict(frozen=True)

    value: Optional[float] = None
    scale: float = 0.0
    scale_source: ScaleSource

    @model_validator(mode="after")
    def check_value(self):
        if self.scale_source == ScaleSource.DEGENERATE:
            if self.value is not None:
                raise ValueError("Degenerate bandwidth must not carry a value")
        elif self.value is None or not self.value > 0:
            raise ValueError("Non-degenerate bandwidth must be positive")
        return self

    @property
    def is_degenerate(self) -> bool:
        return self.scale_source == ScaleSource.DEGENERATE


class AlbResult(BaseModel):
    """ALB statistic of one feature"""
    model_config = ConfigDict(frozen=True)

    feature_index: int = Field(..., ge=0)
    alb: float
    bandwidth: BandwidthSpec
    degenerate: bool = False
    underflow_count: int = Field(0, ge=0, description="Log-underflow guard triggers")


class TTestResult(BaseModel):
    """Welch two-sample t-test of one feature (two-sided)"""
    model_config = ConfigDict(frozen=True)

    feature_index: int = Field(..., ge=0)
    t: float
    df: float = Field(..., gt=0)
    p_value: float = Field(..., ge=0.0, le=1.0)


# ============================================================================
# CUTOFF RULES
# ============================================================================

class CutoffRule(BaseModel):
    """
    One of the four ALB cutoff strategies.

    top_d           keep the d largest statistics
    percentile      threshold at the (1 - alpha) quantile of a permutation null
                    built from `null_covariates` features x `null_permutations`
    cross_validated pick the best of `candidates` on a second training set
    zero            keep statistics strictly above 0
    """
    model_config = ConfigDict(frozen=True)

    kind: CutoffKind
    d: Optional[int] = Field(None, ge=1)
    alpha: Optional[float] = None
    null_covariates: Optional[int] = Field(None, ge=1)
    null_permutations: Optional[int] = Field(None, ge=1)
    candidates: Optional[List[float]] = None
    seed: int = Field(0, ge=0, lt=2 ** 64)

    @model_validator(mode="after")
    def check_kind_fields(self):
        if self.kind == CutoffKind.TOP_D and self.d is None:
            raise ValueError("top_d rule requires d")
        if self.kind == CutoffKind.PERCENTILE:
            if self.alpha is None or not 0.0 < self.alpha < 1.0:
                raise ValueError("percentile rule requires 0 < alpha < 1")
            if self.null_covariates is None or self.null_permutations is None:
                raise ValueError("percentile rule requires null_covariates and null_permutations")
        if self.kind == CutoffKind.CROSS_VALIDATED and self.candidates is not None:
            if not 1 <= len(self.candidates) <= 10:
                raise ValueError("cross_validated rule takes between 1 and 10 candidates")
        return self

    @classmethod
    def top_d(cls, d: int) -> "CutoffRule":
        return cls(kind=CutoffKind.TOP_D, d=d)

    @classmethod
    def percentile(cls, alpha: float, null_covariates: int, null_permutations: int, seed: int = 0) -> "CutoffRule":
        return cls(
            kind=CutoffKind.PERCENTILE,
            alpha=alpha,
            null_covariates=null_covariates,
            null_permutations=null_permutations,
            seed=seed,
        )

    @classmethod
    def cross_validated(cls, candidates: Optional[List[float]] = None, seed: int = 0) -> "CutoffRule":
        return cls(kind=CutoffKind.CROSS_VALIDATED, candidates=candidates, seed=seed)

    @classmethod
    def zero(cls) -> "CutoffRule":
        return cls(kind=CutoffKind.ZERO)

    def label(self) -> str:
        """Short text form matching the CLI --cutoff grammar"""
        if self.kind == CutoffKind.TOP_D:
            return f"top-d={self.d}"
        if self.kind == CutoffKind.PERCENTILE:
            return f"perm={self.alpha:g},{self.null_covariates},{self.null_permutations}"
        if self.kind == CutoffKind.CROSS_VALIDATED:
            return "cv"
        return "zero"


class TTestMode(BaseModel):
    """Selection mode for t-test screening"""
    model_config = ConfigDict(frozen=True)

    kind: TTestModeKind
    alpha: Optional[float] = None
    k: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def check_kind_fields(self):
        if self.kind == TTestModeKind.P_VALUE_BELOW and (self.alpha is None or not 0.0 < self.alpha < 1.0):
            raise ValueError("p_value_below mode requires 0 < alpha < 1")
        if self.kind == TTestModeKind.TOP_K and self.k is None:
            raise ValueError("top_k mode requires k")
        return self

    @classmethod
    def p_value_below(cls, alpha: float) -> "TTestMode":
        return cls(kind=TTestModeKind.P_VALUE_BELOW, alpha=alpha)

    @classmethod
    def top_k(cls, k: int) -> "TTestMode":
        return cls(kind=TTestModeKind.TOP_K, k=k)

    def label(self) -> str:
        if self.kind == TTestModeKind.TOP_K:
            return f"top-d={self.k}"
        return f"pvalue={self.alpha:g}"


# ============================================================================
# PERMUTATION NULL
# ============================================================================

class NullSummary(BaseModel):
    """Digest of a permutation null sample, small enough for reports"""
    model_config = ConfigDict(frozen=True)

    count: int
    null_covariates: int
    null_permutations: int
    seed: int
    minimum: float
    maximum: float
    mean: float
    quantiles: dict


class NullSample(BaseModel):
    """Permuted ALB* values for B covariates x d permutations each"""
    model_config = ConfigDict(frozen=True)

    values: List[float]
    null_covariates: int = Field(..., ge=1, description="B, covariates sampled")
    null_permutations: int = Field(..., ge=1, description="d, permutations per covariate")
    seed: int = Field(..., ge=0)
    covariates: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_length(self):
        if len(self.values) != self.null_covariates * self.null_permutations:
            raise ValueError("NullSample must hold exactly B*d values")
        return self

    def summary(self) -> NullSummary:
        arr = np.asarray(self.values, dtype=float)
        levels = (0.5, 0.9, 0.95, 0.99, 0.995)
        return NullSummary(
            count=int(arr.size),
            null_covariates=self.null_covariates,
            null_permutations=self.null_permutations,
            seed=self.seed,
            minimum=float(arr.min()),
            maximum=float(arr.max()),
            mean=float(arr.mean()),
            quantiles={f"q{level:g}": float(np.quantile(arr, level)) for level in levels},
        )


# ============================================================================
# SCREENING REPORT
# ============================================================================

class CvCandidateScore(BaseModel):
    """Rand index of one candidate cutoff on the second training set"""
    model_config = ConfigDict(frozen=True)

    cutoff: float
    n_selected: int
    rand_index: Optional[float] = None
    viable: bool = True


class ScreeningReport(BaseModel):
    """The estimated important set with the provenance that produced it"""
    model_config = ConfigDict(frozen=True)

    method: Literal["alb", "ttest", "none"]
    rule: Union[CutoffRule, TTestMode, None] = None
    selected: List[int]
    threshold: Optional[float] = None
    alb_results: List[AlbResult] = Field(default_factory=list)
    ttest_results: List[TTestResult] = Field(default_factory=list)
    null_summary: Optional[NullSummary] = None
    cv_scores: List[CvCandidateScore] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_selection(self):
        if list(self.selected) != sorted(set(self.selected)):
            raise ValueError("selected must be sorted and unique")
        if self.method == "alb" and self.alb_results:
            by_index = {r.feature_index: r for r in self.alb_results}
            for idx in self.selected:
                result = by_index.get(idx)
                if result is None or result.degenerate:
                    raise ValueError(f"Selected feature {idx} is missing or degenerate")
                if self.threshold is not None and not result.alb > self.threshold:
                    raise ValueError(f"Selected feature {idx} does not exceed the threshold")
        return self

    @property
    def n_selected(self) -> int:
        return len(self.selected)
