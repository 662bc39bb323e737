"""
Shared flag parsing and report plumbing for the subcommands

--cutoff grammar:
    zero                  ALB > 0
    top-d=K               K largest statistics (ALB or |t|); K may also be
                          n_plus_m, n_minus_1 or n_over_log_n
    perm=ALPHA,B,D        ALB above the (1 - ALPHA) quantile of a permutation
                          null from B covariates x D permutations
    cv[=C1,C2,...]        cross-validated cutoff over the given candidates
                          (default grid when omitted)
    pvalue=ALPHA          t-test p-value below ALPHA
"""

import argparse
import logging
import re
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd

from albscreen import __version__
from albscreen.core.cutoff import TOP_D_RULES, default_top_d
from albscreen.core.dataio import Dataset, file_sha256
from albscreen.core.errors import InvalidArgumentError
from albscreen.core.serializer_utils import write_json
from albscreen.core.settings import get_settings
from albscreen.schemas.report_schemas import FeatureStat, InputRecord, RunReport, RunTiming, ScreeningSection
from albscreen.schemas.screening_schemas import AlbResult, CutoffRule, ScreeningReport, TTestMode, TTestResult

logger = logging.getLogger(__name__)

_NUMBER = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_CUTOFF_PATTERNS = {
    "zero": re.compile(r"^zero$"),
    "top-d": re.compile(rf"^top-d=(\d+|{'|'.join(TOP_D_RULES)})$"),
    "perm": re.compile(rf"^perm=({_NUMBER}),(\d+),(\d+)$"),
    "cv": re.compile(rf"^cv(?:=({_NUMBER}(?:,{_NUMBER})*))?$"),
    "pvalue": re.compile(rf"^pvalue=({_NUMBER})$"),
}


# ============================================================================
# CUTOFF FLAG
# ============================================================================

@dataclass(frozen=True)
class CutoffArg:
    """A syntactically valid --cutoff value, resolved against data later"""
    kind: str
    text: str
    groups: tuple

    def resolve_alb(self, m: int, n: int, seed: int, available: Optional[int] = None) -> CutoffRule:
        if self.kind == "zero":
            return CutoffRule.zero()
        if self.kind == "top-d":
            return CutoffRule.top_d(self._top_d(m, n, available))
        if self.kind == "perm":
            alpha, b, d = self.groups
            return CutoffRule.percentile(float(alpha), int(b), int(d), seed)
        if self.kind == "cv":
            candidates = [float(v) for v in self.groups[0].split(",")] if self.groups[0] else None
            return CutoffRule.cross_validated(candidates, seed)
        raise InvalidArgumentError(f"--cutoff {self.text} is not an ALB cutoff")

    def resolve_ttest(self, m: int, n: int, available: Optional[int] = None) -> TTestMode:
        if self.kind == "top-d":
            return TTestMode.top_k(self._top_d(m, n, available))
        if self.kind == "pvalue":
            return TTestMode.p_value_below(float(self.groups[0]))
        raise InvalidArgumentError(f"--cutoff {self.text} is not a t-test cutoff (use top-d=K or pvalue=ALPHA)")

    @property
    def is_named_top_d(self) -> bool:
        return self.kind == "top-d" and not self.groups[0].isdigit()

    def _top_d(self, m: int, n: int, available: Optional[int]) -> int:
        value = self.groups[0]
        if value.isdigit():
            return int(value)
        return default_top_d(m, n, value, available=available)


def cutoff_arg(text: str) -> CutoffArg:
    """argparse type for --cutoff"""
    text = text.strip()
    for kind, pattern in _CUTOFF_PATTERNS.items():
        match = pattern.match(text)
        if match:
            return CutoffArg(kind=kind, text=text, groups=match.groups())
    raise argparse.ArgumentTypeError(
        f"invalid cutoff '{text}' (expected zero, top-d=K, perm=ALPHA,B,D, cv[=C1,...] or pvalue=ALPHA)"
    )


def label_column_arg(text: str) -> Union[str, int]:
    """Label column by header name, or by 0-based index when numeric"""
    return int(text) if text.isdigit() else text


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def int_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


# ============================================================================
# COMMON FLAGS
# ============================================================================

def add_run_flags(parser: argparse.ArgumentParser, seed: bool = True) -> None:
    """--seed, --threads and --log-file"""
    if seed:
        parser.add_argument("--seed", type=int, default=None,
                            help="random seed (default: ALBSCREEN_DEFAULT_SEED)")
    parser.add_argument("--threads", type=positive_int, default=None,
                        help="worker count; results do not depend on it (default: ALBSCREEN_THREADS)")
    parser.add_argument("--log-file", default=None, help="also write log lines to this file")


def add_input_flags(parser: argparse.ArgumentParser, flag: str = "--input", required: bool = True) -> None:
    parser.add_argument(flag, required=required, help="CSV file (comma-separated, optional header)")
    parser.add_argument("--label-col", type=label_column_arg, default="label",
                        help="label column name or 0-based index (default: label)")
    parser.add_argument("--no-header", action="store_true",
                        help="treat the first row as data instead of auto-detecting a header")


def add_screening_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", choices=["alb", "ttest"], default="alb", help="screening statistic")
    parser.add_argument("--cutoff", type=cutoff_arg, default=None,
                        help="zero | top-d=K | perm=ALPHA,B,D | cv[=C1,...] | pvalue=ALPHA "
                             "(default: zero for alb, pvalue=0.05 for ttest)")


def resolve_seed(args) -> int:
    seed = args.seed if getattr(args, "seed", None) is not None else get_settings().default_seed
    if seed < 0:
        raise InvalidArgumentError(f"--seed must be non-negative, got {seed}")
    return seed


def header_flag(args) -> Optional[bool]:
    return False if getattr(args, "no_header", False) else None


def resolve_output(path: Union[str, Path]) -> Path:
    """Relative output paths resolve under ALBSCREEN_OUTPUT_DIR"""
    path = Path(path)
    if path.is_absolute():
        return path
    return Path(get_settings().output_dir) / path


# ============================================================================
# REPORT HELPERS
# ============================================================================

class RunClock:
    """Wall-clock timing kept apart from reproducible report content"""

    def __init__(self):
        self.started = datetime.now(timezone.utc)
        self._t0 = time.perf_counter()

    def timing(self) -> RunTiming:
        return RunTiming(
            started_at=self.started.isoformat(),
            finished_at=datetime.now(timezone.utc).isoformat(),
            elapsed_seconds=round(time.perf_counter() - self._t0, 6),
        )


def input_record(path: Union[str, Path], dataset: Optional[Dataset] = None, rows: int = 0, features: int = 0) -> InputRecord:
    if dataset is None:
        return InputRecord(path=str(path), sha256=file_sha256(path), rows=rows, features=features)
    return InputRecord(
        path=str(path),
        sha256=file_sha256(path),
        rows=dataset.n_rows,
        features=dataset.p,
        n=dataset.n,
        m=dataset.m,
        label_column=dataset.label_column,
        label_mapping=dataset.label_mapping,
    )


def feature_stats(
        dataset: Dataset,
        selected: Sequence[int],
        alb_results: Sequence[AlbResult] = (),
        ttest_results: Sequence[TTestResult] = (),
) -> List[FeatureStat]:
    albs = {r.feature_index: r for r in alb_results}
    tests = {r.feature_index: r for r in ttest_results}
    chosen = set(selected)
    stats = []
    for j, name in enumerate(dataset.feature_names):
        a = albs.get(j)
        t = tests.get(j)
        stats.append(FeatureStat(
            feature_index=j,
            feature_name=name,
            alb=a.alb if a else None,
            bandwidth=a.bandwidth.value if a else None,
            scale_source=a.bandwidth.scale_source.value if a else None,
            degenerate=a.degenerate if a else None,
            underflow_count=a.underflow_count if a else None,
            t=t.t if t else None,
            df=t.df if t else None,
            p_value=t.p_value if t else None,
            selected=j in chosen,
        ))
    return stats


def screening_section(dataset: Dataset, report: ScreeningReport) -> ScreeningSection:
    return ScreeningSection(
        method=report.method,
        rule=report.rule,
        rule_label=report.rule.label() if report.rule is not None else "all",
        threshold=report.threshold,
        selected=report.selected,
        selected_names=[dataset.feature_names[j] for j in report.selected],
        null_summary=report.null_summary,
        cv_scores=report.cv_scores,
    )


def new_report(command: str, seed: Optional[int] = None, **parameters) -> RunReport:
    return RunReport(tool_version=__version__, command=command, seed=seed, parameters=parameters)


def write_feature_table(stats: Sequence[FeatureStat], path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    pd.DataFrame([s.model_dump() for s in stats], columns=list(FeatureStat.model_fields)).to_csv(path, index=False)
    return path


def write_selected_list(dataset: Dataset, selected: Sequence[int], path: Union[str, Path]) -> Path:
    """One selected feature per line: index<TAB>name"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{j}\t{dataset.feature_names[j]}\n" for j in selected), encoding="utf-8")
    return path


def sibling(path: Path, suffix: str) -> Path:
    """report.json -> report<suffix>"""
    return path.with_name(path.stem + suffix)


def finish_report(report: RunReport, path: Union[str, Path], clock: RunClock, warnings: Sequence[str]) -> Path:
    report = report.model_copy(update={"warnings": list(warnings), "timing": clock.timing()})
    path = write_json(report, path)
    logger.info(f"✅ Report written to {path}")
    return path
