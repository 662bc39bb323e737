"""
screen: select features of a labeled CSV by ALB or Welch t-test

Writes the JSON report at --out, plus <out>.selected.txt (index<TAB>name per
selected feature) and <out>.features.csv (per-feature statistics).
"""

import argparse
import logging

from albscreen.commands._common import (
    RunClock,
    add_input_flags,
    add_run_flags,
    add_screening_flags,
    cutoff_arg,
    feature_stats,
    finish_report,
    header_flag,
    input_record,
    new_report,
    resolve_output,
    resolve_seed,
    screening_section,
    sibling,
    write_feature_table,
    write_selected_list,
)
from albscreen.core.alb import alb_all
from albscreen.core.cutoff import screen_alb
from albscreen.core.dataio import Dataset, load_csv
from albscreen.core.ttest import ttest_results, ttest_screen
from albscreen.schemas.screening_schemas import ScreeningReport

logger = logging.getLogger(__name__)


def screen_dataset(dataset: Dataset, args, seed: int) -> ScreeningReport:
    """Screen with the method and cutoff flags of args"""
    dataset.require_both_classes(2)
    cutoff = args.cutoff or cutoff_arg("zero" if args.method == "alb" else "pvalue=0.05")
    if args.method == "ttest":
        return ttest_screen(dataset, cutoff.resolve_ttest(dataset.m, dataset.n, dataset.p))

    results = alb_all(dataset, threads=args.threads)
    available = sum(1 for r in results if not r.degenerate)
    rule = cutoff.resolve_alb(dataset.m, dataset.n, seed, available=available)
    report = screen_alb(dataset, rule, threads=args.threads, results=results)
    return report.model_copy(update={"ttest_results": ttest_results(dataset)})


def cmd_screen(args) -> int:
    clock = RunClock()
    seed = resolve_seed(args)
    dataset = load_csv(args.input, args.label_col, has_header=header_flag(args))

    screening = screen_dataset(dataset, args, seed)
    if args.method == "ttest" and not screening.alb_results:
        screening = screening.model_copy(update={"alb_results": alb_all(dataset, threads=args.threads)})

    out = resolve_output(args.out)
    stats = feature_stats(dataset, screening.selected, screening.alb_results, screening.ttest_results)
    selected_path = write_selected_list(dataset, screening.selected, sibling(out, ".selected.txt"))
    table_path = write_feature_table(stats, sibling(out, ".features.csv"))

    report = new_report("screen", seed=seed, method=args.method,
                        cutoff=(args.cutoff.text if args.cutoff else None))
    report = report.model_copy(update={
        "inputs": [input_record(args.input, dataset)],
        "screening": screening_section(dataset, screening),
        "features": stats,
        "outputs": {"selected": str(selected_path), "features": str(table_path)},
    })
    finish_report(report, out, clock, args.collector.sorted_messages())
    logger.info(f"✅ Selected {screening.n_selected} of {dataset.p} features")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "screen",
        help="screen features by ALB or Welch t-test",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_input_flags(parser)
    add_screening_flags(parser)
    parser.add_argument("--out", required=True, help="JSON report path")
    add_run_flags(parser)
    parser.set_defaults(handler=cmd_screen)
