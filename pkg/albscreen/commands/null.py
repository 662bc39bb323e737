"""
null: write a permutation-null sample of ALB* values and its digest

The JSON output holds every B x D value (covariate-major), the sampled
covariates and quantile summary.
"""

import argparse
import logging

from albscreen.commands._common import (
    RunClock,
    add_input_flags,
    add_run_flags,
    finish_report,
    header_flag,
    input_record,
    new_report,
    positive_int,
    resolve_output,
    resolve_seed,
    sibling,
)
from albscreen.core.cutoff import permutation_null
from albscreen.core.dataio import load_csv
from albscreen.core.serializer_utils import write_json

logger = logging.getLogger(__name__)


def cmd_null(args) -> int:
    clock = RunClock()
    seed = resolve_seed(args)
    dataset = load_csv(args.input, args.label_col, has_header=header_flag(args))
    null = permutation_null(dataset, args.covariates, args.permutations, seed, threads=args.threads)

    out = resolve_output(args.out)
    write_json({"sample": null, "summary": null.summary()}, out)
    report = new_report("null", seed=seed, covariates=args.covariates, permutations=args.permutations)
    report = report.model_copy(update={
        "inputs": [input_record(args.input, dataset)],
        "outputs": {"null": str(out)},
    })
    finish_report(report, sibling(out, ".report.json"), clock, args.collector.sorted_messages())
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "null",
        help="sample permuted-label ALB values",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_input_flags(parser)
    parser.add_argument("--covariates", "-B", type=positive_int, required=True,
                        help="B, features sampled without replacement")
    parser.add_argument("--permutations", "-D", type=positive_int, default=1,
                        help="D, label permutations per feature (default: 1)")
    parser.add_argument("--out", required=True, help="JSON output path")
    add_run_flags(parser)
    parser.set_defaults(handler=cmd_null)
