"""
experiment: run a simulation study and write its tidy CSV

    cdf          ALB values of important / unimportant / permuted features
    compare      no screening vs t-test vs ALB screening, KDE Bayes classifier
    bayes-curve  zero-cutoff ALB + KDE Bayes Rand index per training size
    holdout      nested-split comparison on --input (real data)

Metric CSV columns: experiment, scenario, size, replication, seed, method,
rule, classifier_train, metric, value. CDF CSV columns: experiment,
scenario, size, replication, seed, group, feature_index, alb, bandwidth,
ecdf.
"""

import argparse
import logging

from albscreen.commands._common import (
    RunClock,
    add_run_flags,
    cutoff_arg,
    finish_report,
    header_flag,
    input_record,
    int_list,
    label_column_arg,
    new_report,
    positive_int,
    resolve_output,
    resolve_seed,
    sibling,
)
from albscreen.core.dataio import load_csv
from albscreen.core.errors import InvalidArgumentError
from albscreen.core.experiments import EXPERIMENTS, run_holdout_compare, write_tidy_csv
from albscreen.schemas.simulation_schemas import ExperimentSpec, HoldoutSpec, Scenario

logger = logging.getLogger(__name__)

_NAMES = sorted(list(EXPERIMENTS) + ["holdout"])


def _rules(args, seed):
    """CutoffRule / TTestMode lists from repeated --cutoff and --ttest flags"""
    flags = (args.cutoff or []) + (args.ttest or [])
    if any(c.is_named_top_d for c in flags):
        raise InvalidArgumentError("experiment cutoffs need an explicit top-d=K (named sizes are per training size defaults)")
    rules = [c.resolve_alb(0, 0, seed) for c in args.cutoff or []]
    modes = [c.resolve_ttest(0, 0) for c in args.ttest or []]
    return rules, modes


def cmd_experiment(args) -> int:
    clock = RunClock()
    seed = resolve_seed(args)
    out = resolve_output(args.out)

    if args.name == "holdout":
        if not args.input:
            raise InvalidArgumentError("experiment holdout requires --input")
        dataset = load_csv(args.input, args.label_col, has_header=header_flag(args))
        spec = HoldoutSpec(replications=args.replications, seed=seed)
        frame = run_holdout_compare(dataset, spec, threads=args.threads)
        inputs = [input_record(args.input, dataset)]
    else:
        spec_kwargs = dict(
            scenario=Scenario(args.scenario),
            p=args.p,
            r=args.r,
            sizes=args.sizes,
            replications=args.replications,
            test_size=args.test_size,
            seed=seed,
        )
        rules, modes = _rules(args, seed)
        spec = ExperimentSpec(cutoff_rules=rules, ttest_modes=modes, **spec_kwargs)
        frame = EXPERIMENTS[args.name](spec, threads=args.threads)
        inputs = []

    write_tidy_csv(frame, out)
    report = new_report("experiment", seed=seed, name=args.name)
    report = report.model_copy(update={
        "inputs": inputs,
        "outputs": {"table": str(out), "spec": spec.model_dump_json()},
    })
    finish_report(report, sibling(out, ".report.json"), clock, args.collector.sorted_messages())
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "experiment",
        help="run a simulation study (cdf, compare, bayes-curve, holdout)",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--name", choices=_NAMES, required=True, help="study to run")
    parser.add_argument("--scenario", choices=[s.value for s in Scenario], default="shape",
                        help="simulated scenario (default: shape)")
    parser.add_argument("--p", type=positive_int, default=500, help="feature count (default: 500)")
    parser.add_argument("--r", type=float, default=0.5, help="importance probability (default: 0.5)")
    parser.add_argument("--sizes", type=int_list, default=[10, 20, 40],
                        help="comma-separated per-class training sizes (default: 10,20,40)")
    parser.add_argument("--replications", type=positive_int, default=1, help="replications per size (default: 1)")
    parser.add_argument("--test-size", type=positive_int, default=None,
                        help="per-class test size (default: the training size)")
    parser.add_argument("--cutoff", type=cutoff_arg, action="append", default=None,
                        help="ALB cutoff for compare; repeatable (default: perm=0.05,p,2 / top-d=n_plus_m / zero)")
    parser.add_argument("--ttest", type=cutoff_arg, action="append", default=None,
                        help="t-test mode for compare; repeatable (default: pvalue=0.005)")
    parser.add_argument("--input", default=None, help="labeled CSV for the holdout study")
    parser.add_argument("--label-col", type=label_column_arg, default="label",
                        help="label column name or 0-based index (default: label)")
    parser.add_argument("--no-header", action="store_true", help="treat the first row as data")
    parser.add_argument("--out", required=True, help="tidy CSV path")
    add_run_flags(parser)
    parser.set_defaults(handler=cmd_experiment)
