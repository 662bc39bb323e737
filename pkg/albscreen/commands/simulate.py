"""
simulate: write a synthetic two-class dataset and its importance mask

Outputs <prefix>.csv (features x0..x{p-1} plus a 0/1 label column),
<prefix>.mask.txt (one 0/1 per feature) and <prefix>.report.json.
"""

import argparse
import logging

from albscreen.commands._common import (
    RunClock,
    add_run_flags,
    finish_report,
    new_report,
    positive_int,
    resolve_output,
    resolve_seed,
)
from albscreen.core.dataio import file_sha256
from albscreen.core.simgen import generate, write_simulated
from albscreen.schemas.simulation_schemas import Scenario, ScenarioConfig

logger = logging.getLogger(__name__)


def cmd_simulate(args) -> int:
    clock = RunClock()
    seed = resolve_seed(args)
    config = ScenarioConfig(
        scenario=Scenario(args.scenario),
        m=args.m,
        n=args.n,
        p=args.p,
        r=args.r,
        seed=seed,
    )
    sim = generate(config, threads=args.threads)
    prefix = resolve_output(args.out_prefix)
    csv_path, mask_path = write_simulated(sim, prefix)

    report = new_report("simulate", seed=seed, scenario=config.scenario.value,
                        m=config.m, n=config.n, p=config.p, r=config.r,
                        important=sim.important)
    report = report.model_copy(update={
        "outputs": {
            "data": str(csv_path),
            "data_sha256": file_sha256(csv_path),
            "mask": str(mask_path),
            "mask_sha256": file_sha256(mask_path),
        },
    })
    finish_report(report, f"{prefix}.report.json", clock, args.collector.sorted_messages())
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "simulate",
        help="generate a location, scale or shape scenario dataset",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--scenario", choices=[s.value for s in Scenario], required=True,
                        help="location: N(0,1) vs N(1,1); scale: N(0,1) vs N(0,9); "
                             "shape: t(4) vs 1/2 N(-2.5,1) + 1/2 N(2.5,1)")
    parser.add_argument("--m", type=positive_int, required=True, help="label-1 sample count (>= 2)")
    parser.add_argument("--n", type=positive_int, required=True, help="label-0 sample count (>= 2)")
    parser.add_argument("--p", type=positive_int, required=True, help="feature count")
    parser.add_argument("--r", type=float, required=True, help="probability that a feature is important, in [0, 1]")
    parser.add_argument("--out-prefix", required=True, help="output path prefix")
    add_run_flags(parser)
    parser.set_defaults(handler=cmd_simulate)
