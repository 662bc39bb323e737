"""
predict: apply a saved KDE Bayes model (from classify --model-out) to a CSV
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
    resolve_output,
    sibling,
)
from albscreen.commands.classify import predict_table
from albscreen.core import bayes
from albscreen.core.dataio import file_sha256

logger = logging.getLogger(__name__)


def cmd_predict(args) -> int:
    clock = RunClock()
    model = bayes.load_model(args.model)
    out = resolve_output(args.out)
    section = predict_table(model, args.input, args.label_col, header_flag(args), out)

    report = new_report("predict", model_sha256=file_sha256(args.model))
    report = report.model_copy(update={
        "inputs": [input_record(args.input, rows=section.test_rows, features=len(model.feature_names))],
        "classification": section,
        "outputs": {"predictions": str(out)},
    })
    finish_report(report, sibling(out, ".report.json"), clock, args.collector.sorted_messages())
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "predict",
        help="predict a CSV with a saved model",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--model", required=True, help="model JSON written by classify --model-out")
    add_input_flags(parser)
    parser.add_argument("--out", required=True, help="predictions CSV path")
    add_run_flags(parser, seed=False)
    parser.set_defaults(handler=cmd_predict)
