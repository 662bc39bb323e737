"""
classify: screen a training CSV, fit the KDE Bayes classifier on the
surviving features and predict a test CSV

The predictions CSV (--out) holds one row per test row: posterior
probability of the label-0 class and the predicted label in its original
form, plus the true label when the test file has one. Test files must have
the training feature columns.
"""

import argparse
import logging
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from albscreen.commands._common import (
    RunClock,
    add_input_flags,
    add_run_flags,
    add_screening_flags,
    finish_report,
    header_flag,
    input_record,
    new_report,
    resolve_output,
    resolve_seed,
    screening_section,
    sibling,
)
from albscreen.commands.screen import screen_dataset
from albscreen.core import bayes
from albscreen.core.dataio import bind_labels, load_csv, read_table
from albscreen.core.errors import SchemaError
from albscreen.core.metrics import confusion, rand_index
from albscreen.core.settings import get_settings
from albscreen.schemas.model_schemas import BayesKdeModel
from albscreen.schemas.report_schemas import ClassificationSection

logger = logging.getLogger(__name__)


def predict_table(model: BayesKdeModel, path, label_column, has_header: Optional[bool], out: Path) -> ClassificationSection:
    """
    Predict every row of a CSV with a fitted model and write the predictions

    Returns:
        classification summary (Rand index and confusion when labels exist)
    """
    table = read_table(path, label_column, has_header, require_labels=False)
    if tuple(table.feature_names) != tuple(model.feature_names):
        raise SchemaError(
            f"Feature columns of {path} do not match the training columns "
            f"({len(table.feature_names)} vs {len(model.feature_names)})"
        )
    posteriors = bayes.posterior_many(model, table.features)
    predicted = bayes.predict_many(model, table.features)

    inverse = {v: k for k, v in model.label_mapping.items()}
    frame = pd.DataFrame({
        "row": np.arange(table.features.shape[0]),
        "posterior_label0": posteriors,
        "predicted": [inverse.get(int(v), str(int(v))) for v in predicted],
    })

    section = ClassificationSection(
        kernel=model.kernel.value,
        prior0=model.prior0,
        prior1=model.prior1,
        model_features=model.selected,
        dropped=model.dropped,
        test_rows=int(table.features.shape[0]),
    )
    if table.labels is not None:
        truth, _ = bind_labels(table.labels, model.label_mapping or None)
        frame["truth"] = table.labels
        counts = confusion(predicted, truth, positive_label=1)
        section = section.model_copy(update={
            "rand_index": rand_index(predicted, truth),
            "confusion": counts,
            "positive_label": inverse.get(1, "1"),
        })
        logger.info(f"✅ Rand index {section.rand_index:.4f} on {section.test_rows} rows")

    out.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(out, index=False)
    return section


def cmd_classify(args) -> int:
    clock = RunClock()
    seed = resolve_seed(args)
    has_header = header_flag(args)
    train = load_csv(args.train, args.label_col, has_header=has_header)

    screening = screen_dataset(train, args, seed)
    model = bayes.fit(train, screening.selected, kernel=get_settings().kernel)

    out = resolve_output(args.out)
    section = predict_table(model, args.test, args.label_col, has_header, out)
    outputs = {"predictions": str(out)}
    if args.model_out:
        outputs["model"] = str(bayes.save_model(model, resolve_output(args.model_out)))

    report = new_report("classify", seed=seed, method=args.method,
                        cutoff=(args.cutoff.text if args.cutoff else None))
    report = report.model_copy(update={
        "inputs": [input_record(args.train, train), input_record(args.test, rows=section.test_rows, features=train.p)],
        "screening": screening_section(train, screening),
        "classification": section,
        "outputs": outputs,
    })
    report_path = resolve_output(args.report) if args.report else sibling(out, ".report.json")
    finish_report(report, report_path, clock, args.collector.sorted_messages())
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "classify",
        help="screen, fit the KDE Bayes classifier and predict a test set",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_input_flags(parser, flag="--train")
    parser.add_argument("--test", required=True, help="CSV to predict (labels optional)")
    add_screening_flags(parser)
    parser.add_argument("--out", required=True, help="predictions CSV path")
    parser.add_argument("--model-out", default=None, help="also save the fitted model as JSON")
    parser.add_argument("--report", default=None, help="JSON report path (default: <out>.report.json)")
    add_run_flags(parser)
    parser.set_defaults(handler=cmd_classify)
