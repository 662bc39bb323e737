"""
Command-line front end

Each subcommand module exposes register(subparsers); run() dispatches and
maps failures onto exit codes:

    0  success
    2  usage error or invalid argument
    3  data error (unparseable file, schema mismatch)
    4  no viable cutoff under cross-validation
"""

import argparse
import logging
from typing import List, Optional

from pydantic import ValidationError

from albscreen import __version__
from albscreen.commands import classify, experiment, null, predict, screen, simulate
from albscreen.core.errors import AlbScreenError, InvalidArgumentError
from albscreen.core.log_handler import WarningCollector, setup_run_logger, teardown_run_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = InvalidArgumentError.exit_code

COMMANDS = (screen, simulate, classify, predict, null, experiment)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="albscreen",
        description="ALB feature screening, KDE Bayes classification and simulation studies",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the subcommand and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    collector = WarningCollector()
    root = logging.getLogger()
    root.addHandler(collector)
    args.collector = collector
    file_handler = None
    try:
        file_handler = setup_run_logger(args.log_file)
        return args.handler(args)
    except AlbScreenError as e:
        logger.error(f"❌ {e}")
        return e.exit_code
    except ValidationError as e:
        logger.error(f"❌ Invalid argument: {e}")
        return EXIT_USAGE
    finally:
        teardown_run_logger(file_handler)
        root.removeHandler(collector)
