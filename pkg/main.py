"""
albscreen command-line entry point

    python main.py screen --input data.csv --method alb --cutoff zero --out report.json
    python main.py --help
"""

import logging
import sys

from dotenv import load_dotenv

# Load environment variables before settings are first read
load_dotenv()

from albscreen.commands import run  # noqa: E402
from albscreen.core.log_handler import LOG_FORMAT  # noqa: E402
from albscreen.core.settings import get_settings  # noqa: E402

logging.basicConfig(
    level=get_settings().log_level.upper(),
    format=LOG_FORMAT,
)

if __name__ == "__main__":
    sys.exit(run())
