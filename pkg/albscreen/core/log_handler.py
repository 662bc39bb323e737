"""
Log handler that mirrors a run's log lines to a file
"""

import logging
from pathlib import Path
from typing import Optional, Union

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class RunLogHandler(logging.Handler):
    """Append log records to a per-run file"""

    def __init__(self, log_file: Union[str, Path]):
        super().__init__()
        self.log_file = Path(log_file)
        self.log_file.parent.mkdir(parents=True, exist_ok=True)
        # Start each run with an empty file
        self.log_file.write_text("", encoding="utf-8")

    def emit(self, record):
        try:
            msg = self.format(record)
            with open(self.log_file, 'a', encoding="utf-8") as f:
                f.write(msg + '\n')
        except Exception:
            self.handleError(record)


def setup_run_logger(log_file: Optional[Union[str, Path]], logger_instance: Optional[logging.Logger] = None):
    """Attach a RunLogHandler to logger_instance (root by default); None disables"""
    if not log_file:
        return None
    handler = RunLogHandler(log_file)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    (logger_instance or logging.getLogger()).addHandler(handler)
    return handler


def teardown_run_logger(handler: Optional[RunLogHandler], logger_instance: Optional[logging.Logger] = None):
    if handler is not None:
        (logger_instance or logging.getLogger()).removeHandler(handler)
        handler.close()


class WarningCollector(logging.Handler):
    """Keeps WARNING-and-above messages so reports can list them"""

    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages = []

    def emit(self, record):
        self.messages.append(record.getMessage())

    def sorted_messages(self):
        """Unique messages in sorted order (independent of thread scheduling)"""
        return sorted(set(self.messages))
