"""
Report storage - selects where verification reports are written
"""

import os
import logging

from errors import ConfigError

logger = logging.getLogger(__name__)


def Storage(out_path: str = None):
    """
    Storage facade that returns the report backend for the configured output.

    The report file defaults to report.json inside DIFFEXT_REPORT_DIR, falling
    back to the working directory when that directory cannot be created. An
    explicit out_path whose directory cannot be created is a ConfigError.
    """
    from storage_json import JSONReportStorage

    explicit = bool(out_path)
    if not explicit:
        report_dir = os.getenv('DIFFEXT_REPORT_DIR', 'reports').strip() or 'reports'
        out_path = os.path.join(report_dir, 'report.json')
    directory = os.path.dirname(out_path)
    if directory:
        try:
            os.makedirs(directory, exist_ok=True)
        except OSError as e:
            if explicit:
                raise ConfigError(f"cannot create report directory {directory}: {e}") from e
            logger.warning(f"Cannot create report directory {directory}: {e}")
            logger.warning(f"Falling back to the working directory for {os.path.basename(out_path)}")
            out_path = os.path.basename(out_path)
    logger.info(f"Writing reports to {out_path}")
    return JSONReportStorage(out_path)
