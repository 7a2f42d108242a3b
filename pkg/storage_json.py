"""
JSON report storage: one JSON array of reports plus a plain-text summary
"""

import json
import os
import logging
from typing import Any, Dict, List, Sequence

from report import Report

logger = logging.getLogger(__name__)


class JSONReportStorage:
    def __init__(self, out_path: str):
        self.out_path = out_path
        root, _ = os.path.splitext(out_path)
        self.summary_path = root + '.txt'

    def _read_file(self, path: str) -> List[Dict[str, Any]]:
        try:
            with open(path, 'r') as f:
                content = f.read().strip()
                if not content:
                    logger.warning(f"{path} is empty, returning no reports")
                    return []
                return json.loads(content)
        except FileNotFoundError:
            return []
        except json.JSONDecodeError as e:
            logger.error(f"JSON decode error reading {path}: {e}")
            return []

    def _write_file(self, path: str, text: str) -> bool:
        try:
            with open(path, 'w') as f:
                f.write(text)
            return True
        except OSError as e:
            logger.error(f"Error writing {path}: {e}")
            return False

    def serialize(self, reports: Sequence[Report], timings: bool = False) -> str:
        data = [report.to_dict(timings) for report in reports]
        return json.dumps(data, indent=2, ensure_ascii=False) + '\n'

    def summary(self, reports: Sequence[Report]) -> str:
        lines = []
        for report in reports:
            counts = ', '.join(f"{k}={v}" for k, v in sorted(report.counts.items()))
            line = f"{report.check}: {'pass' if report.passed else 'FAIL'}"
            if counts:
                line += f" ({counts})"
            if report.fitted:
                line += ' fitted ' + ' '.join(f"{k}={v}" for k, v in report.fitted.items())
            lines.append(line)
            if report.counterexample:
                for key, value in report.counterexample.items():
                    lines.append(f"    {key}: {value}")
        failed = sum(1 for r in reports if not r.passed)
        lines.append(f"{len(reports)} checks, {failed} failed")
        return '\n'.join(lines) + '\n'

    def save_reports(self, reports: Sequence[Report], timings: bool = False) -> bool:
        written = self._write_file(self.out_path, self.serialize(reports, timings))
        written = self._write_file(self.summary_path, self.summary(reports)) and written
        if written:
            logger.info(f"Saved {len(reports)} reports to {self.out_path}")
        return written

    def load_reports(self) -> List[Dict[str, Any]]:
        return self._read_file(self.out_path)
