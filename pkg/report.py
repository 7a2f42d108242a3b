"""
Report record produced by every verification check.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class Report:
    check: str
    passed: bool = True
    params: Dict[str, Any] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    counterexample: Optional[Dict[str, Any]] = None
    fitted: Optional[Dict[str, str]] = None
    notes: Optional[str] = None
    millis: Optional[int] = None

    def count(self, key: str, amount: int = 1):
        self.counts[key] = self.counts.get(key, 0) + amount

    def fail(self, counterexample: Dict[str, Any]):
        """Record a failure; the first counterexample found is kept."""
        self.passed = False
        if self.counterexample is None:
            self.counterexample = counterexample

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        """Serializable form with a fixed key order."""
        data: Dict[str, Any] = {
            'check': self.check,
            'params': self.params,
            'counts': dict(sorted(self.counts.items())),
            'pass': self.passed,
        }
        if self.fitted is not None:
            data['fitted_coefficients'] = self.fitted
        if self.notes:
            data['notes'] = self.notes
        if self.counterexample is not None:
            data['counterexample'] = self.counterexample
        if timings and self.millis is not None:
            data['millis'] = self.millis
        return data
