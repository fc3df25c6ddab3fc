"""Structured outcomes of identity checks, with deterministic JSON rendering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

GRAMMAR_VERSION = "1"


@dataclass
class VerificationReport:
    """Outcome of a single identity/property check.

    ``residual`` is the canonical text form of the leftover element or
    polynomial when the check fails (None when it passes), so failures are
    reproducible from the report alone.
    """

    name: str
    passed: bool
    residual: Optional[str] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": self.residual,
            "details": self.details,
        }


@dataclass
class ReportDocument:
    """A suite-level report: ordered checks plus the parameters that produced them."""

    suite: str
    checks: List[VerificationReport] = field(default_factory=list)
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: VerificationReport) -> VerificationReport:
        self.checks.append(check)
        return check

    def to_dict(self, with_timing: bool = False) -> Dict[str, Any]:
        doc = {
            "suite": self.suite,
            "grammar_version": GRAMMAR_VERSION,
            "seed": self.seed,
            "params": self.params,
            "passed": self.passed,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.name)],
        }
        if with_timing:
            doc["generated_at"] = time.time()
        return doc

    def to_json(self, with_timing: bool = False) -> str:
        # Stable key order and separators: identical seed+options give
        # byte-identical output (timing is opt-in and breaks determinism).
        return json.dumps(self.to_dict(with_timing), sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in sorted(self.checks, key=lambda c: c.name):
            status = "ok" if c.passed else "FAIL"
            lines.append(f"  [{status}] {c.name}")
            if not c.passed and c.residual is not None:
                lines.append(f"         residual: {c.residual}")
        return "\n".join(lines)
