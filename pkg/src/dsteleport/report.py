"""Verification report: one record per check, printable and JSON-serializable."""

from __future__ import annotations

import json
from dataclasses import dataclass

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass(frozen=True)
class Check:
    """Outcome of a single verification check.

    ``deviation`` is the measured worst-case departure from the ideal;
    ``tolerance`` is the bound it was compared against (None for purely
    informational observations).
    """

    name: str
    status: str
    deviation: float
    tolerance: float | None = None
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def hard_checks(self) -> list:
        return [c for c in self.checks if c.status != INFO]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "deviation": c.deviation,
                    "tolerance": c.tolerance,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_table(self) -> str:
        """Human-readable table; derived from the same records as the JSON."""
        width = max(len(c.name) for c in self.checks) if self.checks else 4
        lines = [f"{'check':<{width}}  {'status':<6}  {'deviation':>12}  {'tolerance':>12}"]
        lines.append("-" * len(lines[0]))
        for c in self.checks:
            tol = f"{c.tolerance:.3e}" if c.tolerance is not None else "-"
            lines.append(
                f"{c.name:<{width}}  {c.status:<6}  {c.deviation:>12.3e}  {tol:>12}"
            )
            if c.detail:
                lines.append(f"{'':<{width}}    {c.detail}")
        verdict = "ALL HARD CHECKS PASSED" if self.passed else "HARD CHECK FAILURES PRESENT"
        lines.append("-" * len(lines[0]))
        lines.append(verdict)
        return "\n".join(lines)


def graded(name: str, deviation: float, tolerance: float, detail: str = "") -> Check:
    """Pass/fail check from a measured deviation and its bound."""
    status = PASS if deviation <= tolerance else FAIL
    return Check(name=name, status=status, deviation=float(deviation),
                 tolerance=float(tolerance), detail=detail)


def informational(name: str, deviation: float, detail: str = "") -> Check:
    return Check(name=name, status=INFO, deviation=float(deviation), detail=detail)
