"""The uniform result record returned by every inequality checker."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Iterable

__all__ = ["REL_TOL", "ABS_TOL", "InequalityReport", "report", "write_reports_csv", "format_number"]

REL_TOL = 1e-9
ABS_TOL = 1e-12

CLAIMS = ("theorem", "conjecture", "exploratory")


def format_number(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        return f"{x.real!r}{x.imag:+}i"
    return str(x)


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of checking ``lhs <= rhs`` on one instance.

    ``claim`` says how a failure is to be read: ``"theorem"`` (a proved
    statement, so a failure is a bug), ``"conjecture"`` (a failure is a
    finding) or ``"exploratory"`` (a theorem checker run outside the range
    where the statement is proved; nothing is asserted).
    """

    label: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    claim: str = "theorem"
    context: dict = field(default_factory=dict)

    @property
    def is_failure(self) -> bool:
        return self.claim == "theorem" and not self.holds

    @property
    def is_finding(self) -> bool:
        return self.claim == "conjecture" and not self.holds

    def context_text(self) -> str:
        return ";".join(f"{k}={format_number(v)}" for k, v in self.context.items())

    def as_row(self) -> list[str]:
        return [
            self.label,
            self.claim,
            self.context_text(),
            format_number(self.lhs),
            format_number(self.rhs),
            format_number(self.margin),
            format_number(self.holds),
        ]

    def as_line(self) -> str:
        parts = [f"label={self.label}", f"claim={self.claim}"]
        parts += [f"{k}={format_number(v)}" for k, v in self.context.items()]
        parts += [
            f"lhs={format_number(self.lhs)}",
            f"rhs={format_number(self.rhs)}",
            f"margin={format_number(self.margin)}",
            f"holds={format_number(self.holds)}",
        ]
        return " ".join(parts)


CSV_HEADER = ["label", "claim", "context", "lhs", "rhs", "margin", "holds"]


def report(label, lhs, rhs, claim="theorem", context=None, tol=REL_TOL, tol_abs=ABS_TOL) -> InequalityReport:
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}")
    lhs, rhs = float(lhs), float(rhs)
    margin = rhs - lhs
    holds = margin >= -(tol * abs(rhs) + tol_abs)
    return InequalityReport(label, lhs, rhs, margin, bool(holds), claim, dict(context or {}))


def write_reports_csv(reports: Iterable[InequalityReport], destination) -> None:
    """One CSV row per report under a fixed header; context packed as ``k=v;k=v``."""
    def _write(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in reports:
            writer.writerow(r.as_row())

    if hasattr(destination, "write"):
        _write(destination)
    else:
        with open(destination, "w", newline="", encoding="utf-8") as fh:
            _write(fh)
