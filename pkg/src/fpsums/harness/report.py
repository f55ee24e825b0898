"""Report rows, check outcomes, and CSV / JSONL emission."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

CSV_COLUMNS = (
    "p",
    "family",
    "sizes",
    "quantity",
    "value",
    "reference_expr",
    "reference_value",
    "ratio",
    "range_ok",
    "seed",
    "elapsed_ms",
)


@dataclass
class ReportRow:
    p: int
    family: str
    sizes: str
    quantity: str
    value: int | float
    reference_expr: str
    reference_value: float
    ratio: float
    range_ok: bool
    seed: int
    elapsed_ms: float | None = None

    def to_json(self) -> str:
        # strict JSON has no NaN; a zero reference is written as null
        data = {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in asdict(self).items()}
        return json.dumps(data, allow_nan=False)

    @classmethod
    def from_json(cls, line: str) -> "ReportRow":
        data = json.loads(line)
        if not isinstance(data, dict):
            raise ValueError("a report row is a JSON object")
        unknown = set(data) - set(CSV_COLUMNS)
        if unknown:
            raise ValueError(f"unknown row fields {sorted(unknown)}")
        for key in ("value", "reference_value", "ratio"):
            if data.get(key, 0) is None:
                data[key] = math.nan
        return cls(**data)


def ratio(value, reference: float) -> float:
    if reference == 0:
        return math.nan
    return float(value) / reference


@dataclass
class CheckOutcome:
    name: str
    instances: int = 0
    failures: int = 0
    skipped: int = 0
    worst_slack: float | int | None = None
    reproducers: list = field(default_factory=list)

    def record(self, ok: bool, slack, reproducer: dict) -> None:
        self.instances += 1
        if slack is not None and (self.worst_slack is None or slack < self.worst_slack):
            self.worst_slack = slack
        if not ok:
            self.failures += 1
            self.reproducers.append(reproducer)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: {self.instances} instances, {self.failures} failures, "
            f"{self.skipped} skipped, worst slack {self.worst_slack}"
        )


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def emit_report(rows, fmt: str, path) -> None:
    """Write rows as CSV (fixed column order) or JSONL, values at full precision."""
    path = Path(path)
    if fmt == "csv":
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                d = asdict(row)
                writer.writerow([_csv_cell(d[c]) for c in CSV_COLUMNS])
    elif fmt == "jsonl":
        with path.open("w") as fh:
            for row in rows:
                fh.write(row.to_json() + "\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def read_csv(path) -> list[dict]:
    with Path(path).open(newline="") as fh:
        return list(csv.DictReader(fh))


def read_jsonl(path) -> list[ReportRow]:
    with Path(path).open() as fh:
        return [ReportRow.from_json(line) for line in fh if line.strip()]
