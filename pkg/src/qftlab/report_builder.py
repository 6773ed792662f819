"""Renders command results as CSV tables or JSON documents."""

import json
import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, List, Optional, Sequence

from qftlab.common import float_digits, format_float


class ReportFormat(ABC):
    """Base class for payload formats."""

    def __init__(self, digits: Optional[int] = None):
        self.digits = digits or float_digits()

    @abstractmethod
    def render(self, payload: Any) -> str:
        """Return the payload as text, ending in a newline."""


class CsvFormat(ReportFormat):
    """Comma-separated table with a header row; ``None`` cells stay empty."""

    def __init__(self, header: Sequence[str], digits: Optional[int] = None):
        super().__init__(digits)
        self.header = list(header)

    def cell(self, value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return format_float(value, self.digits)
        return str(value)

    def render(self, payload: Sequence[Sequence[Any]]) -> str:
        lines = [",".join(self.header)]
        for row in payload:
            if len(row) != len(self.header):
                raise ValueError(f"Row has {len(row)} cells, header has {len(self.header)}")
            lines.append(",".join(self.cell(v) for v in row))
        return "\n".join(lines) + "\n"


class JsonFormat(ReportFormat):
    """JSON document with floats rounded to the configured significant digits."""

    def round(self, value: Any) -> Any:
        if isinstance(value, bool) or value is None:
            return value
        if isinstance(value, float):
            if not math.isfinite(value):
                return format_float(value, self.digits)
            return float(format_float(value, self.digits))
        if isinstance(value, complex):
            return {"re": self.round(value.real), "im": self.round(value.imag)}
        if isinstance(value, dict):
            return {str(k): self.round(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self.round(v) for v in value]
        return value

    def render(self, payload: Any) -> str:
        return json.dumps(self.round(payload), indent=2, sort_keys=False) + "\n"


class ReportBuilder:
    """Writes a rendered payload to stdout and, optionally, to a file."""

    def __init__(self, report_format: ReportFormat, output: Optional[str] = None):
        self.format = report_format
        self.output = Path(output) if output else None

    def build(self, payload: Any) -> str:
        text = self.format.render(payload)
        if self.output is not None:
            self.output.parent.mkdir(parents=True, exist_ok=True)
            with open(self.output, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        return text

    def emit(self, payload: Any) -> str:
        """Render ``payload``, write it out and print it."""
        text = self.build(payload)
        print(text, end="")
        return text


def emit_json(payload: Any, output: Optional[str] = None) -> str:
    return ReportBuilder(JsonFormat(), output).emit(payload)


def emit_csv(header: Sequence[str], rows: List[Sequence[Any]], output: Optional[str] = None) -> str:
    return ReportBuilder(CsvFormat(header), output).emit(rows)
