import csv
import io
import logging
import sys
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from teichranders.config import CONFIG
from teichranders.core.errors import UsageError
from teichranders.schemas.reports import Record, RayReport

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")


class OutputService:
    """
    Renders records as JSON or CSV and writes them to a file or stdout.
    Rendering is deterministic: identical records give identical bytes.
    """

    def __init__(self):
        self.float_format = CONFIG.schema.CSV_FLOAT_FORMAT

    def _cell(self, value) -> str:
        if isinstance(value, float):
            return format(value, self.float_format)
        return str(value)

    def render_csv(
        self,
        rows: Iterable[Dict[str, object]],
        columns: Sequence[str],
        trailer: Optional[List[str]] = None,
    ) -> str:
        """Headers first, one line per row; optional '#' trailer lines after the table."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([self._cell(row[column]) for column in columns])
        for line in trailer or []:
            buffer.write(f"# {line}\n")
        return buffer.getvalue()

    def render_ray(self, report: RayReport, fmt: str) -> str:
        if fmt == "json":
            return report.to_json() + "\n"
        trailer = [
            f"schema={report.schema_version}",
            f"verdict={report.verdict.value}",
            f"limit_estimate={self._cell(report.limit_estimate)}",
            f"walsh_value={self._cell(report.walsh_value)}",
        ]
        return self.render_csv(
            report.rows(), ("t", "delta_omega", "decay", "im"), trailer
        )

    def render_record(self, record: Record) -> str:
        return record.to_json() + "\n"

    def check_format(self, fmt: str) -> str:
        if fmt not in FORMATS:
            raise UsageError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
        return fmt

    def write(self, text: str, path: Optional[Path] = None) -> None:
        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot write output file {path}: {e}") from None
        logger.info("wrote %d bytes to %s", len(text.encode("utf-8")), path)


output_service = OutputService()
