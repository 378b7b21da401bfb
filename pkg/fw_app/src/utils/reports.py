"""Module provides writers of the CSV tables and JSON reports."""

import csv
import io
import json
import math
import sys
from typing import Any, Iterable, Mapping, Sequence

from .fs import ensure_parent


def format_number(value: Any) -> str:
    """
    Shortest round-trip text of a number, integers stay integers.
    :param value: number.
    :return: text.
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if value == 0:
        # no negative zero in tables
        return "0.0"
    return repr(value)


def format_exact(value: float) -> str:
    """
    Decimal string with 17 significant digits.
    :param value: number.
    :return: text.
    """
    value = float(value)
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return format(value + 0.0, ".17g")


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """
    Render a table with a one-line header and newline line endings.
    :param header: column names.
    :param rows: table rows.
    :return: CSV text.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(x) if isinstance(x, (int, float)) else x for x in row])
    return buffer.getvalue()


def render_json(payload: Mapping[str, Any]) -> str:
    """
    Render a report keeping the key order of the payload.
    :param payload: report.
    :return: JSON text.
    """
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def emit(text: str, path: str = None) -> None:
    """
    Write text to a file or to standard output.
    :param text: content.
    :param path: output path, standard output when omitted or "-".
    """
    if not path or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    ensure_parent(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
