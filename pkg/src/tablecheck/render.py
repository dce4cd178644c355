"""Table-to-text serialization for prompts.

Four representations are supported: Markdown pipe table, HTML, JSON, and
naturalized sentences. Rendering is deterministic: the same table yields
byte-identical output.
"""

from __future__ import annotations

import html
import json
import re
from enum import Enum

from .errors import MalformedRender
from .table import ROW_INDEX_COLUMN, Table


class TableFormat(Enum):
    MARKDOWN = "markdown"
    HTML = "html"
    JSON = "json"
    NATURALIZED = "naturalized"


# The naturalized templates are deliberately centralized so experiments can
# vary the wording in one place.
NATURALIZED_TITLE_TEMPLATE = "The table is titled {title}."
NATURALIZED_ROW_TEMPLATE = "Row {label}: {fields}."
NATURALIZED_FIELD_TEMPLATE = "{column} is {value}"


def _escape_markdown_cell(cell: str) -> str:
    return cell.replace("|", "\\|")


def _render_markdown(table: Table) -> str:
    lines = [
        "| " + " | ".join(_escape_markdown_cell(c) for c in table.columns) + " |",
        "| " + " | ".join("---" for _ in table.columns) + " |",
    ]
    for row in table.rows:
        lines.append("| " + " | ".join(_escape_markdown_cell(c) for c in row) + " |")
    return "\n".join(lines)


def _render_html(table: Table) -> str:
    parts = ["<table>", "<thead>", "<tr>"]
    parts.extend(f"<th>{html.escape(c)}</th>" for c in table.columns)
    parts.extend(["</tr>", "</thead>", "<tbody>"])
    for row in table.rows:
        parts.append("<tr>" + "".join(f"<td>{html.escape(c)}</td>" for c in row) + "</tr>")
    parts.extend(["</tbody>", "</table>"])
    return "\n".join(parts)


def _render_json(table: Table) -> str:
    obj: dict = {"columns": list(table.columns), "rows": [list(r) for r in table.rows]}
    if table.title is not None:
        obj["title"] = table.title
    return json.dumps(obj, ensure_ascii=False)


def naturalize_row(table: Table, position: int) -> str:
    """One sentence for one data row, keyed to its row_index label."""
    label = table.row_label(position)
    start = 1 if table.row_index_injected else 0
    fields = ", ".join(
        NATURALIZED_FIELD_TEMPLATE.format(column=col, value=val)
        for col, val in zip(table.columns[start:], table.rows[position][start:])
    )
    return NATURALIZED_ROW_TEMPLATE.format(label=label, fields=fields)


def _render_naturalized(table: Table) -> str:
    sentences = []
    if table.title is not None:
        sentences.append(NATURALIZED_TITLE_TEMPLATE.format(title=table.title))
    sentences.extend(naturalize_row(table, i) for i in range(table.row_count))
    return "\n".join(sentences)


def render(table: Table, fmt: TableFormat) -> str:
    """Serialize ``table`` in the requested prompt representation."""
    if fmt is TableFormat.MARKDOWN:
        return _render_markdown(table)
    if fmt is TableFormat.HTML:
        return _render_html(table)
    if fmt is TableFormat.JSON:
        return _render_json(table)
    return _render_naturalized(table)


_DECIMAL = re.compile(r"^\d+$")


def _looks_injected(columns: list[str], rows: list[list[str]]) -> bool:
    return (
        bool(columns)
        and columns[0] == ROW_INDEX_COLUMN
        and all(row[0] == str(i) for i, row in enumerate(rows))
        and all(_DECIMAL.match(row[0]) for row in rows)
    )


def parse_json_render(text: str) -> Table:
    """Inverse of ``render(..., JSON)``; structural round-trip guaranteed.

    The row_index_injected flag is not part of the wire schema, so it is
    inferred: a leading ``row_index`` column holding exactly "0".."n-1".
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRender(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "columns" not in obj or "rows" not in obj:
        raise MalformedRender("missing required keys 'columns' and 'rows'")

    columns = obj["columns"]
    rows = obj["rows"]
    if not isinstance(columns, list) or not isinstance(rows, list):
        raise MalformedRender("'columns' and 'rows' must be lists")
    try:
        return Table(
            columns=tuple(columns),
            rows=tuple(tuple(r) for r in rows),
            title=obj.get("title"),
            row_index_injected=_looks_injected(columns, rows),
        )
    except (ValueError, TypeError) as exc:
        raise MalformedRender(str(exc)) from exc
