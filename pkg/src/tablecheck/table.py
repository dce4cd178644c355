"""Table parsing and normalization.

Raw delimited text goes in, a normalized rectangular ``Table`` comes out:
delimiter unified, cells cleaned, ragged rows repaired, header names made
unique, and (one step later) a synthetic ``row_index`` column injected so a
model can reference cells unambiguously.

All values here are immutable; every operation is a pure function.
"""

from __future__ import annotations

import csv
import io
import re
from collections import Counter
from dataclasses import dataclass, replace
from enum import Enum

from .errors import EmptyTable, NoDelimiter, TableTooLarge

ROW_INDEX_COLUMN = "row_index"

# Caps protect the prompt length budget downstream.
MAX_ROWS = 500
MAX_COLUMNS = 64

DELIMITER_CANDIDATES = (",", ";", "\t", "|")

# Control characters that are not whitespace get dropped outright; the
# whitespace ones are handled by the collapse step.
_CONTROL_CHARS = re.compile(r"[\x00-\x08\x0e-\x1f\x7f-\x9f]")


@dataclass(frozen=True)
class Table:
    """Normalized rectangular grid of text cells.

    Invariants enforced on construction: every row has exactly
    ``len(columns)`` cells, column names are unique, and if
    ``row_index_injected`` then column 0 is named ``row_index``. The
    contiguity of row_index values (``"0"``..``"n-1"``) is guaranteed by
    ``inject_row_index`` but deliberately not by the constructor: pruned
    subtables keep their original row_index values so cell references
    still map back to the full table.
    """

    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    title: str | None = None
    row_index_injected: bool = False

    def __post_init__(self) -> None:
        if not self.columns:
            raise ValueError("table must have at least one column")
        width = len(self.columns)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} cells, expected {width}")
        if len(set(self.columns)) != width:
            raise ValueError("column names must be unique")
        if self.row_index_injected and self.columns[0] != ROW_INDEX_COLUMN:
            raise ValueError("row_index_injected requires column 0 to be 'row_index'")

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def row_label(self, position: int) -> str:
        """The index a model should use to reference this row.

        The injected row_index value when present (preserved across pruning),
        otherwise the positional index.
        """
        if self.row_index_injected:
            return self.rows[position][0]
        return str(position)


class RawTableKind(Enum):
    CSV_TEXT = "csv_text"
    IMAGE = "image"


@dataclass(frozen=True)
class RawTableInput:
    """Table payload as it arrives at the boundary, before normalization."""

    payload: bytes
    kind: RawTableKind
    declared_title: str | None = None

    def __post_init__(self) -> None:
        if not self.payload:
            raise ValueError("payload must be non-empty")


@dataclass(frozen=True)
class CellRef:
    """Reference to one data cell: 0-based row over data rows, column by name."""

    row_index: int
    column_name: str


def clean_cell(value: str) -> str:
    """Trim, collapse internal whitespace runs to one space, strip control chars."""
    return " ".join(_CONTROL_CHARS.sub("", value).split())


def _field_count(line: str, delimiter: str) -> int:
    parsed = list(csv.reader([line], delimiter=delimiter))
    return len(parsed[0]) if parsed else 0


def detect_delimiter(text: str) -> str:
    """Pick the delimiter that splits the most lines consistently.

    For each candidate the score is the number of lines whose field count
    equals the modal field count among values >= 2 (a candidate that never
    splits a line scores zero). Ties go to the earlier candidate in
    ``DELIMITER_CANDIDATES``.
    """
    text = _CONTROL_CHARS.sub("", text)  # csv refuses NUL; strip controls first
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise NoDelimiter("input has no non-empty lines")

    best: str | None = None
    best_score = 0
    for candidate in DELIMITER_CANDIDATES:
        counts = Counter(_field_count(ln, candidate) for ln in lines)
        score = max((n for value, n in counts.items() if value >= 2), default=0)
        if score > best_score:
            best, best_score = candidate, score
    if best is None:
        raise NoDelimiter("no candidate delimiter splits any line into >=2 fields")
    return best


def _unique_headers(raw: list[str]) -> list[str]:
    names: list[str] = []
    seen: set[str] = set()
    for i, name in enumerate(raw):
        candidate = name if name else f"col_{i}"
        if candidate in seen:
            k = 1
            while f"{candidate}_{k}" in seen:
                k += 1
            candidate = f"{candidate}_{k}"
        names.append(candidate)
        seen.add(candidate)
    return names


def parse_table(text: str, title: str | None = None) -> Table:
    """Parse delimited text into a normalized ``Table``.

    The first row is always the header. Ragged rows are padded with empty
    strings or truncated to the modal width; empty or duplicate header names
    are replaced/suffixed. ``row_index`` is NOT injected here.
    """
    text = _CONTROL_CHARS.sub("", text)
    try:
        delimiter = detect_delimiter(text)
    except NoDelimiter:
        delimiter = None

    if delimiter is None:
        raw_rows = [[line] for line in text.splitlines() if line.strip()]
    else:
        reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter)
        raw_rows = [row for row in reader if row]

    cleaned = [[clean_cell(cell) for cell in row] for row in raw_rows]
    cleaned = [row for row in cleaned if any(row)]
    if len(cleaned) < 2:
        raise EmptyTable("no data rows after cleaning")

    width_counts = Counter(len(row) for row in cleaned)
    # Modal width; on a frequency tie keep the wider shape (preserves data).
    width = max(width_counts.items(), key=lambda kv: (kv[1], kv[0]))[0]
    if width > MAX_COLUMNS:
        raise TableTooLarge(f"{width} columns exceeds the {MAX_COLUMNS}-column cap")

    squared = [row[:width] + [""] * (width - len(row)) for row in cleaned]
    header, data = squared[0], squared[1:]
    data = [row for row in data if any(row)]
    if not data:
        raise EmptyTable("no data rows after cleaning")
    if len(data) > MAX_ROWS:
        raise TableTooLarge(f"{len(data)} rows exceeds the {MAX_ROWS}-row cap")

    columns = _unique_headers(header)
    clean_title = clean_cell(title) if title else None
    return Table(
        columns=tuple(columns),
        rows=tuple(tuple(row) for row in data),
        title=clean_title or None,
    )


def parse_raw_input(raw: RawTableInput) -> Table:
    """Decode and parse a CSV-text payload."""
    if raw.kind is not RawTableKind.CSV_TEXT:
        raise ValueError("parse_raw_input only accepts CSV_TEXT payloads")
    text = raw.payload.decode("utf-8", errors="replace")
    return parse_table(text, title=raw.declared_title)


def inject_row_index(table: Table) -> Table:
    """Prepend the synthetic ``row_index`` column with values "0".."n-1".

    Idempotent: a table already carrying the column is returned unchanged.
    A pre-existing user column named ``row_index`` is renamed with the same
    suffix rule used for duplicate headers.
    """
    if table.row_index_injected:
        return table

    columns = list(table.columns)
    if ROW_INDEX_COLUMN in columns:
        taken = set(columns)
        for i, name in enumerate(columns):
            if name == ROW_INDEX_COLUMN:
                k = 1
                while f"{name}_{k}" in taken:
                    k += 1
                columns[i] = f"{name}_{k}"
                taken.add(columns[i])

    return Table(
        columns=(ROW_INDEX_COLUMN, *columns),
        rows=tuple((str(i), *row) for i, row in enumerate(table.rows)),
        title=table.title,
        row_index_injected=True,
    )


def validate_cell_refs(
    table: Table, refs: list[CellRef]
) -> tuple[list[CellRef], list[CellRef]]:
    """Partition refs into (valid, dropped), preserving order.

    Column matching is case-sensitive first; a unique case-insensitive match
    recovers the ref, rewritten to the canonical column name. Lenient by
    design: dropped refs are reported, never fatal.
    """
    lowered: dict[str, list[str]] = {}
    for name in table.columns:
        lowered.setdefault(name.lower(), []).append(name)

    valid: list[CellRef] = []
    dropped: list[CellRef] = []
    for ref in refs:
        if not 0 <= ref.row_index < table.row_count:
            dropped.append(ref)
            continue
        if ref.column_name in table.columns:
            valid.append(ref)
            continue
        candidates = lowered.get(ref.column_name.lower(), [])
        if len(candidates) == 1:
            valid.append(replace(ref, column_name=candidates[0]))
        else:
            dropped.append(ref)
    return valid, dropped


def serialize_csv(table: Table) -> str:
    """Serialize as comma-delimited CSV, quoting only where needed."""
    out = io.StringIO(newline="")
    writer = csv.writer(out, delimiter=",", lineterminator="\n")
    writer.writerow(table.columns)
    writer.writerows(table.rows)
    return out.getvalue()
