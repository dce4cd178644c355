"""Retrieval-augmented table pruning.

Large tables are cut down before prompting: the claim and table fragments
(rows, columns, or single cells) are embedded, fragments are ranked by cosine
similarity to the claim, and the winners are reassembled into a subtable.
Embeddings come from the inference gateway; nothing here touches the network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import ZeroVector
from .render import naturalize_row
from .table import ROW_INDEX_COLUMN, Table

# Default fragment budgets per granularity; configurable per request.
DEFAULT_TOP_K = {"row": 10, "column": 8, "cell": 30}


class Granularity(Enum):
    ROW = "row"
    COLUMN = "column"
    CELL = "cell"


@dataclass
class RetrievalUnit:
    """One embeddable table fragment and, after scoring, its claim similarity."""

    granularity: Granularity
    text: str
    row_position: int | None = None
    column_name: str | None = None
    embedding: list[float] | None = None
    score: float | None = field(default=None, compare=False)


def segment(table: Table, granularity: Granularity) -> list[RetrievalUnit]:
    """Split a table into fragments at the requested granularity.

    The injected row_index column is never a fragment of its own: it exists
    for referencing, not content. Fragment texts reuse the naturalized
    wording so embeddings see the same phrasing the model will.
    """
    data_start = 1 if table.row_index_injected else 0
    data_columns = table.columns[data_start:]

    if granularity is Granularity.ROW:
        return [
            RetrievalUnit(granularity, naturalize_row(table, i), row_position=i)
            for i in range(table.row_count)
        ]

    if granularity is Granularity.COLUMN:
        units = []
        for offset, name in enumerate(data_columns):
            col = data_start + offset
            values = ", ".join(row[col] for row in table.rows)
            units.append(
                RetrievalUnit(granularity, f"Column {name}: {values}", column_name=name)
            )
        return units

    units = []
    for i, row in enumerate(table.rows):
        label = table.row_label(i)
        for offset, name in enumerate(data_columns):
            col = data_start + offset
            units.append(
                RetrievalUnit(
                    granularity,
                    f"Row {label}, {name}: {row[col]}",
                    row_position=i,
                    column_name=name,
                )
            )
    return units


def cosine(a: list[float], b: list[float]) -> float:
    """Cosine similarity of two equal-dimension vectors, in [-1, 1]."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(y * y for y in b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVector("cosine is undefined for a zero vector")
    return sum(x * y for x, y in zip(a, b)) / (norm_a * norm_b)


def score_units(units: list[RetrievalUnit], claim_embedding: list[float]) -> None:
    """Score each unit against the claim; zero vectors rank last (-inf)."""
    for unit in units:
        if unit.embedding is None:
            raise ValueError("unit has no embedding; embed before scoring")
        try:
            unit.score = cosine(claim_embedding, unit.embedding)
        except ZeroVector:
            unit.score = float("-inf")


def select_top_k(units: list[RetrievalUnit], k: int) -> list[RetrievalUnit]:
    """The k highest-scoring units, descending; ties keep segment order."""
    if k < 1:
        raise ValueError("k must be positive")
    if any(u.score is None for u in units):
        raise ValueError("all units must be scored before selection")
    ranked = sorted(range(len(units)), key=lambda i: (-units[i].score, i))
    return [units[i] for i in ranked[:k]]


def assemble_subtable(table: Table, selected: list[RetrievalUnit]) -> Table:
    """Rebuild a valid subtable from selected fragments.

    Row order, column order, and the original row_index values are all
    preserved so the model's cell references still map onto the full table.
    For CELL granularity the kept area is the rectangular union of touched
    rows and columns.
    """
    if not selected:
        return table
    kinds = {u.granularity for u in selected}
    if len(kinds) > 1:
        raise ValueError("selected units mix granularities")
    granularity = kinds.pop()

    if granularity is Granularity.ROW:
        keep = {u.row_position for u in selected}
        rows = tuple(row for i, row in enumerate(table.rows) if i in keep)
        return Table(table.columns, rows, table.title, table.row_index_injected)

    if granularity is Granularity.COLUMN:
        keep_names = {u.column_name for u in selected}
        if table.row_index_injected:
            keep_names.add(ROW_INDEX_COLUMN)
        indices = [i for i, name in enumerate(table.columns) if name in keep_names]
        columns = tuple(table.columns[i] for i in indices)
        rows = tuple(tuple(row[i] for i in indices) for row in table.rows)
        return Table(columns, rows, table.title, table.row_index_injected)

    keep_rows = {u.row_position for u in selected}
    keep_names = {u.column_name for u in selected}
    if table.row_index_injected:
        keep_names.add(ROW_INDEX_COLUMN)
    indices = [i for i, name in enumerate(table.columns) if name in keep_names]
    columns = tuple(table.columns[i] for i in indices)
    rows = tuple(
        tuple(row[i] for i in indices)
        for pos, row in enumerate(table.rows)
        if pos in keep_rows
    )
    return Table(columns, rows, table.title, table.row_index_injected)
